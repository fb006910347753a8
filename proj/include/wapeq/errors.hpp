#pragma once

#include <stdexcept>
#include <string>

namespace wapeq {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// q = 0 degenerates the rational wide-angle approximation (division by q).
struct ZeroQ : Error {
  ZeroQ() : Error("pade coefficient q must be nonzero") {}
};

// Bottom profile dips to zero or negative depth somewhere on [0, R].
struct NonpositiveDepth : Error {
  NonpositiveDepth(double r, double depth)
      : Error("bottom depth s(" + std::to_string(r) + ") = " +
              std::to_string(depth) + " is not positive") {}
};

// Banded elimination hit a pivot below the breakdown threshold.
struct SingularOperator : Error {
  using Error::Error;
};

// Pivot breakdown while advancing one range step; step < 0 means the
// failing index was not yet known at throw time.
struct SingularStep : Error {
  int step;
  SingularStep(int n, const std::string& what) : Error(what), step(n) {}
};

// Receiver depth at or below the bottom (or above the surface).
struct OutOfWater : Error {
  using Error::Error;
};

// Transmission loss is undefined at nonpositive range.
struct ZeroRange : Error {
  ZeroRange() : Error("transmission loss undefined for range <= 0") {}
};

// A requested waveguide mode does not propagate at this frequency/depth.
struct EvanescentMode : Error {
  using Error::Error;
};

// A manufactured solution is missing one of its partial-derivative callbacks.
struct MissingPartial : Error {
  explicit MissingPartial(const std::string& name)
      : Error("manufactured solution callback absent: " + name) {}
};

// Malformed or inconsistent run configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace wapeq
