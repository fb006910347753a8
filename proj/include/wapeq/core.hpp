#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wapeq/errors.hpp"

namespace wapeq {

using cplx = std::complex<double>;

// Transformed index perturbation gamma(r, y) on [0, R] x [0, 1].
using GammaFn = std::function<cplx(double, double)>;

// Water depth s(r) > 0 and its range derivative. Tabulated profiles are
// interpolated with a natural cubic spline; the slope is the spline's
// analytic derivative and is cross-checked against a centered-difference
// probe at construction.
class BottomProfile {
 public:
  enum class Kind { AnalyticExp, AnalyticLinear, AnalyticCos, Tabulated };

  Kind kind() const { return kind_; }
  double s(double r) const { return s_(r); }
  double s_dot(double r) const { return s_dot_(r); }

  // s(r) = s0 * exp(rate * r)
  static BottomProfile exponential(double s0 = 1.0, double rate = 1.0);
  // s(r) = s0 + slope * r
  static BottomProfile linear(double s0, double slope);
  // s(r) = offset + amplitude * cos(angular_rate * r)
  static BottomProfile cosine(double offset, double amplitude, double angular_rate);
  // Natural cubic spline through (r_i, depth_i); r strictly increasing.
  static BottomProfile tabulated(std::vector<double> r, std::vector<double> depth);

 private:
  BottomProfile(Kind k, std::function<double(double)> s,
                std::function<double(double)> s_dot)
      : kind_(k), s_(std::move(s)), s_dot_(std::move(s_dot)) {}

  Kind kind_;
  std::function<double(double)> s_, s_dot_;
};

// Immutable model data; shareable across concurrent readers.
struct Environment {
  double alpha;       // reciprocal reference wavenumber, 1/k0 (meters)
  cplx p, q;          // rational wide-angle coefficients, q != 0
  cplx lambda;        // (p - q) / alpha
  BottomProfile bottom;
  GammaFn gamma;
  double range_R;     // terminal range (meters)
};

// delta = s_dot/s, zeta = (1 + q*gamma) s^2 / (alpha^2 q),
// xi = lambda s^2 / (alpha^2 q^2), all evaluated at (r, y).
struct CoefficientSample {
  double delta;
  cplx zeta;
  cplx xi;
};

// Sampled infima of the two sufficient-condition brackets for invertibility
// of the discrete elliptic operator. holds is true when either bracket stays
// positive on the sample lattice (the plus/minus variants cover both signs
// of the imaginary-part condition).
struct InvertibilityReport {
  double c_deb = 0.0;
  double c_dbb_plus = 0.0;
  double c_dbb_minus = 0.0;
  bool holds = false;
  int samples_r = 0;
  int samples_y = 0;
};

// Upper bound of the discrete Poincare-Friedrichs constant on the unit
// interval; the conservative choice used by check_invertibility.
inline constexpr double kDiscretePoincareFriedrichs = 0.70710678118654752;

Environment make_environment(double alpha, cplx p, cplx q, BottomProfile bottom,
                             GammaFn gamma, double range_R);

CoefficientSample coefficients(const Environment& env, double r, double y);

InvertibilityReport check_invertibility(const Environment& env,
                                        int n_r_samples = 256,
                                        int n_y_samples = 256);

}  // namespace wapeq
