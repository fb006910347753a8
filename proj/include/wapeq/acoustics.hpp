#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "wapeq/grid_ops.hpp"

namespace wapeq {

struct SourceSpec {
  double frequency_hz = 0.0;
  double c0 = 0.0;          // reference sound speed (m/s)
  double z_source = 0.0;    // source depth (m)
  int mode_count = 0;       // modes requested for the starter

  double k0() const { return 2.0 * std::numbers::pi * frequency_hz / c0; }
};

struct ReceiverSpec {
  double z_rec = 0.0;       // receiver depth (m)
  int stride = 1;           // output stride in range steps
};

// Largest m with m*pi/D strictly below k0; modes at exact cutoff do not
// propagate.
int propagating_mode_count(const SourceSpec& src, double water_depth);

// Mode amplitudes c_m = e^{i pi/4} sqrt(2 pi / k_m) (2/D) sin(m pi z_s / D)
// for m = 1..mode_count; throws EvanescentMode if any requested mode has a
// vertical wavenumber at or above k0.
std::vector<cplx> mode_coefficients(const SourceSpec& src, double water_depth);

// Ideal-waveguide starter v0(z) = sum c_m sin(m pi z / D) on [0, D].
std::function<cplx(double)> normal_mode_starter(const SourceSpec& src,
                                                double water_depth);

// Depth-scaled change of variable: u0(y) = v0(y * s(0)).
std::function<cplx(double)> to_computational(std::function<cplx(double)> v0,
                                             const Environment& env);

// Physical-depth field value at z_rec via linear interpolation between the
// bracketing nodes of the scaled column; throws OutOfWater when the receiver
// is outside the water column at range r_n.
cplx field_at_receiver(const FieldVector& u, double r_n, double z_rec,
                       const Environment& env);

// TL = -20 log10(|v| / sqrt(r)) in dB; +infinity for v = 0, ZeroRange for
// r <= 0.
double transmission_loss(cplx v, double r);

// Starter tabulated as CSV rows (z_meters, Re, Im) with z ascending; linear
// interpolation, endpoint values outside the table.
std::function<cplx(double)> starter_from_csv(const std::string& path);

}  // namespace wapeq
