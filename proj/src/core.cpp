#include "wapeq/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

namespace wapeq {

namespace {

// Natural cubic spline with analytic derivative. Outside the table the end
// polynomials are extended; the depth-positivity probe in make_environment
// catches runs that rely on that region.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> f)
      : x_(std::move(x)), a_(std::move(f)) {
    const int n = static_cast<int>(x_.size());
    if (n < 2) throw Error("tabulated profile needs at least two points");
    for (int i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw Error("tabulated profile abscissae must be strictly increasing");

    // Second derivatives from the standard tridiagonal system (Thomas
    // recurrence; the matrix is diagonally dominant).
    std::vector<double> m(n, 0.0);
    if (n > 2) {
      std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
      for (int i = 1; i <= n - 2; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((a_[i + 1] - a_[i]) / h1 - (a_[i] - a_[i - 1]) / h0);
      }
      for (int i = 1; i < n - 2; ++i) {
        const double w = (x_[i] - x_[i - 1]) / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
      m[n - 2] = rhs[n - 3] / diag[n - 3];
      for (int i = n - 3; i >= 1; --i)
        m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
    }

    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      const double h = x_[i + 1] - x_[i];
      c_[i] = m[i] / 2.0;
      d_[i] = (m[i + 1] - m[i]) / (6.0 * h);
      b_[i] = (a_[i + 1] - a_[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    }
  }

  double eval(double t) const {
    const int i = segment(t);
    const double dt = t - x_[i];
    return a_[i] + dt * (b_[i] + dt * (c_[i] + dt * d_[i]));
  }

  double deriv(double t) const {
    const int i = segment(t);
    const double dt = t - x_[i];
    return b_[i] + dt * (2.0 * c_[i] + dt * 3.0 * d_[i]);
  }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  int segment(double t) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const int i = static_cast<int>(it - x_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
  }

  std::vector<double> x_, a_, b_, c_, d_;
};

}  // namespace

BottomProfile BottomProfile::exponential(double s0, double rate) {
  return BottomProfile(Kind::AnalyticExp,
                       [s0, rate](double r) { return s0 * std::exp(rate * r); },
                       [s0, rate](double r) { return s0 * rate * std::exp(rate * r); });
}

BottomProfile BottomProfile::linear(double s0, double slope) {
  return BottomProfile(Kind::AnalyticLinear,
                       [s0, slope](double r) { return s0 + slope * r; },
                       [slope](double) { return slope; });
}

BottomProfile BottomProfile::cosine(double offset, double amplitude,
                                    double angular_rate) {
  return BottomProfile(
      Kind::AnalyticCos,
      [=](double r) { return offset + amplitude * std::cos(angular_rate * r); },
      [=](double r) { return -amplitude * angular_rate * std::sin(angular_rate * r); });
}

BottomProfile BottomProfile::tabulated(std::vector<double> r,
                                       std::vector<double> depth) {
  if (r.size() != depth.size())
    throw Error("tabulated profile columns differ in length");
  auto spline = std::make_shared<CubicSpline>(std::move(r), std::move(depth));

  // Slope consistency: the analytic derivative of the interpolant must match
  // a centered-difference probe of the interpolant itself.
  const double span = spline->back() - spline->front();
  const double step = 1e-6 * span;
  for (int i = 0; i < 100; ++i) {
    const double t = spline->front() + span * (i + 0.5) / 100.0;
    const double cd = (spline->eval(t + step) - spline->eval(t - step)) / (2.0 * step);
    const double sd = spline->deriv(t);
    if (std::abs(cd - sd) > 1e-6 * std::max(1.0, std::abs(sd)))
      throw Error("tabulated profile slope inconsistent with depth samples");
  }

  return BottomProfile(Kind::Tabulated,
                       [spline](double t) { return spline->eval(t); },
                       [spline](double t) { return spline->deriv(t); });
}

Environment make_environment(double alpha, cplx p, cplx q, BottomProfile bottom,
                             GammaFn gamma, double range_R) {
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  // R = 0 is admitted for degenerate runs that never leave the source.
  if (range_R < 0.0) throw Error("terminal range must be nonnegative");
  if (std::abs(q) == 0.0) throw ZeroQ();
  if (!gamma) throw Error("gamma function must be provided");

  constexpr int kProbePoints = 1000;
  for (int i = 0; i < kProbePoints; ++i) {
    const double r = range_R * static_cast<double>(i) / (kProbePoints - 1);
    const double depth = bottom.s(r);
    if (!(depth > 0.0)) throw NonpositiveDepth(r, depth);
  }

  const cplx lambda = (p - q) / alpha;
  return Environment{alpha, p, q, lambda, std::move(bottom), std::move(gamma),
                     range_R};
}

CoefficientSample coefficients(const Environment& env, double r, double y) {
  const double s = env.bottom.s(r);
  const double s2 = s * s;
  const double a2 = env.alpha * env.alpha;
  CoefficientSample out;
  out.delta = env.bottom.s_dot(r) / s;
  out.zeta = (1.0 + env.q * env.gamma(r, y)) * s2 / (a2 * env.q);
  out.xi = env.lambda * s2 / (a2 * env.q * env.q);
  return out;
}

InvertibilityReport check_invertibility(const Environment& env, int n_r_samples,
                                        int n_y_samples) {
  if (n_r_samples < 2 || n_y_samples < 2)
    throw Error("check_invertibility needs at least 2 samples per axis");

  const double inv_pf2 =
      1.0 / (kDiscretePoincareFriedrichs * kDiscretePoincareFriedrichs);
  const double q2 = std::norm(env.q);
  const double a2q2 = env.alpha * env.alpha * q2;

  InvertibilityReport rep;
  rep.samples_r = n_r_samples;
  rep.samples_y = n_y_samples;
  double deb = std::numeric_limits<double>::infinity();
  double bb = std::numeric_limits<double>::infinity();   // delta* = +1
  double bb_neg = std::numeric_limits<double>::infinity();  // delta* = -1

  for (int i = 0; i < n_r_samples; ++i) {
    const double r = env.range_R * static_cast<double>(i) / (n_r_samples - 1);
    const double s2 = env.bottom.s(r) * env.bottom.s(r);
    for (int j = 0; j < n_y_samples; ++j) {
      const double y = static_cast<double>(j) / (n_y_samples - 1);
      const cplx g = env.gamma(r, y);
      const double real_part = env.q.real() + q2 * g.real();
      const double imag_part = env.q.imag() - q2 * g.imag();
      deb = std::min(deb, inv_pf2 - s2 / a2q2 * real_part);
      const double bracket = s2 / a2q2 * imag_part;
      bb = std::min(bb, bracket);
      bb_neg = std::min(bb_neg, -bracket);
    }
  }

  rep.c_deb = deb;
  rep.c_dbb_plus = bb;
  rep.c_dbb_minus = bb_neg;
  rep.holds = (rep.c_deb > 0.0) || (rep.c_dbb_plus > 0.0) ||
              (rep.c_dbb_minus > 0.0);
  return rep;
}

}  // namespace wapeq
