#include "wapeq/grid_ops.hpp"

#include <cmath>

#include "wapeq/banded.hpp"

namespace wapeq {

Grid Grid::make(int J, int N, double R) {
  if (J < 3) throw Error("grid needs at least 3 subintervals");
  if (N < 0) throw Error("negative step count");
  if (R < 0.0) throw Error("negative terminal range");
  Grid g;
  g.J = J;
  g.h = 1.0 / J;
  g.N = N;
  g.R = R;
  g.k = (N > 0) ? R / N : 0.0;
  return g;
}

FieldVector operator+(const FieldVector& v, const FieldVector& w) {
  FieldVector out(v.subintervals());
  for (int j = 1; j < v.subintervals(); ++j) out[j] = v[j] + w[j];
  return out;
}

FieldVector operator-(const FieldVector& v, const FieldVector& w) {
  FieldVector out(v.subintervals());
  for (int j = 1; j < v.subintervals(); ++j) out[j] = v[j] - w[j];
  return out;
}

FieldVector operator*(cplx a, const FieldVector& v) {
  FieldVector out(v.subintervals());
  for (int j = 1; j < v.subintervals(); ++j) out[j] = a * v[j];
  return out;
}

FieldVector delta_h(const FieldVector& v) {
  const int J = v.subintervals();
  const double inv_h2 = static_cast<double>(J) * J;
  FieldVector out(J);
  for (int j = 1; j < J; ++j)
    out[j] = (v[j - 1] - 2.0 * v[j] + v[j + 1]) * inv_h2;
  return out;
}

FieldVector partial_h(const FieldVector& v) {
  const int J = v.subintervals();
  const double inv_2h = 0.5 * J;
  FieldVector out(J);
  for (int j = 1; j < J; ++j) out[j] = (v[j + 1] - v[j - 1]) * inv_2h;
  return out;
}

FieldVector i_h(const FieldVector& v) {
  const int J = v.subintervals();
  FieldVector out(J);
  for (int j = 1; j < J; ++j) out[j] = 0.5 * (v[j + 1] + v[j - 1]);
  return out;
}

FieldVector pointwise(const FieldVector& v, const FieldVector& w) {
  const int J = v.subintervals();
  FieldVector out(J);
  for (int j = 1; j < J; ++j) out[j] = v[j] * w[j];
  return out;
}

FieldVector weight_omega(int J) {
  FieldVector out(J);
  for (int j = 0; j < J; ++j) out.values[j] = static_cast<double>(j) / J;
  out.values[J] = 1.0;
  return out;
}

double norm_0h(const FieldVector& v) {
  const int J = v.subintervals();
  double acc = 0.0;
  for (int j = 1; j < J; ++j) acc += std::norm(v[j]);
  return std::sqrt(acc / J);
}

double seminorm_1h(const FieldVector& v) {
  const int J = v.subintervals();
  double acc = 0.0;
  for (int j = 0; j < J; ++j) acc += std::norm(v[j + 1] - v[j]);
  return std::sqrt(acc * J);  // h * sum |dv/h|^2 = J * sum |dv|^2
}

double norm_1h(const FieldVector& v) {
  const double a = norm_0h(v);
  const double b = seminorm_1h(v);
  return std::sqrt(a * a + b * b);
}

double norm_inf_h(const FieldVector& v) {
  const int J = v.subintervals();
  double m = 0.0;
  for (int j = 1; j < J; ++j) m = std::max(m, std::abs(v[j]));
  return m;
}

cplx inner_0h(const FieldVector& v, const FieldVector& w) {
  const int J = v.subintervals();
  cplx acc{};
  for (int j = 1; j < J; ++j) acc += v[j] * std::conj(w[j]);
  return acc / static_cast<double>(J);
}

FieldVector p_h_sample(const std::function<cplx(double)>& f, int J) {
  FieldVector out(J);
  for (int j = 1; j < J; ++j) out[j] = f(static_cast<double>(j) / J);
  return out;
}

std::vector<cplx> tridiagonal_solve(const TridiagonalSystem& sys,
                                    std::vector<cplx> rhs) {
  BandMatrix a(sys.n, 1, 1);
  for (int i = 0; i < sys.n; ++i) {
    if (i > 0) a.at(i, i - 1) = sys.sub[i];
    a.at(i, i) = sys.diag[i];
    if (i < sys.n - 1) a.at(i, i + 1) = sys.super[i];
  }
  return banded_solve(a, std::move(rhs));
}

FieldVector lambda_h_apply(const Environment& env, double r, const FieldVector& v) {
  const int J = v.subintervals();
  const double inv_h2 = static_cast<double>(J) * J;
  FieldVector out(J);
  for (int j = 1; j < J; ++j) {
    const cplx zeta = coefficients(env, r, static_cast<double>(j) / J).zeta;
    out[j] = -(v[j - 1] - 2.0 * v[j] + v[j + 1]) * inv_h2 - zeta * v[j];
  }
  return out;
}

TridiagonalSystem lambda_h_system(const Environment& env, int J, double r) {
  const double inv_h2 = static_cast<double>(J) * J;
  TridiagonalSystem sys;
  sys.n = J - 1;
  sys.sub.assign(sys.n, cplx{});
  sys.diag.assign(sys.n, cplx{});
  sys.super.assign(sys.n, cplx{});
  for (int i = 0; i < sys.n; ++i) {
    const double y = static_cast<double>(i + 1) / J;
    sys.diag[i] = 2.0 * inv_h2 - coefficients(env, r, y).zeta;
    if (i > 0) sys.sub[i] = -inv_h2;
    if (i < sys.n - 1) sys.super[i] = -inv_h2;
  }
  return sys;
}

FieldVector t_h_solve(const Environment& env, double r, const FieldVector& f) {
  const int J = f.subintervals();
  std::vector<cplx> rhs(f.values.begin() + 1, f.values.end() - 1);
  const std::vector<cplx> x =
      tridiagonal_solve(lambda_h_system(env, J, r), std::move(rhs));
  FieldVector out(J);
  for (int i = 0; i < J - 1; ++i) out[i + 1] = x[i];
  return out;
}

}  // namespace wapeq
