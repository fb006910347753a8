#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wapeq/core.hpp"

namespace wapeq {

// Uniform discretization: J subintervals in y on [0, 1], N range steps of
// length k on [0, R]. N = 0 is admitted for degenerate runs that only
// evaluate the initial field.
struct Grid {
  int J = 0;
  double h = 0.0;
  int N = 0;
  double k = 0.0;
  double R = 0.0;

  static Grid make(int J, int N, double R);

  double y(int j) const { return j * h; }
  double r(int n) const { return n * k; }
  double r_mid(int n) const { return (n - 0.5) * k; }
};

// Grid function with homogeneous endpoint values (v_0 = v_J = 0); the
// per-range-step unknown. Operations below keep the endpoints pinned.
struct FieldVector {
  std::vector<cplx> values;

  FieldVector() = default;
  explicit FieldVector(int J) : values(static_cast<std::size_t>(J) + 1, cplx{}) {}

  int subintervals() const { return static_cast<int>(values.size()) - 1; }
  double h() const { return 1.0 / subintervals(); }
  cplx& operator[](int j) { return values[static_cast<std::size_t>(j)]; }
  const cplx& operator[](int j) const { return values[static_cast<std::size_t>(j)]; }
  void clamp_endpoints() {
    values.front() = cplx{};
    values.back() = cplx{};
  }
};

FieldVector operator+(const FieldVector& v, const FieldVector& w);
FieldVector operator-(const FieldVector& v, const FieldVector& w);
FieldVector operator*(cplx a, const FieldVector& v);

// Centered second difference (v_{j-1} - 2 v_j + v_{j+1}) / h^2.
FieldVector delta_h(const FieldVector& v);
// Centered first difference (v_{j+1} - v_{j-1}) / (2h).
FieldVector partial_h(const FieldVector& v);
// Neighbor average (v_{j+1} + v_{j-1}) / 2.
FieldVector i_h(const FieldVector& v);
// Pointwise product on interior nodes.
FieldVector pointwise(const FieldVector& v, const FieldVector& w);
// Node-coordinate weight: w_j = y_j for j < J; the top entry never enters a
// product against a member of the space (v_J = 0) and is set to 1.
FieldVector weight_omega(int J);

double norm_0h(const FieldVector& v);
double seminorm_1h(const FieldVector& v);
double norm_1h(const FieldVector& v);
double norm_inf_h(const FieldVector& v);
cplx inner_0h(const FieldVector& v, const FieldVector& w);

// Nodal sampling with endpoints forced to zero.
FieldVector p_h_sample(const std::function<cplx(double)>& f, int J);

// Tridiagonal system on the interior nodes. sub[0] and super[n-1] are
// structurally zero. sub[i] multiplies x_{i-1}, super[i] multiplies x_{i+1}.
struct TridiagonalSystem {
  int n = 0;
  std::vector<cplx> sub, diag, super;
};

// Banded elimination with partial pivoting; throws SingularOperator on
// pivot breakdown.
std::vector<cplx> tridiagonal_solve(const TridiagonalSystem& sys,
                                    std::vector<cplx> rhs);

// Discrete elliptic operator: (-delta_h v)_j - zeta(r, y_j) v_j.
FieldVector lambda_h_apply(const Environment& env, double r, const FieldVector& v);

// Its interior matrix.
TridiagonalSystem lambda_h_system(const Environment& env, int J, double r);

// Inverse application: v with lambda_h(r) v = f.
FieldVector t_h_solve(const Environment& env, double r, const FieldVector& f);

}  // namespace wapeq
