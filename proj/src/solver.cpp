#include "wapeq/solver.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "wapeq/banded.hpp"

namespace wapeq {

namespace {
constexpr cplx kImag{0.0, 1.0};
}

FieldVector initial_field(const Grid& grid, const std::function<cplx(double)>& u0) {
  if (std::abs(u0(0.0)) > 1e-12 || std::abs(u0(1.0)) > 1e-12)
    std::cerr << "warning: initial field does not vanish at the boundary; "
                 "clamping endpoint values\n";
  return p_h_sample(u0, grid.J);
}

// The step equation applies the midpoint elliptic operator to the difference
// quotient G^n = (U^n - U^{n-1})/k - i(lambda/q) U^{n-1/2}
//               - delta(r_mid) y_j (U^{n-1/2}_{j+1} - U^{n-1/2}_{j-1})/(2h)
// and balances it against i xi(r_mid) U^{n-1/2} plus any forcing. Splitting
// G^n into new-level and old-level parts, the matrix acting on U^n is the
// product of the elliptic tridiagonal with the new-level tridiagonal minus
// (i xi / 2) I, which is pentadiagonal; old-level terms move to the right.
StepSystem assemble_step(const Environment& env, const Grid& grid, int n,
                         const FieldVector& u_prev, const Forcing& forcing) {
  const int J = grid.J;
  const int ni = J - 1;
  const double h = grid.h;
  const double inv_h2 = static_cast<double>(J) * J;  // matches lambda_h_apply
  const double rm = grid.r_mid(n);

  StepSystem sys;
  sys.J = J;
  sys.r_mid = rm;
  for (auto& d : sys.diags) d.assign(ni, cplx{});
  sys.rhs.assign(ni, cplx{});

  const double dm = env.bottom.s_dot(rm) / env.bottom.s(rm);
  const cplx xi = coefficients(env, rm, 0.0).xi;
  const cplx half_ilq = 0.5 * kImag * env.lambda / env.q;
  const cplx g_diag = 1.0 / grid.k - half_ilq;  // new-level diagonal of G

  // Per-node coefficients: zeta_j, and the advection couplings of G at row j
  // (t_sub multiplies the j-1 neighbor, t_sup the j+1 neighbor).
  std::vector<cplx> zeta(ni);
  std::vector<cplx> t_sub(ni + 2), t_sup(ni + 2);
  for (int j = 1; j <= ni; ++j) {
    const double y = grid.y(j);
    zeta[j - 1] = coefficients(env, rm, y).zeta;
    t_sub[j] = dm * y / (4.0 * h);
    t_sup[j] = -dm * y / (4.0 * h);
  }

  const cplx mo = -inv_h2;  // off-diagonal of the elliptic tridiagonal
  for (int j = 1; j <= ni; ++j) {
    const int i = j - 1;
    const cplx mc = 2.0 * inv_h2 - zeta[i];
    if (j >= 3) sys.diags[0][i] = mo * t_sub[j - 1];
    if (j >= 2) sys.diags[1][i] = mo * g_diag + mc * t_sub[j];
    cplx center = mc * g_diag - 0.5 * kImag * xi;
    if (j >= 2) center += mo * t_sup[j - 1];
    if (j <= ni - 1) center += mo * t_sub[j + 1];
    sys.diags[2][i] = center;
    if (j <= ni - 1) sys.diags[3][i] = mc * t_sup[j] + mo * g_diag;
    if (j <= ni - 2) sys.diags[4][i] = mo * t_sup[j + 1];
  }

  // Old-level part of G as a grid function, then its elliptic image.
  FieldVector w(J);
  const cplx g_diag_old = -1.0 / grid.k - half_ilq;
  for (int j = 1; j <= ni; ++j)
    w[j] = g_diag_old * u_prev[j] + t_sub[j] * u_prev[j - 1] +
           t_sup[j] * u_prev[j + 1];
  const FieldVector lw = lambda_h_apply(env, rm, w);

  for (int j = 1; j <= ni; ++j) {
    cplx rhs = 0.5 * kImag * xi * u_prev[j] - lw[j];
    if (forcing) rhs += forcing(rm, grid.y(j));
    sys.rhs[j - 1] = rhs;
  }
  return sys;
}

FieldVector pentadiagonal_solve(const StepSystem& sys) {
  const int ni = sys.J - 1;
  BandMatrix a(ni, 2, 2);
  for (int off = -2; off <= 2; ++off) {
    const std::vector<cplx>& d = sys.diags[off + 2];
    for (int i = 0; i < ni; ++i) {
      const int c = i + off;
      if (c < 0 || c >= ni) continue;
      a.at(i, c) = d[i];
    }
  }
  std::vector<cplx> x;
  try {
    x = banded_solve(a, sys.rhs);
  } catch (const SingularOperator& e) {
    throw SingularStep(-1, std::string("range step at r_mid = ") +
                               std::to_string(sys.r_mid) + ": " + e.what());
  }
  FieldVector out(sys.J);
  for (int i = 0; i < ni; ++i) out[i + 1] = x[i];
  return out;
}

FieldVector step(const Environment& env, const Grid& grid, int n,
                 const FieldVector& u_prev, const Forcing& forcing) {
  return pentadiagonal_solve(assemble_step(env, grid, n, u_prev, forcing));
}

Trajectory run(const Environment& env, const Grid& grid,
               const std::function<cplx(double)>& u0, const Forcing& forcing,
               const RunMonitors& monitors) {
  Trajectory traj;
  traj.conserved.reserve(grid.N + 1);
  traj.step_seconds.reserve(grid.N);

  FieldVector u = initial_field(grid, u0);
  const auto record = [&](int n, const FieldVector& field) {
    traj.conserved.push_back(std::sqrt(env.bottom.s(grid.r(n))) * norm_0h(field));
    if (monitors.receiver && n >= 1 && monitors.receiver_stride > 0 &&
        n % monitors.receiver_stride == 0)
      traj.receiver_series.push_back(
          {n, grid.r(n), monitors.receiver(field, grid.r(n))});
    if (monitors.snapshot_stride > 0 && n % monitors.snapshot_stride == 0)
      traj.snapshots.emplace_back(n, field);
  };
  record(0, u);

  for (int n = 1; n <= grid.N; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      u = step(env, grid, n, u, forcing);
    } catch (const SingularStep& e) {
      throw SingularStep(n, std::string(e.what()) + " (step " +
                                std::to_string(n) + ")");
    }
    const auto t1 = std::chrono::steady_clock::now();
    traj.step_seconds.push_back(
        std::chrono::duration<double>(t1 - t0).count());
    record(n, u);
  }

  traj.final_field = std::move(u);
  return traj;
}

}  // namespace wapeq
