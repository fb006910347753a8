#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wapeq/solver.hpp"

namespace wapeq {

// Exact solution and the partial derivatives needed to build a matching
// forcing term. All callbacks take (r, y).
struct ManufacturedSolution {
  std::function<cplx(double, double)> u, u_r, u_y, u_yy, u_yyy, u_ry, u_ryy;
};

// Throws MissingPartial if a callback is absent. Checks u(r,0) = u(r,1) = 0
// at 100 range samples (tolerance 1e-10); the Neumann condition u_y(r,1) = 0
// is enforced only when the bottom actually slopes, since the advection term
// it protects vanishes identically on a flat bottom.
void validate_manufactured(const ManufacturedSolution& ms, const Environment& env);

// F(r,y) such that the manufactured u solves the forced problem: apply the
// elliptic operator to G = u_r - i(lambda/q) u - delta(r) y u_y and subtract
// i xi(r) u.
Forcing manufactured_forcing(const Environment& env, const ManufacturedSolution& ms);

// Discrete L2 and max-norm errors of the final field against the nodal
// samples of u(R, .).
std::pair<double, double> measure_errors(const FieldVector& u_final,
                                         const ManufacturedSolution& ms,
                                         const Grid& grid);

struct ConvergenceRow {
  int J = 0;
  double l2_error = 0.0;
  double l2_rate = 0.0;    // NaN when undefined (first row / non-doubling J)
  double linf_error = 0.0;
  double linf_rate = 0.0;
};

using KRule = std::function<double(int)>;

// One forced run per J, k = k_rule(J) (default k = 1/J), errors measured at
// r = R, rates from consecutive doublings. Runs are independent and execute
// concurrently; rows come back ordered by J.
std::vector<ConvergenceRow> convergence_study(const Environment& env,
                                              const ManufacturedSolution& ms,
                                              const std::vector<int>& j_list,
                                              const KRule& k_rule = {},
                                              bool parallel = true);

// exp(2r) (y-1) sin(2 pi y): smooth, boundary-compatible test solution with
// closed-form partials; the default preset of the verification CLI.
ManufacturedSolution default_manufactured_solution();

// Aligned text rendering of a convergence table.
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);

}  // namespace wapeq
