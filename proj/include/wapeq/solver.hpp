#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "wapeq/grid_ops.hpp"

namespace wapeq {

// Nonhomogeneous term F(r, y); a null function means none. Evaluated only at
// range midpoints and interior nodes.
using Forcing = std::function<cplx(double, double)>;

// One range step in pentadiagonal form: five diagonals at offsets -2..+2 on
// the interior nodes, plus the right-hand side. All coefficients are frozen
// at the range midpoint r_mid. Entries whose offsets fall outside the matrix
// are structurally zero.
struct StepSystem {
  int J = 0;
  double r_mid = 0.0;
  std::array<std::vector<cplx>, 5> diags;
  std::vector<cplx> rhs;
};

struct ReceiverSample {
  int n;
  double r;
  cplx value;
};

struct RunMonitors {
  int snapshot_stride = 0;   // 0: keep no snapshots
  int receiver_stride = 1;
  std::function<cplx(const FieldVector&, double)> receiver;  // null: none
};

struct Trajectory {
  std::vector<double> conserved;     // sqrt(s(r^n)) * ||U^n||_{0,h}, N+1 entries
  std::vector<ReceiverSample> receiver_series;
  std::vector<std::pair<int, FieldVector>> snapshots;
  std::vector<double> step_seconds;  // one entry per advanced step
  FieldVector final_field;
};

// U^0 = nodal samples of u0; endpoint values above 1e-12 in magnitude are
// clamped with a warning.
FieldVector initial_field(const Grid& grid, const std::function<cplx(double)>& u0);

// Collect the new-level unknowns of the Crank-Nicolson range step into the
// five diagonals and everything known into the right-hand side.
StepSystem assemble_step(const Environment& env, const Grid& grid, int n,
                         const FieldVector& u_prev, const Forcing& forcing);

// Throws SingularStep on pivot breakdown.
FieldVector pentadiagonal_solve(const StepSystem& sys);

FieldVector step(const Environment& env, const Grid& grid, int n,
                 const FieldVector& u_prev, const Forcing& forcing);

// Advance n = 1..N, recording the conserved quantity each step. Strictly
// sequential in n; distinct runs are independent.
Trajectory run(const Environment& env, const Grid& grid,
               const std::function<cplx(double)>& u0, const Forcing& forcing,
               const RunMonitors& monitors = {});

}  // namespace wapeq
