#include "wapeq/verify.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

namespace wapeq {

namespace {
constexpr cplx kImag{0.0, 1.0};
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}  // namespace

void validate_manufactured(const ManufacturedSolution& ms, const Environment& env) {
  if (!ms.u) throw MissingPartial("u");
  if (!ms.u_r) throw MissingPartial("u_r");
  if (!ms.u_y) throw MissingPartial("u_y");
  if (!ms.u_yy) throw MissingPartial("u_yy");
  if (!ms.u_yyy) throw MissingPartial("u_yyy");
  if (!ms.u_ry) throw MissingPartial("u_ry");
  if (!ms.u_ryy) throw MissingPartial("u_ryy");

  bool sloping = false;
  for (int i = 0; i < 100 && !sloping; ++i) {
    const double r = env.range_R * i / 99.0;
    sloping = std::abs(env.bottom.s_dot(r)) > 1e-12;
  }

  constexpr double tol = 1e-10;
  for (int i = 0; i < 100; ++i) {
    const double r = env.range_R * i / 99.0;
    if (std::abs(ms.u(r, 0.0)) > tol || std::abs(ms.u(r, 1.0)) > tol)
      throw Error("manufactured solution violates the Dirichlet boundary values");
    if (sloping && std::abs(ms.u_y(r, 1.0)) > tol)
      throw Error("manufactured solution violates the bottom Neumann condition");
  }
}

Forcing manufactured_forcing(const Environment& env, const ManufacturedSolution& ms) {
  validate_manufactured(ms, env);
  const cplx ilq = kImag * env.lambda / env.q;
  return [env, ms, ilq](double r, double y) -> cplx {
    const CoefficientSample c = coefficients(env, r, y);
    const cplx g = ms.u_r(r, y) - ilq * ms.u(r, y) - c.delta * y * ms.u_y(r, y);
    // d^2/dy^2 of (y u_y) = 2 u_yy + y u_yyy
    const cplx g_yy = ms.u_ryy(r, y) - ilq * ms.u_yy(r, y) -
                      c.delta * (2.0 * ms.u_yy(r, y) + y * ms.u_yyy(r, y));
    return -g_yy - c.zeta * g - kImag * c.xi * ms.u(r, y);
  };
}

std::pair<double, double> measure_errors(const FieldVector& u_final,
                                         const ManufacturedSolution& ms,
                                         const Grid& grid) {
  const double R = grid.R;
  const FieldVector exact =
      p_h_sample([&](double y) { return ms.u(R, y); }, grid.J);
  const FieldVector diff = u_final - exact;
  return {norm_0h(diff), norm_inf_h(diff)};
}

namespace {

ConvergenceRow run_single(const Environment& env, const ManufacturedSolution& ms,
                          int J, const KRule& k_rule) {
  const double k = k_rule ? k_rule(J) : 1.0 / J;
  const int N = std::max(1, static_cast<int>(std::lround(env.range_R / k)));
  const Grid grid = Grid::make(J, N, env.range_R);

  const Forcing forcing = manufactured_forcing(env, ms);
  const auto u0 = [&ms](double y) { return ms.u(0.0, y); };
  const Trajectory traj = run(env, grid, u0, forcing);

  ConvergenceRow row;
  row.J = J;
  std::tie(row.l2_error, row.linf_error) = measure_errors(traj.final_field, ms, grid);
  row.l2_rate = kNan;
  row.linf_rate = kNan;
  return row;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const Environment& env,
                                              const ManufacturedSolution& ms,
                                              const std::vector<int>& j_list,
                                              const KRule& k_rule, bool parallel) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(j_list.size());

  if (parallel && j_list.size() > 1) {
    std::vector<std::future<ConvergenceRow>> futures;
    futures.reserve(j_list.size());
    for (int J : j_list)
      futures.push_back(std::async(std::launch::async, run_single, std::cref(env),
                                   std::cref(ms), J, std::cref(k_rule)));
    for (auto& f : futures) rows.push_back(f.get());
  } else {
    for (int J : j_list) rows.push_back(run_single(env, ms, J, k_rule));
  }

  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].J != 2 * rows[i - 1].J) continue;
    rows[i].l2_rate = std::log2(rows[i - 1].l2_error / rows[i].l2_error);
    rows[i].linf_rate = std::log2(rows[i - 1].linf_error / rows[i].linf_error);
  }
  return rows;
}

ManufacturedSolution default_manufactured_solution() {
  using std::numbers::pi;
  const double tp = 2.0 * pi;
  ManufacturedSolution ms;
  ms.u = [tp](double r, double y) -> cplx {
    return std::exp(2.0 * r) * (y - 1.0) * std::sin(tp * y);
  };
  ms.u_r = [ms_u = ms.u](double r, double y) { return 2.0 * ms_u(r, y); };
  ms.u_y = [tp](double r, double y) -> cplx {
    return std::exp(2.0 * r) * (std::sin(tp * y) + tp * (y - 1.0) * std::cos(tp * y));
  };
  ms.u_yy = [tp](double r, double y) -> cplx {
    return std::exp(2.0 * r) *
           (2.0 * tp * std::cos(tp * y) - tp * tp * (y - 1.0) * std::sin(tp * y));
  };
  ms.u_yyy = [tp](double r, double y) -> cplx {
    return std::exp(2.0 * r) * (-3.0 * tp * tp * std::sin(tp * y) -
                                tp * tp * tp * (y - 1.0) * std::cos(tp * y));
  };
  ms.u_ry = [u_y = ms.u_y](double r, double y) { return 2.0 * u_y(r, y); };
  ms.u_ryy = [u_yy = ms.u_yy](double r, double y) { return 2.0 * u_yy(r, y); };
  return ms;
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream os;
  os << "    J        L2-error   L2-rate      Linf-error  Linf-rate\n";
  char buf[128];
  for (const ConvergenceRow& row : rows) {
    const auto rate = [](double v) {
      char b[32];
      if (std::isnan(v))
        std::snprintf(b, sizeof b, "%9s", "--");
      else
        std::snprintf(b, sizeof b, "%9.3f", v);
      return std::string(b);
    };
    std::snprintf(buf, sizeof buf, "%5d  %12.4e  %s  %12.4e  %s\n", row.J,
                  row.l2_error, rate(row.l2_rate).c_str(), row.linf_error,
                  rate(row.linf_rate).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace wapeq
