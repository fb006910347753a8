#include "wapeq/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "wapeq/csv.hpp"
#include "wapeq/verify.hpp"

namespace wapeq::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

struct ManifestData {
  const RunConfig* cfg = nullptr;
  double wall_seconds = 0.0;
  const InvertibilityReport* invertibility = nullptr;
  const std::vector<double>* step_seconds = nullptr;
  StepsResolution steps;
  bool has_steps = false;
  std::vector<std::pair<std::string, std::string>> extra;
};

void write_manifest(const fs::path& path, const ManifestData& m) {
  std::ofstream out = open_out(path);
  out << "manifest.version = 1\n";
  out << "library.version = " << kLibraryVersion << "\n";
  out << "run.mode = " << m.cfg->mode << "\n";
  out << "run.wall_seconds = " << format_g17(m.wall_seconds) << "\n";
  if (m.step_seconds && !m.step_seconds->empty()) {
    const auto [lo, hi] =
        std::minmax_element(m.step_seconds->begin(), m.step_seconds->end());
    const double total = std::accumulate(m.step_seconds->begin(),
                                         m.step_seconds->end(), 0.0);
    out << "run.steps = " << m.step_seconds->size() << "\n";
    out << "run.step_seconds_mean = "
        << format_g17(total / m.step_seconds->size()) << "\n";
    out << "run.step_seconds_min = " << format_g17(*lo) << "\n";
    out << "run.step_seconds_max = " << format_g17(*hi) << "\n";
  }
  if (m.invertibility) {
    const InvertibilityReport& rep = *m.invertibility;
    out << "invertibility.c_deb = " << format_g17(rep.c_deb) << "\n";
    out << "invertibility.c_dbb_plus = " << format_g17(rep.c_dbb_plus) << "\n";
    out << "invertibility.c_dbb_minus = " << format_g17(rep.c_dbb_minus) << "\n";
    out << "invertibility.holds = " << (rep.holds ? "true" : "false") << "\n";
    out << "invertibility.samples_r = " << rep.samples_r << "\n";
    out << "invertibility.samples_y = " << rep.samples_y << "\n";
  }
  if (m.has_steps) {
    out << "grid.N = " << m.steps.N << "\n";
    out << "grid.k = " << format_g17(m.steps.k) << "\n";
    out << "grid.k_requested = " << format_g17(m.steps.k_requested) << "\n";
    out << "grid.k_adjusted = " << (m.steps.adjusted ? "true" : "false") << "\n";
  }
  for (const auto& [key, value] : m.extra) out << key << " = " << value << "\n";
  out << "config.begin\n" << serialize_config(*m.cfg) << "config.end\n";
}

InvertibilityReport report_invertibility(const Environment& env) {
  const InvertibilityReport rep = check_invertibility(env);
  if (!rep.holds)
    std::cerr << "warning: no sampled invertibility condition holds "
                 "(c_deb = "
              << rep.c_deb << ", c_dbb = " << rep.c_dbb_plus << " / "
              << rep.c_dbb_minus << "); attempting the run anyway\n";
  return rep;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int cmd_verify(const RunConfig& cfg, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const Environment env = build_environment(cfg);
  const InvertibilityReport rep = report_invertibility(env);

  KRule k_rule;
  if (cfg.grid.k_rule == "fixed") k_rule = [k = cfg.grid.k](int) { return k; };
  const std::vector<ConvergenceRow> rows =
      convergence_study(env, default_manufactured_solution(), cfg.grid.j_list,
                        k_rule);

  std::ofstream csv = open_out(fs::path(out_dir) / cfg.output.csv_name);
  csv << "J,l2_error,l2_rate,linf_error,linf_rate\n";
  for (const ConvergenceRow& row : rows) {
    csv << row.J << "," << format_g17(row.l2_error) << ",";
    if (!std::isnan(row.l2_rate)) csv << format_g17(row.l2_rate);
    csv << "," << format_g17(row.linf_error) << ",";
    if (!std::isnan(row.linf_rate)) csv << format_g17(row.linf_rate);
    csv << "\n";
  }
  csv.close();

  const std::string table = format_convergence_table(rows);
  std::cout << table;
  std::ofstream(fs::path(out_dir) / "convergence_table.txt") << table;

  bool rates_ok = true;
  for (const ConvergenceRow& row : rows)
    if (row.J >= 80 && !std::isnan(row.l2_rate) &&
        (row.l2_rate < 1.9 || row.linf_rate < 1.9))
      rates_ok = false;

  ManifestData m;
  m.cfg = &cfg;
  m.wall_seconds = elapsed_since(t0);
  m.invertibility = &rep;
  m.extra.emplace_back("verify.rates_ok", rates_ok ? "true" : "false");
  write_manifest(fs::path(out_dir) / cfg.output.manifest_name, m);
  return rates_ok ? 0 : 1;
}

int cmd_conserve(const RunConfig& cfg, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const Environment env = build_environment(cfg);
  const InvertibilityReport rep = report_invertibility(env);

  if (std::abs(env.q.imag()) > 0.0)
    std::cerr << "warning: conserve mode expects real q; the monitored "
                 "quantity will not be conserved\n";
  bool gamma_real = true;
  for (int i = 0; i < 16 && gamma_real; ++i)
    for (int j = 0; j < 16 && gamma_real; ++j)
      gamma_real = std::abs(env.gamma(env.range_R * i / 15.0, j / 15.0).imag()) == 0.0;
  if (!gamma_real)
    std::cerr << "warning: conserve mode expects real gamma; the monitored "
                 "quantity will not be conserved\n";

  const int J = cfg.grid.j_list.front();
  const StepsResolution steps =
      resolve_steps(env.range_R,
                    cfg.grid.k_rule == "fixed" ? cfg.grid.k : 1.0 / J);
  const Grid grid = Grid::make(J, steps.N, env.range_R);

  const Trajectory traj =
      run(env, grid, build_initial_field(cfg, env), Forcing{});

  std::ofstream csv = open_out(fs::path(out_dir) / cfg.output.csv_name);
  csv << "n,r,conserved,relative_drift\n";
  const double base = traj.conserved.front();
  double max_drift = 0.0;
  for (std::size_t n = 0; n < traj.conserved.size(); ++n) {
    const double drift = std::abs(traj.conserved[n] - base) / std::abs(base);
    max_drift = std::max(max_drift, drift);
    csv << n << "," << format_g17(grid.r(static_cast<int>(n))) << ","
        << format_g17(traj.conserved[n]) << "," << format_g17(drift) << "\n";
  }
  csv.close();

  const bool ok = max_drift <= 5e-4;
  std::cout << "conserved quantity drift: max " << format_g17(max_drift)
            << " over " << grid.N << " steps -> " << (ok ? "ok" : "FAIL")
            << "\n";

  ManifestData m;
  m.cfg = &cfg;
  m.wall_seconds = elapsed_since(t0);
  m.invertibility = &rep;
  m.step_seconds = &traj.step_seconds;
  m.steps = steps;
  m.has_steps = true;
  m.extra.emplace_back("conserve.max_relative_drift", format_g17(max_drift));
  write_manifest(fs::path(out_dir) / cfg.output.manifest_name, m);
  return ok ? 0 : 1;
}

int cmd_tl(const RunConfig& cfg, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const Environment env = build_environment(cfg);
  const InvertibilityReport rep = report_invertibility(env);

  const int J = cfg.grid.j_list.front();
  const StepsResolution steps =
      resolve_steps(env.range_R,
                    cfg.grid.k_rule == "fixed" ? cfg.grid.k : 1.0 / J);
  const Grid grid = Grid::make(J, steps.N, env.range_R);

  RunMonitors monitors;
  monitors.receiver_stride = cfg.receiver.stride;
  monitors.receiver = [&env, z = cfg.receiver.depth](const FieldVector& u,
                                                     double r) {
    return field_at_receiver(u, r, z, env);
  };

  const Trajectory traj =
      run(env, grid, build_initial_field(cfg, env), Forcing{}, monitors);

  std::ofstream csv = open_out(fs::path(out_dir) / cfg.output.csv_name);
  csv << "r_meters,TL_dB\n";
  if (grid.N == 0) {
    // Degenerate run: the loss metric is undefined at the source itself.
    csv << format_g17(0.0) << ",inf\n";
  } else {
    for (const ReceiverSample& sample : traj.receiver_series)
      csv << format_g17(sample.r) << ","
          << format_g17(transmission_loss(sample.value, sample.r)) << "\n";
  }
  csv.close();

  std::cout << "transmission-loss run complete: " << grid.N << " steps, "
            << traj.receiver_series.size() << " receiver samples\n";

  ManifestData m;
  m.cfg = &cfg;
  m.wall_seconds = elapsed_since(t0);
  m.invertibility = &rep;
  m.step_seconds = &traj.step_seconds;
  m.steps = steps;
  m.has_steps = true;
  write_manifest(fs::path(out_dir) / cfg.output.manifest_name, m);
  return 0;
}

std::string extract_manifest_config(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open manifest: " + manifest_path);
  std::string line;
  std::ostringstream cfg;
  bool inside = false;
  while (std::getline(in, line)) {
    if (line == "config.begin") {
      inside = true;
      continue;
    }
    if (line == "config.end") return cfg.str();
    if (inside) cfg << line << "\n";
  }
  throw Error("manifest has no config block: " + manifest_path);
}

}  // namespace wapeq::cli
