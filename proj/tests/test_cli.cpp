#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wapeq/commands.hpp"
#include "wapeq/csv.hpp"

using namespace wapeq;
using namespace wapeq::cli;
namespace fs = std::filesystem;

namespace {

const char* kConserveConfig = R"(
[environment]
alpha = 10
q = 0.25 0
gamma = one-plus-y
bottom = exp
range = 1

[grid]
J = 400

[output]
seed = 7
)";

const char* kVerifyConfig = R"(
# manufactured-solution study
[environment]
alpha = 2
q = 0.252252311 -0.0135135138
p_rule = q-plus-half
gamma = one-plus-y
bottom = exp
range = 1

[grid]
J = 40 80
)";

const char* kTlConfig = R"(
[environment]
q = 0.252252311 -0.0135135138
gamma = zero
bottom = linear
bottom_s0 = 200
bottom_slope = 0.05
range = 400

[grid]
J = 500
k_rule = fixed
k = 0.83475

[source]
frequency_hz = 25
c0 = 1500
depth = 100
modes = 6

[receiver]
depth = 30
stride = 10
)";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("cli_test_out") / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("conserve config resolves defaults") {
    const RunConfig cfg = parse_config_text(kConserveConfig, "conserve");
    CHECK(cfg.environment.alpha == 10.0);
    CHECK(cfg.environment.p_re == doctest::Approx(0.75));
    CHECK(cfg.environment.p_rule == "q-plus-half");
    CHECK(cfg.environment.u0 == "poly-cubic");
    CHECK(cfg.grid.j_list == std::vector<int>{400});
    CHECK(cfg.output.csv_name == "conserved.csv");
    CHECK(cfg.output.seed == 7);
  }

  SUBCASE("tl config derives alpha from the source block") {
    const RunConfig cfg = parse_config_text(kTlConfig, "tl");
    CHECK(cfg.environment.alpha ==
          doctest::Approx(1500.0 / (2.0 * std::numbers::pi * 25.0)));
    CHECK(cfg.grid.k_rule == "fixed");
    CHECK(cfg.receiver.stride == 10);
  }

  SUBCASE("serialization round-trips to an equal config") {
    for (auto [text, mode] :
         {std::pair{kConserveConfig, "conserve"}, {kVerifyConfig, "verify"},
          {kTlConfig, "tl"}}) {
      const RunConfig cfg = parse_config_text(text, mode);
      const RunConfig again = parse_config_text(serialize_config(cfg), mode);
      CHECK(again == cfg);
    }
  }

  SUBCASE("malformed inputs are rejected") {
    CHECK_THROWS_AS(parse_config_text("[grid]\nJ = 40\n", "verify"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(kConserveConfig, "nonsense"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text("[environment]\nalpha = x\nq = 1 0\nrange = 1\n"
                          "[grid]\nJ = 40\n",
                          "conserve"),
        ConfigError);
    // unknown keys are flagged rather than silently ignored
    CHECK_THROWS_AS(parse_config_text(std::string(kConserveConfig) +
                                          "\n[grid]\ntypo_key = 3\n",
                                      "conserve"),
                    ConfigError);
    // multi-J only in verify mode
    CHECK_THROWS_AS(parse_config_text(kVerifyConfig, "conserve"), ConfigError);
    // tl needs source and receiver blocks
    CHECK_THROWS_AS(parse_config_text(kConserveConfig, "tl"), ConfigError);
    // non-finite numbers are rejected
    CHECK_THROWS_AS(
        parse_config_text("[environment]\nalpha = inf\nq = 1 0\nrange = 1\n"
                          "[grid]\nJ = 40\n",
                          "conserve"),
        ConfigError);
  }

  SUBCASE("step resolution rounds up and adjusts k") {
    const StepsResolution s = resolve_steps(3300.0, 0.83475);
    CHECK(s.N == 3954);
    CHECK(s.k == doctest::Approx(3300.0 / 3954.0));
    CHECK(s.adjusted);
    const StepsResolution exact = resolve_steps(1.0, 0.01);
    CHECK(exact.N == 100);
    CHECK_FALSE(exact.adjusted);
    const StepsResolution degenerate = resolve_steps(0.0, 0.5);
    CHECK(degenerate.N == 0);
  }
}

TEST_CASE("conserve command") {
  TempDir dir("conserve");
  const RunConfig cfg = parse_config_text(kConserveConfig, "conserve");
  const int rc = cmd_conserve(cfg, dir.path.string());
  CHECK(rc == 0);

  const auto rows = read_numeric_csv((dir.path / "conserved.csv").string(), 4);
  REQUIRE(rows.size() == 401);
  CHECK(rows[0][0] == 0.0);
  CHECK(rows[0][3] == 0.0);  // zero drift at the start
  for (const auto& row : rows) CHECK(row[3] <= 5e-4);

  SUBCASE("manifest echoes a config that reparses equal") {
    const std::string echoed =
        extract_manifest_config((dir.path / "manifest.txt").string());
    CHECK(parse_config_text(echoed, "conserve") == cfg);
  }

  SUBCASE("bytewise deterministic across repeated runs") {
    TempDir dir2("conserve_repeat");
    cmd_conserve(cfg, dir2.path.string());
    CHECK(slurp(dir.path / "conserved.csv") == slurp(dir2.path / "conserved.csv"));
  }
}

TEST_CASE("verify command") {
  TempDir dir("verify");
  const RunConfig cfg = parse_config_text(kVerifyConfig, "verify");
  const int rc = cmd_verify(cfg, dir.path.string());
  CHECK(rc == 0);

  const auto rows = read_numeric_csv((dir.path / "convergence.csv").string(), 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == 40.0);
  CHECK(rows[1][0] == 80.0);
  REQUIRE(rows[1].size() == 5);  // second row has both rates defined
  CHECK(rows[1][2] > 1.9);
  CHECK(rows[0].size() == 3);  // first row has no rates; trailing empties drop

  const std::string table = slurp(dir.path / "convergence_table.txt");
  CHECK(table.find("L2-rate") != std::string::npos);
}

TEST_CASE("tl command") {
  TempDir dir("tl");
  const RunConfig cfg = parse_config_text(kTlConfig, "tl");
  const int rc = cmd_tl(cfg, dir.path.string());
  CHECK(rc == 0);

  const auto rows = read_numeric_csv((dir.path / "tl.csv").string(), 2);
  const StepsResolution steps = resolve_steps(400.0, 0.83475);
  CHECK(rows.size() == static_cast<std::size_t>(steps.N / 10));
  for (const auto& row : rows) {
    CHECK(row[0] > 0.0);
    CHECK(std::isfinite(row[1]));
  }

  const std::string manifest = slurp(dir.path / "manifest.txt");
  CHECK(manifest.find("grid.k_adjusted = true") != std::string::npos);
  CHECK(manifest.find("invertibility.holds = true") != std::string::npos);

  SUBCASE("zero range produces the single source row") {
    RunConfig zero = cfg;
    zero.environment.range = 0.0;
    TempDir dir0("tl_zero");
    CHECK(cmd_tl(zero, dir0.path.string()) == 0);
    const std::string csv = slurp(dir0.path / "tl.csv");
    CHECK(csv == "r_meters,TL_dB\n0,inf\n");
  }
}

TEST_CASE("environment construction from config") {
  const RunConfig cfg = parse_config_text(kTlConfig, "tl");
  const Environment env = build_environment(cfg);
  CHECK(env.bottom.s(0.0) == doctest::Approx(200.0));
  CHECK(env.bottom.s(4000.0) == doctest::Approx(400.0));
  CHECK(env.gamma(10.0, 0.5) == cplx{});
  CHECK(env.lambda.real() == doctest::Approx(0.5 / env.alpha));

  SUBCASE("initial field comes from the mode starter") {
    const auto u0 = build_initial_field(cfg, env);
    CHECK(std::abs(u0(0.0)) == 0.0);
    CHECK(std::abs(u0(0.5)) > 0.0);
  }
}

TEST_CASE("tabulated inputs flow through the config") {
  TempDir dir("tables");

  const fs::path bottom_csv = dir.path / "bathy.csv";
  {
    std::ofstream out(bottom_csv);
    out << "r_meters,depth_meters\n";
    for (int i = 0; i <= 40; ++i) {
      const double r = i / 40.0;
      out << r << "," << 2.0 + r << "\n";
    }
  }
  const fs::path gamma_csv = dir.path / "gamma.csv";
  {
    std::ofstream out(gamma_csv);
    out << "# placeholder, then the y grid\n";
    out << "0,0,0.5,1\n";
    out << "0,1,1.5,2\n";       // gamma(r, y) = 1 + y at every range
    out << "1,1,1.5,2\n";
  }
  const fs::path starter_csv = dir.path / "start.csv";
  {
    std::ofstream out(starter_csv);
    out << "0,0,0\n0.5,1,0\n1,0,0\n";  // tent profile in z on [0, s(0)] = [0, 2]... clipped
  }

  std::ostringstream text;
  text << "[environment]\nalpha = 10\nq = 0.25 0\n"
       << "gamma = csv:" << gamma_csv.string() << "\n"
       << "bottom = csv:" << bottom_csv.string() << "\n"
       << "u0 = csv:" << starter_csv.string() << "\nrange = 1\n"
       << "[grid]\nJ = 50\n";
  const RunConfig cfg = parse_config_text(text.str(), "conserve");
  const Environment env = build_environment(cfg);

  CHECK(env.bottom.s(0.5) == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(env.bottom.s_dot(0.5) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(env.gamma(0.3, 0.25).real() == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(env.gamma(0.3, 0.25).imag() == 0.0);

  // starter given in z on [0, s(0)] maps through the depth scaling
  const auto u0 = build_initial_field(cfg, env);
  CHECK(std::abs(u0(0.25) - cplx{1.0, 0.0}) <= 1e-12);  // z = 0.5
  CHECK(std::abs(u0(0.5)) <= 1e-12);                    // z = 1, past the tent

  // the whole pipeline still runs
  TempDir out("tables_run");
  CHECK_NOTHROW(cmd_conserve(cfg, out.path.string()));
}
