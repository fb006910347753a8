#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wapeq/acoustics.hpp"
#include "wapeq/core.hpp"

namespace wapeq::cli {

// Run configuration: flat key = value text grouped under [section] headers.
// Parsing resolves derived quantities (alpha from the source frequency, p
// from the p-rule) so a serialized config reparses to an equal value.

struct BottomConfig {
  std::string kind = "exp";    // exp | linear | cos | csv
  double s0 = 1.0;             // base depth
  double rate = 1.0;           // exp growth rate / cos angular rate
  double slope = 0.0;          // linear slope
  double amplitude = 0.0;      // cos amplitude
  std::string csv_path;
};

struct GammaConfig {
  std::string kind = "zero";   // zero | one-plus-y | csv
  std::string csv_path;
};

struct EnvironmentConfig {
  double alpha = 0.0;
  double q_re = 0.0, q_im = 0.0;
  std::string p_rule = "q-plus-half";  // q-plus-half | explicit
  double p_re = 0.0, p_im = 0.0;
  GammaConfig gamma;
  BottomConfig bottom;
  double range = 0.0;
  std::string u0 = "poly-cubic";       // poly-cubic | csv:<path> (z-domain starter)
};

struct GridConfig {
  std::vector<int> j_list;
  std::string k_rule = "h";            // h | fixed
  double k = 0.0;                      // used when k_rule = fixed
};

struct SourceConfig {
  bool present = false;
  double frequency_hz = 0.0;
  double c0 = 0.0;
  double depth = 0.0;
  int modes = 0;
  std::string starter = "modes";       // modes | csv:<path>
};

struct ReceiverConfig {
  bool present = false;
  double depth = 0.0;
  int stride = 1;
};

struct OutputConfig {
  std::string csv_name;                // default depends on mode
  std::string manifest_name = "manifest.txt";
  unsigned long long seed = 0;
};

struct RunConfig {
  std::string mode;                    // verify | conserve | tl
  EnvironmentConfig environment;
  GridConfig grid;
  SourceConfig source;
  ReceiverConfig receiver;
  OutputConfig output;
};

RunConfig parse_config_text(const std::string& text, const std::string& mode);
RunConfig load_config(const std::string& path, const std::string& mode);
std::string serialize_config(const RunConfig& cfg);
bool operator==(const RunConfig& a, const RunConfig& b);

Environment build_environment(const RunConfig& cfg);

// Initial field on [0, 1] for conserve/tl runs (polynomial preset, mode
// starter, or tabulated starter mapped through the depth scaling).
std::function<cplx(double)> build_initial_field(const RunConfig& cfg,
                                                const Environment& env);

// Integer step count covering [0, R]: N rounded up from R/k_requested, with
// k adjusted to R/N.
struct StepsResolution {
  int N = 0;
  double k = 0.0;
  double k_requested = 0.0;
  bool adjusted = false;
};
StepsResolution resolve_steps(double range, double k_requested);

}  // namespace wapeq::cli
