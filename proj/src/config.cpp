#include "wapeq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "wapeq/csv.hpp"

namespace wapeq::cli {

namespace {

struct KeyValueStore {
  std::map<std::string, std::vector<std::string>> entries;
  std::map<std::string, bool> consumed;

  void put(const std::string& key, std::vector<std::string> values) {
    if (entries.count(key)) throw ConfigError("duplicate key: " + key);
    entries[key] = std::move(values);
    consumed[key] = false;
  }

  const std::vector<std::string>* find(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    consumed[key] = true;
    return &it->second;
  }

  void reject_unconsumed() const {
    for (const auto& [key, used] : consumed)
      if (!used) throw ConfigError("unknown key: " + key);
  }
};

double parse_double(const std::string& key, const std::string& tok) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    if (!std::isfinite(v)) throw ConfigError(key + " must be finite");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number for " + key + ": " + tok);
  }
}

int parse_int(const std::string& key, const std::string& tok) {
  const double v = parse_double(key, tok);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 0.0) throw ConfigError(key + " must be an integer");
  return i;
}

KeyValueStore tokenize(const std::string& text) {
  KeyValueStore store;
  std::istringstream in(text);
  std::string line, section;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header: " + line);
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value: " + line);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto kend = key.find_last_not_of(" \t");
    key = key.substr(0, kend + 1);
    if (section.empty()) throw ConfigError("key outside any section: " + key);

    std::istringstream vs(value);
    std::vector<std::string> toks;
    std::string tok;
    while (vs >> tok) toks.push_back(tok);
    if (toks.empty()) throw ConfigError("empty value for " + key);
    store.put(section + "." + key, std::move(toks));
  }
  return store;
}

std::string one(const std::string& key, const std::vector<std::string>& toks) {
  if (toks.size() != 1) throw ConfigError(key + " takes a single value");
  return toks[0];
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& mode) {
  if (mode != "verify" && mode != "conserve" && mode != "tl")
    throw ConfigError("unknown mode: " + mode);

  KeyValueStore kv = tokenize(text);
  RunConfig cfg;
  cfg.mode = mode;

  // --- source (parsed first: the environment may derive alpha from it) ---
  SourceConfig& src = cfg.source;
  if (const auto* v = kv.find("source.frequency_hz")) {
    src.present = true;
    src.frequency_hz = parse_double("source.frequency_hz", one("source.frequency_hz", *v));
  }
  if (const auto* v = kv.find("source.c0"))
    src.c0 = parse_double("source.c0", one("source.c0", *v));
  if (const auto* v = kv.find("source.depth"))
    src.depth = parse_double("source.depth", one("source.depth", *v));
  if (const auto* v = kv.find("source.modes"))
    src.modes = parse_int("source.modes", one("source.modes", *v));
  if (const auto* v = kv.find("source.starter"))
    src.starter = one("source.starter", *v);
  if (src.present && (!(src.frequency_hz > 0.0) || !(src.c0 > 0.0)))
    throw ConfigError("source block needs positive frequency_hz and c0");

  // --- environment ---
  EnvironmentConfig& env = cfg.environment;
  if (const auto* v = kv.find("environment.alpha")) {
    env.alpha = parse_double("environment.alpha", one("environment.alpha", *v));
  } else if (src.present) {
    env.alpha = src.c0 / (2.0 * std::numbers::pi * src.frequency_hz);
  } else {
    throw ConfigError("environment.alpha missing (and no source block to derive it)");
  }
  if (!(env.alpha > 0.0)) throw ConfigError("alpha must be positive");

  if (const auto* v = kv.find("environment.q")) {
    if (v->size() != 2) throw ConfigError("environment.q takes two values: re im");
    env.q_re = parse_double("environment.q", (*v)[0]);
    env.q_im = parse_double("environment.q", (*v)[1]);
  } else {
    throw ConfigError("environment.q missing");
  }

  if (const auto* v = kv.find("environment.p")) {
    if (v->size() != 2) throw ConfigError("environment.p takes two values: re im");
    env.p_rule = "explicit";
    env.p_re = parse_double("environment.p", (*v)[0]);
    env.p_im = parse_double("environment.p", (*v)[1]);
  }
  if (const auto* v = kv.find("environment.p_rule")) {
    const std::string rule = one("environment.p_rule", *v);
    if (rule != "q-plus-half" && rule != "explicit")
      throw ConfigError("environment.p_rule must be q-plus-half or explicit");
    if (rule == "explicit" && env.p_rule != "explicit")
      throw ConfigError("p_rule = explicit requires an environment.p entry");
    if (rule == "q-plus-half") env.p_rule = "q-plus-half";
  }
  if (env.p_rule == "q-plus-half") {
    env.p_re = env.q_re + 0.5;
    env.p_im = env.q_im;
  }

  if (const auto* v = kv.find("environment.gamma")) {
    const std::string g = one("environment.gamma", *v);
    if (g == "zero" || g == "one-plus-y") {
      env.gamma.kind = g;
    } else if (g.rfind("csv:", 0) == 0) {
      env.gamma.kind = "csv";
      env.gamma.csv_path = g.substr(4);
    } else {
      throw ConfigError("environment.gamma must be zero, one-plus-y or csv:<path>");
    }
  }

  if (const auto* v = kv.find("environment.bottom")) {
    const std::string b = one("environment.bottom", *v);
    if (b == "exp" || b == "linear" || b == "cos") {
      env.bottom.kind = b;
    } else if (b.rfind("csv:", 0) == 0) {
      env.bottom.kind = "csv";
      env.bottom.csv_path = b.substr(4);
    } else {
      throw ConfigError("environment.bottom must be exp, linear, cos or csv:<path>");
    }
  }
  if (const auto* v = kv.find("environment.bottom_s0"))
    env.bottom.s0 = parse_double("environment.bottom_s0", one("environment.bottom_s0", *v));
  if (const auto* v = kv.find("environment.bottom_rate"))
    env.bottom.rate = parse_double("environment.bottom_rate", one("environment.bottom_rate", *v));
  if (const auto* v = kv.find("environment.bottom_slope"))
    env.bottom.slope = parse_double("environment.bottom_slope", one("environment.bottom_slope", *v));
  if (const auto* v = kv.find("environment.bottom_amplitude"))
    env.bottom.amplitude =
        parse_double("environment.bottom_amplitude", one("environment.bottom_amplitude", *v));

  if (const auto* v = kv.find("environment.range"))
    env.range = parse_double("environment.range", one("environment.range", *v));
  else
    throw ConfigError("environment.range missing");
  if (!(env.range >= 0.0)) throw ConfigError("range must be nonnegative");

  if (const auto* v = kv.find("environment.u0")) {
    const std::string u = one("environment.u0", *v);
    if (u != "poly-cubic" && u.rfind("csv:", 0) != 0)
      throw ConfigError("environment.u0 must be poly-cubic or csv:<path>");
    env.u0 = u;
  }

  // --- grid ---
  if (const auto* v = kv.find("grid.J")) {
    for (const std::string& tok : *v) {
      const int J = parse_int("grid.J", tok);
      if (J < 3) throw ConfigError("grid.J entries must be >= 3");
      cfg.grid.j_list.push_back(J);
    }
  } else {
    throw ConfigError("grid.J missing");
  }
  if (mode != "verify" && cfg.grid.j_list.size() != 1)
    throw ConfigError("mode " + mode + " takes a single grid.J");
  if (!std::is_sorted(cfg.grid.j_list.begin(), cfg.grid.j_list.end()))
    throw ConfigError("grid.J must be ascending");

  if (const auto* v = kv.find("grid.k_rule")) {
    const std::string rule = one("grid.k_rule", *v);
    if (rule != "h" && rule != "fixed")
      throw ConfigError("grid.k_rule must be h or fixed");
    cfg.grid.k_rule = rule;
  }
  if (const auto* v = kv.find("grid.k"))
    cfg.grid.k = parse_double("grid.k", one("grid.k", *v));
  if (cfg.grid.k_rule == "fixed" && !(cfg.grid.k > 0.0))
    throw ConfigError("grid.k_rule = fixed requires positive grid.k");

  // --- receiver ---
  if (const auto* v = kv.find("receiver.depth")) {
    cfg.receiver.present = true;
    cfg.receiver.depth = parse_double("receiver.depth", one("receiver.depth", *v));
  }
  if (const auto* v = kv.find("receiver.stride")) {
    cfg.receiver.stride = parse_int("receiver.stride", one("receiver.stride", *v));
    if (cfg.receiver.stride < 1) throw ConfigError("receiver.stride must be >= 1");
  }

  // --- output ---
  if (const auto* v = kv.find("output.csv"))
    cfg.output.csv_name = one("output.csv", *v);
  if (const auto* v = kv.find("output.manifest"))
    cfg.output.manifest_name = one("output.manifest", *v);
  if (const auto* v = kv.find("output.seed")) {
    const double s = parse_double("output.seed", one("output.seed", *v));
    if (s < 0) throw ConfigError("output.seed must be nonnegative");
    cfg.output.seed = static_cast<unsigned long long>(s);
  }
  if (cfg.output.csv_name.empty())
    cfg.output.csv_name = (mode == "verify")    ? "convergence.csv"
                          : (mode == "conserve") ? "conserved.csv"
                                                 : "tl.csv";

  // --- mode-required blocks ---
  if (mode == "tl") {
    if (!src.present) throw ConfigError("tl mode requires a [source] block");
    if (!cfg.receiver.present) throw ConfigError("tl mode requires a [receiver] block");
    if (src.starter == "modes" && src.modes < 1)
      throw ConfigError("tl mode starter needs source.modes >= 1");
  }

  kv.reject_unconsumed();
  return cfg;
}

RunConfig load_config(const std::string& path, const std::string& mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), mode);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "[environment]\n";
  os << "alpha = " << format_g17(cfg.environment.alpha) << "\n";
  os << "q = " << format_g17(cfg.environment.q_re) << " "
     << format_g17(cfg.environment.q_im) << "\n";
  os << "p_rule = " << cfg.environment.p_rule << "\n";
  if (cfg.environment.p_rule == "explicit")
    os << "p = " << format_g17(cfg.environment.p_re) << " "
       << format_g17(cfg.environment.p_im) << "\n";
  if (cfg.environment.gamma.kind == "csv")
    os << "gamma = csv:" << cfg.environment.gamma.csv_path << "\n";
  else
    os << "gamma = " << cfg.environment.gamma.kind << "\n";
  if (cfg.environment.bottom.kind == "csv") {
    os << "bottom = csv:" << cfg.environment.bottom.csv_path << "\n";
  } else {
    os << "bottom = " << cfg.environment.bottom.kind << "\n";
    os << "bottom_s0 = " << format_g17(cfg.environment.bottom.s0) << "\n";
    os << "bottom_rate = " << format_g17(cfg.environment.bottom.rate) << "\n";
    os << "bottom_slope = " << format_g17(cfg.environment.bottom.slope) << "\n";
    os << "bottom_amplitude = " << format_g17(cfg.environment.bottom.amplitude)
       << "\n";
  }
  os << "range = " << format_g17(cfg.environment.range) << "\n";
  os << "u0 = " << cfg.environment.u0 << "\n";

  os << "\n[grid]\n";
  os << "J =";
  for (int J : cfg.grid.j_list) os << " " << J;
  os << "\n";
  os << "k_rule = " << cfg.grid.k_rule << "\n";
  if (cfg.grid.k_rule == "fixed")
    os << "k = " << format_g17(cfg.grid.k) << "\n";

  if (cfg.source.present) {
    os << "\n[source]\n";
    os << "frequency_hz = " << format_g17(cfg.source.frequency_hz) << "\n";
    os << "c0 = " << format_g17(cfg.source.c0) << "\n";
    os << "depth = " << format_g17(cfg.source.depth) << "\n";
    os << "modes = " << cfg.source.modes << "\n";
    os << "starter = " << cfg.source.starter << "\n";
  }
  if (cfg.receiver.present) {
    os << "\n[receiver]\n";
    os << "depth = " << format_g17(cfg.receiver.depth) << "\n";
    os << "stride = " << cfg.receiver.stride << "\n";
  }
  os << "\n[output]\n";
  os << "csv = " << cfg.output.csv_name << "\n";
  os << "manifest = " << cfg.output.manifest_name << "\n";
  os << "seed = " << cfg.output.seed << "\n";
  return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.mode == b.mode && serialize_config(a) == serialize_config(b);
}

namespace {

GammaFn build_gamma(const GammaConfig& cfg) {
  if (cfg.kind == "zero") return [](double, double) { return cplx{}; };
  if (cfg.kind == "one-plus-y")
    return [](double, double y) { return cplx{1.0 + y, 0.0}; };

  // Tabulated real-valued gamma on an (r, y) lattice: first data row lists
  // the y grid behind a placeholder, later rows are (r, values...).
  const auto rows = read_numeric_csv(cfg.csv_path, 2);
  if (rows.size() < 3) throw ConfigError("gamma table needs y-row plus >= 2 r-rows");
  auto ys = std::make_shared<std::vector<double>>(rows[0].begin() + 1, rows[0].end());
  auto rs = std::make_shared<std::vector<double>>();
  auto vals = std::make_shared<std::vector<std::vector<double>>>();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ConfigError("gamma table rows have inconsistent widths");
    rs->push_back(rows[i][0]);
    vals->emplace_back(rows[i].begin() + 1, rows[i].end());
  }
  for (std::size_t i = 1; i < rs->size(); ++i)
    if (!((*rs)[i] > (*rs)[i - 1]))
      throw ConfigError("gamma table ranges must increase");
  for (std::size_t i = 1; i < ys->size(); ++i)
    if (!((*ys)[i] > (*ys)[i - 1]))
      throw ConfigError("gamma table y grid must increase");

  const auto locate = [](const std::vector<double>& grid, double x) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const int i = static_cast<int>(it - grid.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(grid.size()) - 2);
  };
  return [=](double r, double y) -> cplx {
    const int i = locate(*rs, r);
    const int j = locate(*ys, y);
    const double tr =
        std::clamp((r - (*rs)[i]) / ((*rs)[i + 1] - (*rs)[i]), 0.0, 1.0);
    const double ty =
        std::clamp((y - (*ys)[j]) / ((*ys)[j + 1] - (*ys)[j]), 0.0, 1.0);
    const double v00 = (*vals)[i][j], v01 = (*vals)[i][j + 1];
    const double v10 = (*vals)[i + 1][j], v11 = (*vals)[i + 1][j + 1];
    return cplx{(1 - tr) * ((1 - ty) * v00 + ty * v01) +
                    tr * ((1 - ty) * v10 + ty * v11),
                0.0};
  };
}

BottomProfile build_bottom(const BottomConfig& cfg) {
  if (cfg.kind == "exp") return BottomProfile::exponential(cfg.s0, cfg.rate);
  if (cfg.kind == "linear") return BottomProfile::linear(cfg.s0, cfg.slope);
  if (cfg.kind == "cos")
    return BottomProfile::cosine(cfg.s0, cfg.amplitude, cfg.rate);
  const auto rows = read_numeric_csv(cfg.csv_path, 2);
  std::vector<double> r, depth;
  for (const auto& row : rows) {
    r.push_back(row[0]);
    depth.push_back(row[1]);
  }
  return BottomProfile::tabulated(std::move(r), std::move(depth));
}

}  // namespace

Environment build_environment(const RunConfig& cfg) {
  const EnvironmentConfig& e = cfg.environment;
  return make_environment(e.alpha, cplx{e.p_re, e.p_im}, cplx{e.q_re, e.q_im},
                          build_bottom(e.bottom), build_gamma(e.gamma), e.range);
}

std::function<cplx(double)> build_initial_field(const RunConfig& cfg,
                                                const Environment& env) {
  if (cfg.mode == "tl") {
    if (cfg.source.starter.rfind("csv:", 0) == 0)
      return to_computational(starter_from_csv(cfg.source.starter.substr(4)), env);
    SourceSpec src{cfg.source.frequency_hz, cfg.source.c0, cfg.source.depth,
                   cfg.source.modes};
    return to_computational(normal_mode_starter(src, env.bottom.s(0.0)), env);
  }
  if (cfg.environment.u0.rfind("csv:", 0) == 0)
    return to_computational(starter_from_csv(cfg.environment.u0.substr(4)), env);
  return [](double y) { return cplx{y * y * (y - 1.0), 0.0}; };
}

StepsResolution resolve_steps(double range, double k_requested) {
  if (!(k_requested > 0.0))
    throw ConfigError("range step must be positive");
  StepsResolution out;
  out.k_requested = k_requested;
  if (!(range > 0.0)) {
    out.N = 0;
    out.k = 0.0;
    return out;
  }
  const double ratio = range / k_requested;
  int n = static_cast<int>(std::ceil(ratio - 1e-9));
  if (n < 1) n = 1;
  out.N = n;
  out.k = range / n;
  out.adjusted = std::abs(out.k - k_requested) > 1e-12 * k_requested;
  return out;
}

}  // namespace wapeq::cli
