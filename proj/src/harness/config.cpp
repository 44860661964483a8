#include "homog/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "homog/error.hpp"
#include "homog/euler1d.hpp"

namespace homog::harness {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(out)) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

std::optional<double> to_optional(const std::string& key, const std::string& v) {
  if (v == "none" || v.empty()) return std::nullopt;
  return to_double(key, v);
}

std::string fmt(double x) {
  // Shortest of %.15g / %.17g that round-trips.
  std::ostringstream os;
  os << std::setprecision(15) << x;
  if (std::stod(os.str()) == x) return os.str();
  os.str("");
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : "none"; }

std::string fmt(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt(xs[i]);
  return out;
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define HOMOG_NUM(key, member)                                                        \
  {                                                                                   \
    key, Field {                                                                      \
      [](ExperimentConfig& c, const std::string& v) { c.member = to_double(key, v); }, \
          [](const ExperimentConfig& c) { return fmt(c.member); }                     \
    }                                                                                 \
  }
#define HOMOG_OPT(key, member)                                                           \
  {                                                                                      \
    key, Field {                                                                         \
      [](ExperimentConfig& c, const std::string& v) { c.member = to_optional(key, v); }, \
          [](const ExperimentConfig& c) { return fmt(c.member); }                        \
    }                                                                                    \
  }
#define HOMOG_LIST(key, member)                                                      \
  {                                                                                  \
    key, Field {                                                                     \
      [](ExperimentConfig& c, const std::string& v) { c.member = to_list(key, v); }, \
          [](const ExperimentConfig& c) { return fmt(c.member); }                    \
    }                                                                                \
  }
#define HOMOG_STR(key, member)                                                \
  {                                                                           \
    key, Field {                                                              \
      [](ExperimentConfig& c, const std::string& v) { c.member = v; },        \
          [](const ExperimentConfig& c) { return c.member; }                  \
    }                                                                         \
  }
#define HOMOG_BOOL(key, member)                                                      \
  {                                                                                  \
    key, Field {                                                                     \
      [](ExperimentConfig& c, const std::string& v) { c.member = to_bool(key, v); }, \
          [](const ExperimentConfig& c) { return std::string(c.member ? "true" : "false"); } \
    }                                                                                \
  }

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"model",
       {[](ExperimentConfig& c, const std::string& v) { c.model = parse_model(v); },
        [](const ExperimentConfig& c) { return to_string(c.model); }}},
      HOMOG_STR("name", name),
      HOMOG_STR("initial", initial),
      HOMOG_STR("modes", modes),
      HOMOG_NUM("constant", constant),
      HOMOG_NUM("epsilon", epsilon),
      HOMOG_NUM("amplitude", amplitude),
      HOMOG_NUM("c1", c1),
      HOMOG_NUM("c2", c2),
      {"n",
       {[](ExperimentConfig& c, const std::string& v) {
          const long n = to_long("n", v);
          if (n <= 0) throw ConfigError("n", "must be positive");
          c.n = static_cast<std::size_t>(n);
        },
        [](const ExperimentConfig& c) { return std::to_string(c.n); }}},
      HOMOG_OPT("dt", dt),
      HOMOG_NUM("cfl", cfl),
      HOMOG_NUM("dt_max", dt_max),
      HOMOG_NUM("t_end", t_end),
      HOMOG_NUM("sample_interval", sample_interval),
      {"symmetry_m",
       {[](ExperimentConfig& c, const std::string& v) {
          c.symmetry_m = static_cast<int>(to_long("symmetry_m", v));
        },
        [](const ExperimentConfig& c) { return std::to_string(c.symmetry_m); }}},
      HOMOG_OPT("odd_axis", odd_axis),
      HOMOG_STR("stepper", stepper),
      HOMOG_BOOL("dealias", dealias),
      HOMOG_BOOL("filter", filter),
      HOMOG_BOOL("snapshots", snapshots),
      HOMOG_NUM("a", a),
      HOMOG_NUM("blowup_factor", blowup_factor),
      HOMOG_NUM("tail_limit", tail_limit),
      HOMOG_LIST("resolutions", resolutions),
      HOMOG_LIST("vortex_theta", vortex_theta),
      HOMOG_LIST("vortex_weights", vortex_weights),
      HOMOG_NUM("z1", z1),
      HOMOG_NUM("z2", z2),
      HOMOG_LIST("energies", energies),
      HOMOG_NUM("max_time", max_time),
      HOMOG_STR("lift", lift),
      HOMOG_NUM("alpha", alpha),
      HOMOG_LIST("query_r", query_r),
      HOMOG_LIST("query_theta", query_theta),
      HOMOG_LIST("ratios", ratios),
      {"directions",
       {[](ExperimentConfig& c, const std::string& v) {
          c.directions = static_cast<int>(to_long("directions", v));
        },
        [](const ExperimentConfig& c) { return std::to_string(c.directions); }}},
      HOMOG_STR("fit", fit),
      HOMOG_STR("fit_clock", fit_clock),
      HOMOG_OPT("fit_t_lo", fit_t_lo),
      HOMOG_OPT("fit_t_hi", fit_t_hi),
      HOMOG_STR("checks", checks),
      HOMOG_STR("output_dir", output_dir),
      {"seed",
       {[](ExperimentConfig& c, const std::string& v) {
          const long s = to_long("seed", v);
          if (s < 0) throw ConfigError("seed", "must be nonnegative");
          c.seed = static_cast<std::uint64_t>(s);
        },
        [](const ExperimentConfig& c) { return std::to_string(c.seed); }}},
  };
  return table;
}

#undef HOMOG_NUM
#undef HOMOG_OPT
#undef HOMOG_LIST
#undef HOMOG_STR
#undef HOMOG_BOOL

const Field* find_field(const std::string& key) {
  for (const auto& [k, f] : fields()) {
    if (k == key) return &f;
  }
  return nullptr;
}

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::Euler1d:
      return "euler1d";
    case Model::SqgExact:
      return "sqg-exact";
    case Model::SqgApprox:
      return "sqg-approx";
    case Model::DeGregorio:
      return "degregorio";
    case Model::Vortex:
      return "vortex";
    case Model::Gap3:
      return "gap3";
    case Model::LiftQuery:
      return "lift-query";
    case Model::KernelDecay:
      return "kernel-decay";
  }
  return "unknown";
}

Model parse_model(const std::string& s) {
  for (Model m : {Model::Euler1d, Model::SqgExact, Model::SqgApprox, Model::DeGregorio,
                  Model::Vortex, Model::Gap3, Model::LiftQuery, Model::KernelDecay}) {
    if (to_string(m) == s) return m;
  }
  throw ConfigError("model", "unknown model '" + s + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, f] : fields()) k.push_back(key);
    return k;
  }();
  return keys;
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const Field* f = find_field(key);
  if (!f) throw ConfigError(key, "unknown key");
  f->set(cfg, value);
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(key, "repeated key");
    set_key(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig& cfg) {
  std::ostringstream os;
  for (const auto& [key, f] : fields()) os << key << " = " << f.get(cfg) << "\n";
  return os.str();
}

SymmetrySpec symmetry_of(const ExperimentConfig& cfg) {
  return SymmetrySpec{cfg.symmetry_m, cfg.odd_axis};
}

void validate(const ExperimentConfig& cfg) {
  const bool field_model = cfg.model == Model::Euler1d || cfg.model == Model::SqgExact ||
                           cfg.model == Model::SqgApprox || cfg.model == Model::DeGregorio ||
                           cfg.model == Model::LiftQuery;
  if (field_model) {
    if (cfg.n < 8 || !is_power_of_two(cfg.n)) {
      throw ConfigError("n", "must be a power of two >= 8");
    }
    if (cfg.symmetry_m < 1) throw ConfigError("symmetry_m", "must be >= 1");
    if (cfg.odd_axis && !(*cfg.odd_axis >= -kPi && *cfg.odd_axis < kPi)) {
      throw ConfigError("odd_axis", "must lie in [-pi, pi)");
    }
    static const std::set<std::string> initials = {"constant", "modes", "bump", "sector",
                                                   "pattern"};
    if (!initials.count(cfg.initial)) {
      throw ConfigError("initial", "unknown initial data '" + cfg.initial + "'");
    }
    if (cfg.initial == "bump") {
      if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 0.25)) {
        throw ConfigError("epsilon", "bump width must lie in (0, 1/4]");
      }
      if (!(cfg.epsilon < kPi / std::max(cfg.symmetry_m, 1))) {
        throw ConfigError("epsilon", "bump must fit in one half-sector");
      }
      if (!cfg.odd_axis || cfg.symmetry_m < 2) {
        throw ConfigError("odd_axis", "bump data needs an odd axis and m >= 2");
      }
    }
    if (cfg.initial == "sector" && (!cfg.odd_axis || cfg.symmetry_m < 2)) {
      throw ConfigError("odd_axis", "sector data needs an odd axis and m >= 2");
    }
    if (cfg.odd_axis && cfg.initial == "constant" && cfg.constant != 0.0) {
      throw ConfigError("odd_axis", "a nonzero constant is not odd");
    }
    if (cfg.odd_axis && cfg.initial == "pattern" && cfg.c1 != -cfg.c2) {
      throw ConfigError("odd_axis", "a pattern is odd only when c2 = -c1");
    }
  }
  const bool timed = cfg.model == Model::Euler1d || cfg.model == Model::SqgExact ||
                     cfg.model == Model::SqgApprox || cfg.model == Model::DeGregorio ||
                     cfg.model == Model::Vortex || cfg.model == Model::Gap3;
  if (timed) {
    if (!(cfg.t_end > 0.0)) throw ConfigError("t_end", "must be positive");
    if (!(cfg.sample_interval > 0.0)) throw ConfigError("sample_interval", "must be positive");
    if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("dt", "must be positive");
    if (!(cfg.cfl > 0.0)) throw ConfigError("cfl", "must be positive");
    if (!(cfg.dt_max > 0.0)) throw ConfigError("dt_max", "must be positive");
  }
  if (cfg.model == Model::Euler1d) {
    try {
      parse_euler_stepper(cfg.stepper);
    } catch (const DomainError& e) {
      throw ConfigError("stepper", e.what());
    }
  }
  if (cfg.model == Model::SqgExact && cfg.symmetry_m < 2) {
    throw ConfigError("symmetry_m", "sqg-exact needs m >= 2");
  }
  if (cfg.model == Model::SqgExact || cfg.model == Model::SqgApprox ||
      cfg.model == Model::DeGregorio) {
    if (!(cfg.blowup_factor > 1.0)) throw ConfigError("blowup_factor", "must exceed 1");
    if (!(cfg.tail_limit > 0.0)) throw ConfigError("tail_limit", "must be positive");
    for (double r : cfg.resolutions) {
      const auto n = static_cast<std::size_t>(r);
      if (static_cast<double>(n) != r || n < 8 || !is_power_of_two(n)) {
        throw ConfigError("resolutions", "grid sizes must be powers of two >= 8");
      }
    }
    if (!cfg.resolutions.empty() && cfg.resolutions.size() < 3) {
      throw ConfigError("resolutions", "a blow-up search needs at least 3 resolutions");
    }
  }
  if (cfg.model == Model::Vortex) {
    if (cfg.vortex_theta.empty()) throw ConfigError("vortex_theta", "needs at least one angle");
    if (!cfg.vortex_weights.empty() && cfg.vortex_weights.size() != cfg.vortex_theta.size()) {
      throw ConfigError("vortex_weights", "length must match vortex_theta");
    }
    for (std::size_t j = 0; j < cfg.vortex_theta.size(); ++j) {
      const double th = cfg.vortex_theta[j];
      if (!(th >= 0.0 && th < 0.5 * kPi) || (j > 0 && !(th > cfg.vortex_theta[j - 1]))) {
        throw ConfigError("vortex_theta", "angles must be increasing in [0, pi/2)");
      }
    }
  }
  if (cfg.model == Model::Gap3) {
    if (cfg.energies.empty() &&
        !(cfg.z1 > 0.0 && cfg.z2 > 0.0 && cfg.z1 + cfg.z2 < 0.5 * kPi)) {
      throw ConfigError("z1", "gap point must satisfy z1, z2 > 0 and z1 + z2 < pi/2");
    }
    for (double e : cfg.energies) {
      if (!(e > 1.0 && e <= 1.5)) throw ConfigError("energies", "levels must lie in (1, 3/2]");
    }
    if (cfg.dt && *cfg.dt > 1e-2) throw ConfigError("dt", "must not exceed 1e-2");
    if (!(cfg.max_time > 0.0)) throw ConfigError("max_time", "must be positive");
  }
  if (cfg.model == Model::Vortex && cfg.dt && *cfg.dt > 1e-2) {
    throw ConfigError("dt", "must not exceed 1e-2");
  }
  if (cfg.model == Model::LiftQuery) {
    if (cfg.query_r.size() != cfg.query_theta.size()) {
      throw ConfigError("query_theta", "length must match query_r");
    }
    for (double r : cfg.query_r) {
      if (!(r >= 0.0)) throw ConfigError("query_r", "radii must be nonnegative");
    }
    if (cfg.lift != "euler" && cfg.lift != "sqg") throw ConfigError("lift", "must be euler or sqg");
    if (cfg.lift == "sqg" && cfg.alpha != 0.5) {
      throw ConfigError("alpha", "only alpha = 1/2 has a built-in stream solve");
    }
  }
  if (cfg.model == Model::KernelDecay) {
    if (cfg.symmetry_m < 1) throw ConfigError("symmetry_m", "must be >= 1");
    if (cfg.directions < 1) throw ConfigError("directions", "must be >= 1");
    for (double r : cfg.ratios) {
      if (!(r >= 2.0)) throw ConfigError("ratios", "distance ratios must be >= 2");
    }
  }
  static const std::set<std::string> fits = {"none", "power", "exponential"};
  if (!fits.count(cfg.fit)) throw ConfigError("fit", "must be none, power or exponential");
  if (cfg.fit_clock != "t" && cfg.fit_clock != "shifted") {
    throw ConfigError("fit_clock", "must be t or shifted");
  }
  if (cfg.fit_t_lo && cfg.fit_t_hi && !(*cfg.fit_t_lo < *cfg.fit_t_hi)) {
    throw ConfigError("fit_t_hi", "window must satisfy fit_t_lo < fit_t_hi");
  }
  static const std::set<std::string> checks = {"", "thm-growth", "thm-boundary",
                                               "rotating-pattern"};
  if (!checks.count(cfg.checks)) throw ConfigError("checks", "unknown check set");
}

}  // namespace homog::harness
