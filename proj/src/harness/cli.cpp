#include "homog/harness/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "homog/error.hpp"
#include "homog/harness/config.hpp"
#include "homog/harness/presets.hpp"
#include "homog/harness/runners.hpp"

namespace homog::harness {
namespace {

// Per-subcommand storage for --config, --set and one flag per config key.
struct Overrides {
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> keys;
};

void add_config_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config_path, "Config file (key = value lines)");
  sub->add_option("--set", o.sets, "Override as key=value (repeatable)");
  for (const auto& key : config_keys()) {
    std::string names = "--" + key;
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    if (dashed != key) names += ",--" + dashed;
    sub->add_option(names, o.keys[key], "Config key " + key);
  }
}

void apply_overrides(ExperimentConfig& cfg, const CLI::App* sub, const Overrides& o) {
  for (const auto& key : config_keys()) {
    if (sub->count("--" + key)) set_key(cfg, key, o.keys.at(key));
  }
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("set", "expected key=value, got '" + kv + "'");
    set_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
}

ExperimentConfig base_config(const Overrides& o) {
  return o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  return out;
}

// Runs one config and maps errors to exit codes.
int execute(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto outcome = run_experiment(cfg);
    if (outcome.manifest.contains("points")) {
      for (const auto& p : outcome.manifest["points"]) out << p.dump() << "\n";
    }
    out << outcome.summary << "\n";
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const PhysicsAbort& e) {
    err << "physics abort: " << e.what() << "\n";
    return kExitPhysicsAbort;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const PreconditionError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radially homogeneous 2D Euler and SQG: 1D profile experiments"};
  app.require_subcommand(1);

  struct Command {
    std::string name;
    std::string help;
    std::vector<Model> family;
  };
  const std::vector<Command> commands = {
      {"euler1d", "1D Euler profile evolution", {Model::Euler1d}},
      {"sqg", "SQG profile evolution (sqg-exact or sqg-approx)",
       {Model::SqgExact, Model::SqgApprox}},
      {"degregorio", "De Gregorio family", {Model::DeGregorio}},
      {"vortex", "Point vortices on the symmetric sector", {Model::Vortex}},
      {"gap3", "Three-vortex gap system and its period", {Model::Gap3}},
      {"lift", "2D fields at query points", {Model::LiftQuery}},
      {"kernel-decay", "Decay of the symmetrized Biot-Savart kernel", {Model::KernelDecay}},
  };

  std::map<std::string, Overrides> overrides;
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_config_flags(sub, overrides[c.name]);
    subs[c.name] = sub;
  }

  std::string preset_name;
  auto* preset_cmd = app.add_subcommand("preset", "Named experiment preset");
  preset_cmd->add_option("preset", preset_name, "thm-growth | thm-boundary | rotating-pattern")
      ->required();
  add_config_flags(preset_cmd, overrides["preset"]);

  std::string sweep_glob;
  std::vector<std::string> sweep_sets;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every config file matching a glob");
  sweep_cmd->add_option("glob", sweep_glob, "Config file pattern")->required();
  sweep_cmd->add_option("--set", sweep_sets, "Override applied to every config (key=value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfigError;
  }

  try {
    for (const auto& c : commands) {
      auto* sub = subs[c.name];
      if (!sub->parsed()) continue;
      const auto& o = overrides[c.name];
      ExperimentConfig cfg = base_config(o);
      if (std::find(c.family.begin(), c.family.end(), cfg.model) == c.family.end()) {
        cfg.model = c.family.front();
      }
      apply_overrides(cfg, sub, o);
      if (std::find(c.family.begin(), c.family.end(), cfg.model) == c.family.end()) {
        throw ConfigError("model", "'" + to_string(cfg.model) + "' does not belong to " + c.name);
      }
      return execute(cfg, out, err);
    }
    if (preset_cmd->parsed()) {
      const auto& o = overrides["preset"];
      ExperimentConfig cfg = preset(preset_name);
      if (!o.config_path.empty()) {
        throw ConfigError("config", "presets take flag overrides, not a config file");
      }
      apply_overrides(cfg, preset_cmd, o);
      return execute(cfg, out, err);
    }
    if (sweep_cmd->parsed()) {
      const auto files = expand_glob(sweep_glob);
      if (files.empty()) throw ConfigError("glob", "no config files match '" + sweep_glob + "'");
      int code = kExitOk;
      for (const auto& f : files) {
        int rc = kExitOk;
        try {
          ExperimentConfig cfg = load_config(f);
          Overrides o;
          o.sets = sweep_sets;
          for (const auto& kv : o.sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("set", "expected key=value");
            set_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
          }
          rc = execute(cfg, out, err);
        } catch (const ConfigError& e) {
          err << f << ": config error: " << e.what() << "\n";
          rc = kExitConfigError;
        }
        code = std::max(code, rc);
      }
      return code;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace homog::harness
