#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homog/circle_field.hpp"

namespace homog::harness {

enum class Model { Euler1d, SqgExact, SqgApprox, DeGregorio, Vortex, Gap3, LiftQuery, KernelDecay };

std::string to_string(Model m);
Model parse_model(const std::string& s);

/// Flat experiment description. Every field maps to one key of the config
/// file (see config_keys()); unset optionals take model defaults.
struct ExperimentConfig {
  Model model = Model::Euler1d;
  std::string name;

  // Initial data: constant | modes | bump | sector | pattern.
  std::string initial = "modes";
  std::string modes = "s4:1";
  double constant = 0.0;
  /// bump: support [0, epsilon] on the sector, odd m-fold extension.
  double epsilon = 0.1;
  double amplitude = 1.0;
  double c1 = 1.0;
  double c2 = 0.0;

  std::size_t n = 256;
  std::optional<double> dt;
  double cfl = 0.5;
  double dt_max = 1e-2;
  double t_end = 1.0;
  double sample_interval = 0.1;
  int symmetry_m = 4;
  std::optional<double> odd_axis = 0.0;

  std::string stepper = "pseudospectral-rk4";
  bool dealias = true;
  bool filter = false;
  bool snapshots = false;

  // sqg / degregorio
  double a = 2.0;
  double blowup_factor = 1e6;
  double tail_limit = 1e-4;
  /// Non-empty: blow-up search over these grid sizes instead of one run.
  std::vector<double> resolutions;

  // vortex / gap3
  std::vector<double> vortex_theta;
  std::vector<double> vortex_weights;
  double z1 = 0.3;
  double z2 = 0.4;
  std::vector<double> energies;
  double max_time = 200.0;

  // lift-query (lift = euler | sqg) / kernel-decay
  std::string lift = "euler";
  double alpha = 0.5;
  std::vector<double> query_r;
  std::vector<double> query_theta;
  std::vector<double> ratios;
  int directions = 1000;

  // Fit: none | power | exponential, on grad_linf.
  std::string fit = "none";
  /// t, or shifted: power law in t + 1/m0 with m0 the initial sector mass.
  std::string fit_clock = "t";
  std::optional<double> fit_t_lo;
  std::optional<double> fit_t_hi;

  /// Named preset checks to evaluate (thm-growth, thm-boundary,
  /// rotating-pattern), empty for none.
  std::string checks;

  std::string output_dir = "runs";
  std::uint64_t seed = 1;
};

/// Keys accepted in config files, in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from its text value. Throws ConfigError naming the key.
void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key = value` lines; '#' starts a comment. Unknown keys, repeated
/// keys and malformed values throw ConfigError naming the field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& cfg);

/// Cross-field checks (grid size, ranges, model requirements). Throws
/// ConfigError naming the first failing field.
void validate(const ExperimentConfig& cfg);

SymmetrySpec symmetry_of(const ExperimentConfig& cfg);

}  // namespace homog::harness
