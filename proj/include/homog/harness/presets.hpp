#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "homog/euler1d.hpp"
#include "homog/harness/config.hpp"
#include "homog/harness/fit.hpp"

namespace homog::harness {

/// Extends a base profile from the fundamental sector by the symmetry group.
/// With an odd axis a the base is read on [a, a + pi/m] and reflected with a
/// sign change, taking the mean 0 at the sector edges; otherwise it is read
/// on [0, 2 pi / m).
Profile symmetric_extension(std::function<double(double)> base,
                            std::function<double(double)> base_derivative,
                            const SymmetrySpec& symmetry);

/// Exact initial profile of a field-model config.
Profile initial_profile(const ExperimentConfig& cfg);

/// The profile sampled at cfg.n nodes and projected onto the symmetry class.
CircleField initial_field(const ExperimentConfig& cfg);

/// Odd 4-fold bump A (sin x + sin(2x)/2) / 2, x = pi theta / epsilon, on
/// [0, epsilon]; semi-Lagrangian, n = 1024, t_end = 50, power fit of the
/// gradient in the clock t + 1/m0. Throws ConfigError for epsilon outside
/// (0, 1/4].
ExperimentConfig preset_theorem_growth(double epsilon = 0.1);

/// sin(2 theta) on [0, pi/4], odd 4-fold extension (jumps at +-pi/4);
/// semi-Lagrangian, n = 1024, t_end = 30, exponential fit.
ExperimentConfig preset_theorem_boundary();

/// Two-value pattern c1 on {sin(m theta) > 0}, c2 elsewhere; rotation speed
/// is measured, not asserted.
ExperimentConfig preset_rotating_pattern(double c1 = 1.0, double c2 = 0.0);

/// thm-growth | thm-boundary | rotating-pattern.
ExperimentConfig preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// One sampled row of an Euler run plus the extra quantities the preset
/// checks need.
struct EulerRecord {
  std::vector<EulerDiagnostics> rows;
  /// \int_{delta}^{pi/4 - delta} |h - 1|, delta = 0.05 (thm-boundary only).
  std::vector<double> plateau_distance;
  /// h_m (rotating-pattern only).
  std::vector<std::complex<double>> mode;
  /// h at each sample (snapshots = true only).
  std::vector<CircleField> snapshots;
  EulerRunResult result;
  double wall_seconds = 0.0;

  std::vector<double> times() const;
  std::vector<double> column(double EulerDiagnostics::*member) const;
};

inline constexpr double kPlateauDelta = 0.05;

double plateau_distance(const EulerState& s, double delta = kPlateauDelta);

/// Runs an euler1d config in memory. Throws ConfigError on invalid config
/// or a fixed dt that violates the CFL bound.
EulerRecord run_euler_record(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  /// Informational checks are reported but never fail a run.
  bool informational = false;
  double value = 0.0;
  std::string detail;
};

/// Mass of one half-sector, l1 / (2m), for odd m-fold data.
double sector_mass(const EulerDiagnostics& d, int m);

/// Fit requested by the config, on grad_linf. Empty when fit = none.
std::optional<FitReport> fit_record(const ExperimentConfig& cfg, const EulerRecord& rec);

/// L1 bracket with 5% slack at every sample, and fitted exponent in
/// [2(1 - 2 eps^2) - 0.1, 2/(1 - 8 eps^2) + 0.1].
std::vector<CheckResult> check_theorem_growth(const ExperimentConfig& cfg, const EulerRecord& rec);

/// Exponential fit of grad_linf over the final third with r^2 >= 0.99 and
/// positive rate; plateau distance non-increasing after the transient;
/// -H'(0) >= 0.25 over the final third.
std::vector<CheckResult> check_theorem_boundary(const ExperimentConfig& cfg,
                                                const EulerRecord& rec);

/// Measured angular speed arg(h_m(t) / h_m(0)) / (m t), with the candidate
/// values (c1 + c2)/2 and (c1 + c2)/4 in the detail (informational).
std::vector<CheckResult> check_rotating_pattern(const ExperimentConfig& cfg,
                                                const EulerRecord& rec);

std::vector<CheckResult> run_checks(const ExperimentConfig& cfg, const EulerRecord& rec);

/// Transient excluded from the plateau monotonicity check.
inline constexpr double kPlateauTransient = 1.0;

}  // namespace homog::harness
