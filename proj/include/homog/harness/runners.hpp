#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homog/harness/config.hpp"
#include "homog/harness/fit.hpp"
#include "homog/harness/presets.hpp"
#include "homog/sqg1d.hpp"

namespace homog::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPhysicsAbort = 2;
inline constexpr int kExitConfigError = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  /// One line, printed by the CLI.
  std::string summary;
  std::filesystem::path directory;
  nlohmann::json manifest;
  std::vector<CheckResult> checks;
  std::optional<FitReport> fit;
};

/// Validates, runs and writes one run directory (config.txt, manifest.json,
/// trajectory.csv, fit.json when a fit applies, fields/ with snapshots).
/// Throws ConfigError; physics aborts are reported through exit_code 2 with
/// the directory still written.
RunOutcome run_experiment(const ExperimentConfig& cfg);

struct SQGRecord {
  std::vector<SQGDiagnostics> rows;
  SQGRunResult result;
  double wall_seconds = 0.0;
};

SQGModel sqg_model_of(const ExperimentConfig& cfg);
SQGRecord run_sqg_record(const ExperimentConfig& cfg);

struct BlowupSearch {
  std::vector<std::size_t> n;
  std::vector<Verdict> verdicts;
  std::vector<std::optional<double>> times;
  /// All runs suspected-blowup and every estimate within 10% of their mean.
  bool agree = false;
  double spread = 0.0;
};

inline constexpr double kBlowupAgreement = 0.10;

/// Runs cfg at each resolution in cfg.resolutions.
BlowupSearch blowup_search(const ExperimentConfig& cfg);

}  // namespace homog::harness
