#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "homog/harness/config.hpp"

namespace homog::harness {

inline constexpr int kSchemaVersion = 1;

/// FLUIDS_OUTPUT_DIR when set, otherwise cfg.output_dir.
std::filesystem::path output_root(const ExperimentConfig& cfg);

/// Column-oriented CSV written with 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<double>& row);
  /// Mixed row; numbers are formatted by format_number.
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_number(double x);

/// A run directory built under a hidden temporary name and renamed into
/// place by commit(), so readers never see a partial run. An existing name
/// gets a numeric suffix.
class RunDirectory {
 public:
  RunDirectory(std::filesystem::path root, std::string name);
  ~RunDirectory();
  RunDirectory(const RunDirectory&) = delete;
  RunDirectory& operator=(const RunDirectory&) = delete;

  /// Path inside the staging directory.
  std::filesystem::path file(const std::string& relative) const;
  void write(const std::string& relative, const std::string& contents) const;

  /// Renames into root; returns the final path.
  std::filesystem::path commit();

 private:
  std::filesystem::path root_;
  std::string name_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

/// Base manifest: schema version, model, name, config echo (key -> text).
nlohmann::json base_manifest(const ExperimentConfig& cfg);

/// Name for a run: cfg.name, or the model name when empty.
std::string run_name(const ExperimentConfig& cfg);

}  // namespace homog::harness
