#include "homog/harness/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "homog/error.hpp"

namespace homog::harness {

namespace fs = std::filesystem;

fs::path output_root(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("FLUIDS_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  if (std::strtod(buf, nullptr) == x) return buf;
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double x : row) cells.push_back(format_number(x));
  add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw PreconditionError("csv row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

RunDirectory::RunDirectory(fs::path root, std::string name)
    : root_(std::move(root)), name_(std::move(name)) {
  fs::create_directories(root_);
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::ostringstream tmp;
    tmp << "." << name_ << ".tmp-" << ::getpid() << "-" << rd();
    staging_ = root_ / tmp.str();
    if (fs::create_directory(staging_)) return;
  }
  throw std::runtime_error("cannot create a staging directory under " + root_.string());
}

RunDirectory::~RunDirectory() {
  if (!committed_) {
    std::error_code ec;
    fs::remove_all(staging_, ec);
  }
}

fs::path RunDirectory::file(const std::string& relative) const { return staging_ / relative; }

void RunDirectory::write(const std::string& relative, const std::string& contents) const {
  const auto path = file(relative);
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

fs::path RunDirectory::commit() {
  for (int suffix = 0;; ++suffix) {
    const fs::path target = root_ / (suffix ? name_ + "-" + std::to_string(suffix) : name_);
    if (fs::exists(target)) continue;
    // rename(2) refuses to replace a non-empty directory, so a concurrent
    // writer that wins the race makes us move on to the next suffix.
    std::error_code ec;
    fs::rename(staging_, target, ec);
    if (!ec) {
      committed_ = true;
      return target;
    }
    if (!fs::exists(target)) throw fs::filesystem_error("rename", staging_, target, ec);
  }
}

nlohmann::json base_manifest(const ExperimentConfig& cfg) {
  nlohmann::json m;
  m["schema_version"] = kSchemaVersion;
  m["model"] = to_string(cfg.model);
  m["name"] = run_name(cfg);
  nlohmann::json echo = nlohmann::json::object();
  std::istringstream in(to_text(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) echo[line.substr(0, eq)] = line.substr(eq + 3);
  }
  m["config"] = echo;
  return m;
}

std::string run_name(const ExperimentConfig& cfg) {
  return cfg.name.empty() ? to_string(cfg.model) : cfg.name;
}

}  // namespace homog::harness
