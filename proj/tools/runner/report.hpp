#pragma once

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "stochkg/core/text_format.hpp"

namespace stochkg::runner {

/// One pass/fail check. `criterion` names the acceptance item it instantiates ("AC-6").
struct Verdict {
  std::string criterion;
  std::string name;
  double measured = 0.0;
  /// "<=", ">=", "==" or "|x-target|<=".
  std::string comparison;
  double tolerance = 0.0;
  bool pass = false;
};

Verdict check_at_most(std::string criterion, std::string name, double measured, double bound);
Verdict check_at_least(std::string criterion, std::string name, double measured, double bound);
Verdict check_true(std::string criterion, std::string name, bool ok);
/// |measured - target| <= tolerance; `measured` is reported as the raw value.
Verdict check_near(std::string criterion, std::string name, double measured, double target, double tolerance);

/// A reported number that carries no verdict.
struct Measurement {
  std::string name;
  double value = 0.0;
};

struct ArtifactRecord {
  std::string path;  // relative to the run directory
  std::uint64_t bytes = 0;
  std::string sha256;
};

struct RunReport {
  std::string experiment;
  std::uint64_t seed = 0;
  Json config;
  std::filesystem::path directory;
  std::vector<ArtifactRecord> artifacts;
  std::vector<Verdict> verdicts;
  std::vector<Measurement> measurements;

  bool passed() const;
  std::vector<const Verdict*> failures() const;
};

/// Hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// Writes `data` to `path` through a temporary sibling and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& data);

/// Collects the artifacts, verdicts and measurements of one run into its directory.
class RunContext {
 public:
  RunContext(std::string experiment, std::uint64_t seed, Json config, std::filesystem::path directory,
             unsigned workers);

  std::uint64_t seed() const { return report_.seed; }
  unsigned workers() const { return workers_; }
  /// Seed and config echo for NDJSON meta records.
  ArtifactMeta meta() const;

  /// Writes one artifact atomically and records its checksum.
  void artifact(const std::string& name, const std::string& content);
  void verdict(Verdict v) { report_.verdicts.push_back(std::move(v)); }
  void measure(std::string name, double value) { report_.measurements.push_back({std::move(name), value}); }

  /// Writes verdicts.csv and manifest.json and returns the report.
  RunReport finish();

 private:
  RunReport report_;
  unsigned workers_;
};

/// Manifest document: schema, version, experiment, seed, config, artifacts, verdicts,
/// measurements. Deterministic for a fixed report.
Json manifest_json(const RunReport& r);

}  // namespace stochkg::runner
