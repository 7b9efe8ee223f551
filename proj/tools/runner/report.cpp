#include "report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>
#include <fmt/format.h>

#include "version.hpp"

namespace stochkg::runner {

Verdict check_at_most(std::string criterion, std::string name, double measured, double bound) {
  return {std::move(criterion), std::move(name), measured, "<=", bound, measured <= bound};
}

Verdict check_at_least(std::string criterion, std::string name, double measured, double bound) {
  return {std::move(criterion), std::move(name), measured, ">=", bound, measured >= bound};
}

Verdict check_true(std::string criterion, std::string name, bool ok) {
  return {std::move(criterion), std::move(name), ok ? 1.0 : 0.0, "==", 1.0, ok};
}

Verdict check_near(std::string criterion, std::string name, double measured, double target,
                   double tolerance) {
  const bool ok = std::abs(measured - target) <= tolerance;
  return {std::move(criterion), std::move(name), measured, fmt::format("|x-{}|<=", target), tolerance, ok};
}

bool RunReport::passed() const {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

std::vector<const Verdict*> RunReport::failures() const {
  std::vector<const Verdict*> out;
  for (const auto& v : verdicts) {
    if (!v.pass) out.push_back(&v);
  }
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& data) {
  const auto tmp = path.parent_path() / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

RunContext::RunContext(std::string experiment, std::uint64_t seed, Json config,
                       std::filesystem::path directory, unsigned workers)
    : workers_(workers) {
  report_.experiment = std::move(experiment);
  report_.seed = seed;
  report_.config = std::move(config);
  report_.directory = std::move(directory);
  std::filesystem::create_directories(report_.directory);
}

ArtifactMeta RunContext::meta() const { return {report_.seed, report_.config.dump()}; }

void RunContext::artifact(const std::string& name, const std::string& content) {
  write_file_atomic(report_.directory / name, content);
  report_.artifacts.push_back({name, content.size(), sha256_hex(content)});
}

RunReport RunContext::finish() {
  std::ostringstream csv;
  write_csv_header(csv, {"criterion", "name", "measured", "comparison", "tolerance", "pass"});
  for (const auto& v : report_.verdicts) {
    write_csv_row(csv, {v.criterion, v.name, v.measured, v.comparison, v.tolerance,
                        std::string(v.pass ? "true" : "false")});
  }
  artifact("verdicts.csv", csv.str());
  write_file_atomic(report_.directory / "manifest.json", manifest_json(report_).dump(2) + "\n");
  return report_;
}

namespace {

// JSON has no representation for non-finite numbers; they are written as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

Json manifest_json(const RunReport& r) {
  Json m;
  m["schema"] = "stochkg.manifest/1";
  m["version"] = version_string;
  m["experiment"] = r.experiment;
  m["seed"] = r.seed;
  m["config"] = r.config;
  Json artifacts = Json::array();
  for (const auto& a : r.artifacts) {
    artifacts.push_back({{"path", a.path}, {"bytes", a.bytes}, {"sha256", a.sha256}});
  }
  m["artifacts"] = std::move(artifacts);
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"criterion", v.criterion},
                        {"name", v.name},
                        {"measured", number(v.measured)},
                        {"comparison", v.comparison},
                        {"tolerance", number(v.tolerance)},
                        {"pass", v.pass}});
  }
  m["verdicts"] = std::move(verdicts);
  Json measurements = Json::array();
  for (const auto& x : r.measurements) measurements.push_back({{"name", x.name}, {"value", number(x.value)}});
  m["measurements"] = std::move(measurements);
  m["passed"] = r.passed();
  return m;
}

}  // namespace stochkg::runner
