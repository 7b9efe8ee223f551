#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace stochkg::runner {

using Json = nlohmann::ordered_json;

/// Schema violation; the message starts with the JSON path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Typed, path-aware view of one JSON object.
///
/// Every accessor records the effective value (given or defaulted) in an echo object, so
/// the echo is the complete configuration the experiment actually ran with. finish()
/// rejects keys that no accessor asked for.
class ConfigReader {
 public:
  ConfigReader(const Json& node, std::string path);

  const std::string& path() const { return path_; }
  std::string path_of(const std::string& key) const { return path_ + "." + key; }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt);
  double positive(const std::string& key, std::optional<double> fallback = std::nullopt);
  double non_negative(const std::string& key, std::optional<double> fallback = std::nullopt);
  /// Real in [lo, hi].
  double bounded(const std::string& key, double lo, double hi, std::optional<double> fallback = std::nullopt);
  std::uint64_t count(const std::string& key, std::uint64_t minimum,
                      std::optional<std::uint64_t> fallback = std::nullopt);
  bool flag(const std::string& key, std::optional<bool> fallback = std::nullopt);
  std::string choice(const std::string& key, const std::vector<std::string>& allowed,
                     std::optional<std::string> fallback = std::nullopt);
  std::vector<double> reals(const std::string& key, std::size_t min_size,
                            std::optional<std::vector<double>> fallback = std::nullopt);
  /// Three reals, e.g. a vector quantity.
  std::array<double, 3> triple(const std::string& key, std::optional<std::array<double, 3>> fallback = std::nullopt);
  std::array<long, 3> mode_numbers(const std::string& key,
                                   std::optional<std::array<long, 3>> fallback = std::nullopt);

  /// Nested object; a missing key reads as {} so its defaults apply.
  void section(const std::string& key, const std::function<void(ConfigReader&)>& body);
  /// Array of objects; `fallback` is used when the key is missing.
  void each(const std::string& key, std::size_t min_size, const Json& fallback,
            const std::function<void(ConfigReader&, std::size_t)>& body);

  /// Throws ConfigError for unread keys.
  void finish() const;
  const Json& echo() const { return echo_; }

 private:
  const Json* lookup(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  const Json& node_;
  std::string path_;
  std::set<std::string> read_;
  Json echo_ = Json::object();
};

/// Top-level run configuration: {"schema":"stochkg.config/1","experiment":..,"seed":..,
/// "parameters":{..}}.
struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  Json parameters = Json::object();
};

/// Parses the document and checks the envelope; parameters are validated by the experiment.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace stochkg::runner
