#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace stochkg::runner {

ConfigError::ConfigError(const std::string& path, const std::string& what)
    : std::runtime_error(path + ": " + what), path_(path) {}

ConfigReader::ConfigReader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
  if (!node_.is_object()) throw ConfigError(path_, "expected an object");
}

void ConfigReader::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(path_of(key), what);
}

const Json* ConfigReader::lookup(const std::string& key) {
  read_.insert(key);
  const auto it = node_.find(key);
  return it == node_.end() ? nullptr : &*it;
}

double ConfigReader::real(const std::string& key, std::optional<double> fallback) {
  const Json* v = lookup(key);
  double out = 0.0;
  if (!v) {
    if (!fallback) fail(key, "required number is missing");
    out = *fallback;
  } else {
    if (!v->is_number()) fail(key, "expected a number");
    out = v->get<double>();
    if (!std::isfinite(out)) fail(key, "must be finite");
  }
  echo_[key] = out;
  return out;
}

double ConfigReader::positive(const std::string& key, std::optional<double> fallback) {
  const double v = real(key, fallback);
  if (!(v > 0.0)) fail(key, fmt::format("must be positive (got {})", v));
  return v;
}

double ConfigReader::non_negative(const std::string& key, std::optional<double> fallback) {
  const double v = real(key, fallback);
  if (!(v >= 0.0)) fail(key, fmt::format("must be non-negative (got {})", v));
  return v;
}

double ConfigReader::bounded(const std::string& key, double lo, double hi, std::optional<double> fallback) {
  const double v = real(key, fallback);
  if (!(v >= lo && v <= hi)) fail(key, fmt::format("must lie in [{}, {}] (got {})", lo, hi, v));
  return v;
}

std::uint64_t ConfigReader::count(const std::string& key, std::uint64_t minimum,
                                  std::optional<std::uint64_t> fallback) {
  const Json* v = lookup(key);
  std::uint64_t out = 0;
  if (!v) {
    if (!fallback) fail(key, "required integer is missing");
    out = *fallback;
  } else {
    if (v->is_number_unsigned()) {
      out = v->get<std::uint64_t>();
    } else if (v->is_number_integer()) {
      fail(key, fmt::format("must be at least {} (got {})", minimum, v->get<std::int64_t>()));
    } else {
      fail(key, "expected a non-negative integer");
    }
  }
  if (out < minimum) fail(key, fmt::format("must be at least {} (got {})", minimum, out));
  echo_[key] = out;
  return out;
}

bool ConfigReader::flag(const std::string& key, std::optional<bool> fallback) {
  const Json* v = lookup(key);
  bool out = false;
  if (!v) {
    if (!fallback) fail(key, "required boolean is missing");
    out = *fallback;
  } else {
    if (!v->is_boolean()) fail(key, "expected true or false");
    out = v->get<bool>();
  }
  echo_[key] = out;
  return out;
}

std::string ConfigReader::choice(const std::string& key, const std::vector<std::string>& allowed,
                                 std::optional<std::string> fallback) {
  const Json* v = lookup(key);
  std::string out;
  if (!v) {
    if (!fallback) fail(key, "required string is missing");
    out = *fallback;
  } else {
    if (!v->is_string()) fail(key, "expected a string");
    out = v->get<std::string>();
  }
  bool ok = false;
  for (const auto& a : allowed) ok = ok || a == out;
  if (!ok) fail(key, fmt::format("must be one of {} (got '{}')", fmt::join(allowed, ", "), out));
  echo_[key] = out;
  return out;
}

std::vector<double> ConfigReader::reals(const std::string& key, std::size_t min_size,
                                        std::optional<std::vector<double>> fallback) {
  const Json* v = lookup(key);
  std::vector<double> out;
  if (!v) {
    if (!fallback) fail(key, "required array is missing");
    out = *fallback;
  } else {
    if (!v->is_array()) fail(key, "expected an array of numbers");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        fail(fmt::format("{}[{}]", key, i), "expected a finite number");
      }
      out.push_back(e.get<double>());
    }
  }
  if (out.size() < min_size) fail(key, fmt::format("needs at least {} entries", min_size));
  echo_[key] = out;
  return out;
}

std::array<double, 3> ConfigReader::triple(const std::string& key, std::optional<std::array<double, 3>> fallback) {
  std::optional<std::vector<double>> fb;
  if (fallback) fb = std::vector<double>(fallback->begin(), fallback->end());
  const auto v = reals(key, 3, fb);
  if (v.size() != 3) fail(key, "expected exactly three numbers");
  return {v[0], v[1], v[2]};
}

std::array<long, 3> ConfigReader::mode_numbers(const std::string& key,
                                               std::optional<std::array<long, 3>> fallback) {
  const Json* v = lookup(key);
  if (!v) {
    if (!fallback) fail(key, "required mode-number triple is missing");
    echo_[key] = *fallback;
    return *fallback;
  }
  if (!v->is_array() || v->size() != 3) fail(key, "expected three integers");
  std::array<long, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(*v)[i].is_number_integer()) fail(fmt::format("{}[{}]", key, i), "expected an integer");
    out[i] = (*v)[i].get<long>();
  }
  echo_[key] = out;
  return out;
}

void ConfigReader::section(const std::string& key, const std::function<void(ConfigReader&)>& body) {
  static const Json empty = Json::object();
  const Json* v = lookup(key);
  ConfigReader child(v ? *v : empty, path_of(key));
  body(child);
  child.finish();
  echo_[key] = child.echo();
}

void ConfigReader::each(const std::string& key, std::size_t min_size, const Json& fallback,
                        const std::function<void(ConfigReader&, std::size_t)>& body) {
  const Json* v = lookup(key);
  const Json& list = v ? *v : fallback;
  if (!list.is_array()) fail(key, "expected an array of objects");
  if (list.size() < min_size) fail(key, fmt::format("needs at least {} entries", min_size));
  Json echo = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    ConfigReader child(list[i], fmt::format("{}[{}]", path_of(key), i));
    body(child, i);
    child.finish();
    echo.push_back(child.echo());
  }
  echo_[key] = std::move(echo);
}

void ConfigReader::finish() const {
  for (const auto& [key, value] : node_.items()) {
    if (!read_.count(key)) throw ConfigError(path_of(key), "unknown key");
  }
}

RunConfig parse_run_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("$", "expected an object");
  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema") {
      if (value != "stochkg.config/1") throw ConfigError("$.schema", "expected \"stochkg.config/1\"");
    } else if (key == "experiment") {
      if (!value.is_string()) throw ConfigError("$.experiment", "expected a string");
      cfg.experiment = value.get<std::string>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("$.seed", "expected a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "parameters") {
      if (!value.is_object()) throw ConfigError("$.parameters", "expected an object");
      cfg.parameters = value;
    } else {
      throw ConfigError("$." + key, "unknown key");
    }
  }
  if (!doc.contains("schema")) throw ConfigError("$.schema", "required key is missing");
  if (cfg.experiment.empty()) throw ConfigError("$.experiment", "required key is missing");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("$", "cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

}  // namespace stochkg::runner
