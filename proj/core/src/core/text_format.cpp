#include "stochkg/core/text_format.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <type_traits>

namespace stochkg {
namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_real(double value) { return fmt::format("{}", value); }

void write_csv_row(std::ostream& out, const std::vector<CsvCell>& cells) {
  bool first = true;
  for (const auto& cell : cells) {
    if (!first) out << ',';
    first = false;
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out << format_real(v);
          } else if constexpr (std::is_same_v<T, std::string>) {
            out << quote_if_needed(v);
          } else {
            out << v;
          }
        },
        cell);
  }
  out << '\n';
}

void write_csv_header(std::ostream& out, std::initializer_list<std::string_view> names) {
  bool first = true;
  for (auto name : names) {
    if (!first) out << ',';
    first = false;
    out << name;
  }
  out << '\n';
}

void write_ndjson_meta(std::ostream& out, std::string_view kind, const ArtifactMeta& meta) {
  nlohmann::ordered_json rec;
  rec["schema"] = "stochkg.meta/1";
  rec["artifact"] = std::string(kind);
  rec["seed"] = meta.seed;
  rec["config"] = meta.config_json.empty() ? nlohmann::ordered_json::object()
                                           : nlohmann::ordered_json::parse(meta.config_json);
  out << rec.dump() << '\n';
}

}  // namespace stochkg
