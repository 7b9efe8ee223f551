#pragma once

// Deterministic text output shared by the CSV and NDJSON exporters.

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stochkg {

/// Shortest representation that round-trips; identical bytes for identical doubles.
std::string format_real(double value);

using CsvCell = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// Writes one comma-separated line terminated by '\n'. Strings are quoted only when
/// they contain a comma, quote or newline.
void write_csv_row(std::ostream& out, const std::vector<CsvCell>& cells);
void write_csv_header(std::ostream& out, std::initializer_list<std::string_view> names);

/// Provenance carried by the first record of every NDJSON artifact.
struct ArtifactMeta {
  std::uint64_t seed = 0;
  /// Effective run configuration as a JSON document; empty when there is none.
  std::string config_json;
};

/// {"schema":"stochkg.meta/1","artifact":<kind>,"seed":..,"config":{..}} plus newline.
void write_ndjson_meta(std::ostream& out, std::string_view kind, const ArtifactMeta& meta);

}  // namespace stochkg
