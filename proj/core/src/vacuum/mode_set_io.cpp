#include <json.hpp>

#include <string>

#include "stochkg/vacuum/mode_set.hpp"

namespace stochkg::vacuum {

using nlohmann::json;

void write_ndjson(const ModeSet& modes, std::ostream& out) {
  json header = {{"schema", "stochkg.modeset/1"},
                 {"k_spacing", modes.k_spacing()},
                 {"cutoff", modes.cutoff()},
                 {"modes", modes.size()}};
  out << header.dump() << '\n';
  for (const Mode& m : modes.modes()) {
    json rec = {{"schema", "stochkg.mode/1"},
                {"k", {m.k.x, m.k.y, m.k.z}},
                {"lambda", m.polarization},
                {"theta", m.phase},
                {"amplitude", m.amplitude}};
    out << rec.dump() << '\n';
  }
}

ModeSet read_ndjson(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_ndjson: missing header record");
  const json header = json::parse(line);
  if (header.at("schema") != "stochkg.modeset/1") {
    throw std::runtime_error("read_ndjson: unexpected header schema");
  }
  const double k_spacing = header.at("k_spacing").get<double>();
  const double cutoff = header.at("cutoff").get<double>();
  const auto count = header.at("modes").get<std::size_t>();

  std::vector<Mode> modes;
  modes.reserve(count);
  while (modes.size() < count && std::getline(in, line)) {
    if (line.empty()) continue;
    const json rec = json::parse(line);
    if (rec.at("schema") != "stochkg.mode/1") {
      throw std::runtime_error("read_ndjson: unexpected mode schema");
    }
    Mode m;
    const auto& k = rec.at("k");
    m.k = {k.at(0).get<double>(), k.at(1).get<double>(), k.at(2).get<double>()};
    m.polarization = rec.at("lambda").get<int>();
    m.polarization_vector = polarization_vector(m.k, m.polarization);
    m.phase = rec.at("theta").get<double>();
    m.amplitude = rec.at("amplitude").get<double>();
    modes.push_back(m);
  }
  if (modes.size() != count) throw std::runtime_error("read_ndjson: truncated mode list");
  return {k_spacing, cutoff, std::move(modes)};
}

}  // namespace stochkg::vacuum
