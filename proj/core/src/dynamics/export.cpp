#include "stochkg/dynamics/export.hpp"

#include <algorithm>

#include <json.hpp>

namespace stochkg::dynamics {

using nlohmann::ordered_json;

void write_trajectory_ndjson(std::ostream& out, const Trajectory& tr, const ArtifactMeta& meta) {
  write_ndjson_meta(out, "trajectory", meta);
  for (const auto& s : tr.samples) {
    ordered_json rec;
    rec["schema"] = "stochkg.sample/1";
    rec["t"] = s.t;
    rec["x"] = {s.x.x, s.x.y, s.x.z};
    rec["p"] = {s.p.x, s.p.y, s.p.z};
    rec["p0"] = s.energy;
    out << rec.dump() << '\n';
  }
}

void write_histograms_ndjson(std::ostream& out, const std::vector<PhaseSpaceHistogram>& slices,
                             const ArtifactMeta& meta) {
  write_ndjson_meta(out, "histogram", meta);
  for (const auto& h : slices) {
    for (std::size_t i = 0; i < h.counts().size(); ++i) {
      if (h.counts()[i] == 0) continue;
      ordered_json rec;
      rec["schema"] = "stochkg.bin/1";
      rec["t"] = h.time();
      rec["bin"] = h.bin_index(i);
      rec["centre"] = h.bin_centre(i);
      rec["count"] = h.counts()[i];
      out << rec.dump() << '\n';
    }
    ordered_json axes = ordered_json::array();
    for (const auto& a : h.axes()) {
      axes.push_back({{"axis", axis_name(a.coordinate)}, {"lo", a.lo}, {"hi", a.hi}, {"bins", a.bins}});
    }
    ordered_json rec;
    rec["schema"] = "stochkg.slice/1";
    rec["t"] = h.time();
    rec["axes"] = axes;
    rec["total"] = h.total();
    rec["overflow"] = h.overflow();
    out << rec.dump() << '\n';
  }
}

void write_histogram_summary_csv(std::ostream& out, const std::vector<PhaseSpaceHistogram>& slices) {
  write_csv_header(out, {"t", "bins", "total", "overflow", "max_count"});
  for (const auto& h : slices) {
    const auto max_count = h.counts().empty() ? std::uint64_t{0}
                                              : *std::max_element(h.counts().begin(), h.counts().end());
    write_csv_row(out, {h.time(), static_cast<std::uint64_t>(h.counts().size()), h.total(),
                        h.overflow(), max_count});
  }
}

}  // namespace stochkg::dynamics
