#pragma once

#include <ostream>
#include <vector>

#include "stochkg/core/text_format.hpp"
#include "stochkg/dynamics/ensemble.hpp"

namespace stochkg::dynamics {

/// Meta record, then {"schema":"stochkg.sample/1","t":..,"x":[..],"p":[..],"p0":..} per sample.
void write_trajectory_ndjson(std::ostream& out, const Trajectory& tr, const ArtifactMeta& meta);

/// Meta record, then one {"schema":"stochkg.bin/1","t":..,"bin":[..],"centre":[..],"count":..}
/// per nonzero bin of every slice, followed by a per-slice {"schema":"stochkg.slice/1",..} total.
void write_histograms_ndjson(std::ostream& out, const std::vector<PhaseSpaceHistogram>& slices,
                             const ArtifactMeta& meta);

/// t,bins,total,overflow,max_count per slice.
void write_histogram_summary_csv(std::ostream& out, const std::vector<PhaseSpaceHistogram>& slices);

}  // namespace stochkg::dynamics
