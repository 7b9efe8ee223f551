#pragma once

#include <ostream>
#include <vector>

#include "stochkg/lumps/lump.hpp"

namespace stochkg::lumps {

struct PacketOptions {
  double box_length = 64.0;
  std::size_t points = 1024;
  /// Initial centre as a fraction of the box.
  double start_fraction = 0.25;
  /// Evolution time; 0 picks the time to cross 3/8 of the box at the lump velocity.
  double duration = 0.0;
  std::size_t samples = 65;
};

struct PacketSample {
  double t;
  double centroid;
  double width;  // |psi|^2-weighted RMS spread
};

struct PacketReport {
  double p_bar = 0.0;
  double mass = 0.0;
  double bandwidth = 0.0;
  double lump_velocity = 0.0;
  double centroid_velocity = 0.0;
  /// |centroid_velocity - lump_velocity| / lump_velocity
  double relative_velocity_error = 0.0;
  /// Slope of the width against time.
  double spreading_rate = 0.0;
  /// bandwidth > m: a packet narrow in space is possible without leaving the regime.
  bool feasible = false;
  std::vector<PacketSample> series;
};

/// 1+1D positive-energy packet with Gaussian momentum profile of standard deviation
/// `bandwidth` around p_bar = |p| of the lump, evolved spectrally; the centroid velocity
/// is the least-squares slope of the |psi|^2-weighted mean position.
PacketReport packet_compare(const LumpSolution& l, double bandwidth, const PacketOptions& o = {});

/// t, centroid, width
void write_packet_csv(std::ostream& out, const PacketReport& r);

}  // namespace stochkg::lumps
