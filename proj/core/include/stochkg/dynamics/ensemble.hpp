#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stochkg/dynamics/trajectory.hpp"

namespace stochkg::dynamics {

/// Phase-space coordinate a histogram axis bins over.
enum class PhaseAxis { x1, x2, x3, p1, p2, p3 };

const char* axis_name(PhaseAxis axis);

struct HistogramAxis {
  PhaseAxis coordinate;
  double lo;
  double hi;
  std::size_t bins;

  double width() const { return (hi - lo) / static_cast<double>(bins); }
  double edge(std::size_t i) const { return lo + static_cast<double>(i) * width(); }
};

/// Counts of ensemble members in a rectangular binning of selected phase-space axes at
/// one time slice. Members outside the binned region go to `overflow`, so
/// total() always equals the number of integrated trajectories.
class PhaseSpaceHistogram {
 public:
  PhaseSpaceHistogram(double time, std::vector<HistogramAxis> axes);

  double time() const { return time_; }
  const std::vector<HistogramAxis>& axes() const { return axes_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t overflow() const { return overflow_; }
  std::uint64_t total() const;
  double bin_volume() const;

  /// Row-major multi-index of bin `flat` (last axis fastest).
  std::vector<std::size_t> bin_index(std::size_t flat) const;
  /// Bin centre along every axis.
  std::vector<double> bin_centre(std::size_t flat) const;

  void add(const Vec3& x, const Vec3& p);
  /// Adds the counts of a histogram over the same time and axes.
  void merge(const PhaseSpaceHistogram& other);

  friend bool operator==(const PhaseSpaceHistogram&, const PhaseSpaceHistogram&);

 private:
  double time_;
  std::vector<HistogramAxis> axes_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t overflow_ = 0;
};

/// Independent Gaussian spread per component; a zero sigma gives a delta in that component.
struct GaussianCloud {
  Vec3 position_mean;
  Vec3 position_sigma;
  Vec3 momentum_mean;
  Vec3 momentum_sigma;
};

enum class FieldRealization {
  none,            // free streaming; the charge is ignored
  per_trajectory,  // fresh ModeSet for every member
  shared,          // one ModeSet for the whole ensemble
};

struct EnsembleConfig {
  std::size_t trajectories = 1;
  double mass = 1.0;
  double charge = 0.0;
  GaussianCloud cloud;
  double dt = 1e-2;
  FieldRealization field = FieldRealization::none;
  double k_spacing = 0.25;
  double cutoff = 8.0;
  std::uint64_t seed = 0;
  std::vector<HistogramAxis> axes;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  unsigned workers = 1;
};

/// Random streams: member i draws its initial state from stream (i + 1).child(0) and its
/// ModeSet from stream (i + 1).child(1); a shared ModeSet comes from stream 0.
///
/// Slice times must be non-negative and ascending; each is reached by an integer number
/// of steps of a step size no larger than cfg.dt. IntegrationBlowup from any member is
/// rethrown with its index (the lowest failing index when several fail).
std::vector<PhaseSpaceHistogram> run_ensemble(const EnsembleConfig& cfg,
                                              const std::vector<double>& slice_times);

/// Initial phase-space point of ensemble member `index`.
std::pair<Vec3, Vec3> initial_state(const EnsembleConfig& cfg, std::size_t index);

}  // namespace stochkg::dynamics
