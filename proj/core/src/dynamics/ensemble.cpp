#include "stochkg/dynamics/ensemble.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <optional>
#include <thread>

namespace stochkg::dynamics {

const char* axis_name(PhaseAxis axis) {
  switch (axis) {
    case PhaseAxis::x1: return "x1";
    case PhaseAxis::x2: return "x2";
    case PhaseAxis::x3: return "x3";
    case PhaseAxis::p1: return "p1";
    case PhaseAxis::p2: return "p2";
    case PhaseAxis::p3: return "p3";
  }
  return "?";
}

PhaseSpaceHistogram::PhaseSpaceHistogram(double time, std::vector<HistogramAxis> axes)
    : time_(time), axes_(std::move(axes)) {
  std::size_t n = 1;
  for (const auto& a : axes_) {
    if (a.bins == 0 || !(a.hi > a.lo)) {
      throw std::invalid_argument("PhaseSpaceHistogram: every axis needs bins > 0 and hi > lo");
    }
    n *= a.bins;
  }
  counts_.assign(n, 0);
}

std::uint64_t PhaseSpaceHistogram::total() const {
  std::uint64_t s = overflow_;
  for (auto c : counts_) s += c;
  return s;
}

double PhaseSpaceHistogram::bin_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.width();
  return v;
}

std::vector<std::size_t> PhaseSpaceHistogram::bin_index(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    idx[a] = flat % axes_[a].bins;
    flat /= axes_[a].bins;
  }
  return idx;
}

std::vector<double> PhaseSpaceHistogram::bin_centre(std::size_t flat) const {
  const auto idx = bin_index(flat);
  std::vector<double> c(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    c[a] = axes_[a].edge(idx[a]) + 0.5 * axes_[a].width();
  }
  return c;
}

void PhaseSpaceHistogram::add(const Vec3& x, const Vec3& p) {
  std::size_t flat = 0;
  for (const auto& a : axes_) {
    const auto c = static_cast<std::size_t>(a.coordinate);
    const double v = c < 3 ? x[c] : p[c - 3];
    if (!(v >= a.lo && v < a.hi)) {
      ++overflow_;
      return;
    }
    auto bin = static_cast<std::size_t>((v - a.lo) / a.width());
    bin = std::min(bin, a.bins - 1);
    flat = flat * a.bins + bin;
  }
  ++counts_[flat];
}

void PhaseSpaceHistogram::merge(const PhaseSpaceHistogram& other) {
  if (other.time_ != time_ || other.counts_.size() != counts_.size()) {
    throw std::invalid_argument("PhaseSpaceHistogram::merge: incompatible histograms");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  overflow_ += other.overflow_;
}

bool operator==(const PhaseSpaceHistogram& a, const PhaseSpaceHistogram& b) {
  if (a.time_ != b.time_ || a.overflow_ != b.overflow_ || a.counts_ != b.counts_) return false;
  if (a.axes_.size() != b.axes_.size()) return false;
  for (std::size_t i = 0; i < a.axes_.size(); ++i) {
    const auto& x = a.axes_[i];
    const auto& y = b.axes_[i];
    if (x.coordinate != y.coordinate || x.lo != y.lo || x.hi != y.hi || x.bins != y.bins) {
      return false;
    }
  }
  return true;
}

std::pair<Vec3, Vec3> initial_state(const EnsembleConfig& cfg, std::size_t index) {
  SeededRng rng = SeededRng(cfg.seed, index + 1).child(0);
  const GaussianCloud& c = cfg.cloud;
  Vec3 x;
  Vec3 p;
  for (int i = 0; i < 3; ++i) x[i] = c.position_mean[i] + c.position_sigma[i] * rng.normal();
  for (int i = 0; i < 3; ++i) p[i] = c.momentum_mean[i] + c.momentum_sigma[i] * rng.normal();
  return {x, p};
}

namespace {

struct Failure {
  std::size_t index;
  std::exception_ptr error;
};

void integrate_member(const EnsembleConfig& cfg, const std::vector<double>& slices,
                      std::size_t index, const FieldSource* shared,
                      std::vector<PhaseSpaceHistogram>& hist) {
  auto [x, p] = initial_state(cfg, index);

  std::unique_ptr<FieldSource> own;
  const FieldSource* field = shared;
  double charge = cfg.charge;
  switch (cfg.field) {
    case FieldRealization::none:
      own = std::make_unique<NullFieldSource>();
      field = own.get();
      charge = 0.0;
      break;
    case FieldRealization::per_trajectory: {
      SeededRng rng = SeededRng(cfg.seed, index + 1).child(1);
      own = std::make_unique<VacuumFieldSource>(vacuum::sample_modes(cfg.k_spacing, cfg.cutoff, rng));
      field = own.get();
      break;
    }
    case FieldRealization::shared:
      break;
  }

  double t = 0.0;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    const double span = slices[s] - t;
    const std::size_t n = step_count(span, cfg.dt);
    if (n > 0) {
      CharacteristicStepper stepper(*field, x, OnShellMomentum(p, cfg.mass), charge, t,
                                    span / static_cast<double>(n));
      try {
        for (std::size_t k = 0; k < n; ++k) stepper.step();
      } catch (const IntegrationBlowup& e) {
        throw IntegrationBlowup(e.step(), e.time(), static_cast<long>(index));
      }
      x = stepper.position();
      p = stepper.momentum();
    }
    t = slices[s];
    hist[s].add(x, p);
  }
}

}  // namespace

std::vector<PhaseSpaceHistogram> run_ensemble(const EnsembleConfig& cfg,
                                              const std::vector<double>& slice_times) {
  if (cfg.trajectories == 0) throw std::invalid_argument("run_ensemble: need at least one trajectory");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("run_ensemble: dt must be positive");
  if (!(cfg.mass > 0.0)) throw std::invalid_argument("run_ensemble: mass must be positive");
  for (std::size_t i = 0; i < slice_times.size(); ++i) {
    if (!(slice_times[i] >= 0.0) || (i > 0 && slice_times[i] < slice_times[i - 1])) {
      throw std::invalid_argument("run_ensemble: slice times must be non-negative and ascending");
    }
  }

  std::optional<VacuumFieldSource> shared;
  if (cfg.field == FieldRealization::shared) {
    SeededRng rng(cfg.seed, 0);
    shared.emplace(vacuum::sample_modes(cfg.k_spacing, cfg.cutoff, rng));
  }

  auto empty = [&] {
    std::vector<PhaseSpaceHistogram> h;
    h.reserve(slice_times.size());
    for (double t : slice_times) h.emplace_back(t, cfg.axes);
    return h;
  };

  unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trajectories));

  std::vector<std::vector<PhaseSpaceHistogram>> partial(workers);
  std::vector<std::optional<Failure>> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        partial[w] = empty();
        const std::size_t begin = cfg.trajectories * w / workers;
        const std::size_t end = cfg.trajectories * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
          try {
            integrate_member(cfg, slice_times, i, shared ? &*shared : nullptr, partial[w]);
          } catch (...) {
            failures[w] = Failure{i, std::current_exception()};
            return;
          }
        }
      });
    }
  }

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f->error);
  }

  std::vector<PhaseSpaceHistogram> out = empty();
  for (const auto& part : partial) {
    for (std::size_t s = 0; s < out.size(); ++s) out[s].merge(part[s]);
  }
  return out;
}

}  // namespace stochkg::dynamics
