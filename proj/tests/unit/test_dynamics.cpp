#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "stochkg/core/numeric.hpp"
#include "stochkg/dynamics/ensemble.hpp"
#include "stochkg/dynamics/export.hpp"
#include "stochkg/dynamics/green.hpp"
#include "stochkg/dynamics/nonrelativistic.hpp"
#include "stochkg/dynamics/trajectory.hpp"

using namespace stochkg;
using namespace stochkg::dynamics;

namespace {

class NanFieldSource final : public FieldSource {
 public:
  explicit NanFieldSource(double after) : after_(after) {}
  vacuum::FieldTensor at(const FourVector& x) const override {
    const double v = x[0] > after_ ? std::numeric_limits<double>::quiet_NaN() : 0.0;
    return vacuum::FieldTensor::from_fields({v, 0, 0}, {});
  }

 private:
  double after_;
};

VacuumFieldSource vacuum_source(std::uint64_t seed, double dk = 1.0, double cutoff = 3.0) {
  SeededRng rng(seed, 0);
  return VacuumFieldSource(vacuum::sample_modes(dk, cutoff, rng));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST(StepCount, LandsOnSpan) {
  EXPECT_EQ(step_count(1.0, 0.1), 10u);
  EXPECT_EQ(step_count(1.0, 0.3), 4u);
  EXPECT_EQ(step_count(0.0, 0.1), 0u);
  EXPECT_THROW(step_count(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(step_count(-1.0, 0.1), std::invalid_argument);
}

TEST(Characteristic, FreeStreamingIsStraight) {
  NullFieldSource none;
  const OnShellMomentum p({0.6, -0.3, 0.2}, 1.0);
  const auto tr = integrate_trajectory(none, {1, 2, 3}, p, 1.0, 10.0, 0.01, 100);
  ASSERT_EQ(tr.samples.size(), 11u);
  for (const auto& s : tr.samples) {
    const Vec3 expected = Vec3{1, 2, 3} + s.t * p.velocity();
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(s.x[c], expected[c], 1e-13);
    EXPECT_EQ(s.p, p.spatial());
  }
  EXPECT_NEAR(tr.samples.back().t, 10.0, 1e-15);
  EXPECT_LT(tr.max_drift, 1e-15);
}

TEST(Characteristic, HyperbolicMotionInUniformElectricField) {
  const double e = 0.7, q = 1.3, m = 2.0;
  UniformFieldSource field({e, 0, 0}, {});
  const auto tr = integrate_trajectory(field, {}, OnShellMomentum::at_rest(m), q, 5.0, 1e-3, 1000);
  for (const auto& s : tr.samples) {
    const double a = q * e / m;
    EXPECT_NEAR(s.p.x, q * e * s.t, 1e-10);
    EXPECT_NEAR(s.x.x, (std::sqrt(1 + a * a * s.t * s.t) - 1) / a, 1e-10);
    EXPECT_NEAR(s.energy, std::sqrt(m * m + s.p.x * s.p.x), 1e-12);
  }
}

TEST(Characteristic, GyrationInUniformMagneticField) {
  const double b = 0.5, q = 1.0, m = 1.0;
  UniformFieldSource field({}, {0, 0, b});
  const OnShellMomentum p0({0.8, 0, 0}, m);
  const auto tr = integrate_trajectory(field, {}, p0, q, 20.0, 1e-3, 1000);
  const double omega = q * b / p0.energy();
  const double radius = 0.8 / (q * b);
  for (const auto& s : tr.samples) {
    // dp/dt = q v x B rotates p clockwise about z.
    EXPECT_NEAR(s.p.x, 0.8 * std::cos(omega * s.t), 1e-9);
    EXPECT_NEAR(s.p.y, -0.8 * std::sin(omega * s.t), 1e-9);
    EXPECT_NEAR(s.x.x, radius * std::sin(omega * s.t), 1e-9);
    EXPECT_NEAR(s.x.y, radius * (std::cos(omega * s.t) - 1), 1e-9);
  }
}

TEST(Characteristic, ShellDriftFallsWithStep) {
  const auto field = vacuum_source(3, 0.5, 2.0);
  const OnShellMomentum p({0.3, 0.1, -0.2}, 1.0);
  std::vector<double> steps, drifts;
  for (double dt : {0.2, 0.1, 0.05}) {
    const auto tr = integrate_trajectory(field, {}, p, 5.0, 4.0, dt, 1000);
    steps.push_back(dt);
    drifts.push_back(tr.max_drift);
  }
  EXPECT_GT(drifts[0], drifts[1]);
  EXPECT_GT(drifts[1], drifts[2]);
  EXPECT_GE(fitted_order(steps, drifts), 3.8);
}

TEST(Characteristic, StaysOnShellAfterProjection) {
  const auto field = vacuum_source(4);
  CharacteristicStepper s(field, {}, OnShellMomentum({0.1, 0.2, 0.3}, 0.7), 1.0, 0.0, 0.01);
  for (int i = 0; i < 500; ++i) {
    s.step();
    EXPECT_NEAR(shell_deviation(s.energy(), s.momentum(), 0.7), 0.0, 1e-14);
  }
}

TEST(Characteristic, BlowupReportsStepAndTime) {
  NanFieldSource field(0.5);
  try {
    integrate_trajectory(field, {}, OnShellMomentum::at_rest(1.0), 1.0, 1.0, 0.1);
    FAIL() << "expected IntegrationBlowup";
  } catch (const IntegrationBlowup& e) {
    EXPECT_GE(e.time(), 0.4);
    EXPECT_LE(e.time(), 0.6 + 1e-12);
    EXPECT_EQ(e.trajectory(), -1);
  }
  EXPECT_THROW(integrate_trajectory(NullFieldSource{}, {}, OnShellMomentum::at_rest(1.0), 0, 1, 0),
               std::invalid_argument);
}

TEST(Histogram, BinningAndOverflow) {
  PhaseSpaceHistogram h(0.0, {{PhaseAxis::x1, 0, 2, 2}, {PhaseAxis::p2, -1, 1, 4}});
  h.add({0.5, 0, 0}, {0, 0.6, 0});
  h.add({1.5, 0, 0}, {0, -0.9, 0});
  h.add({2.5, 0, 0}, {0, 0, 0});
  h.add({1.0, 0, 0}, {0, 1.0, 0});
  EXPECT_EQ(h.total(), 4u);
  EXPECT_EQ(h.overflow(), 2u);
  EXPECT_EQ(h.counts()[0 * 4 + 3], 1u);
  EXPECT_EQ(h.counts()[1 * 4 + 0], 1u);
  EXPECT_DOUBLE_EQ(h.bin_volume(), 0.5);
  EXPECT_EQ(h.bin_index(7), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(h.bin_centre(7), (std::vector<double>{1.5, 0.75}));
  EXPECT_THROW(PhaseSpaceHistogram(0.0, {{PhaseAxis::x1, 1, 0, 2}}), std::invalid_argument);
}

TEST(Histogram, MergeAddsCounts) {
  const std::vector<HistogramAxis> axes{{PhaseAxis::x1, 0, 1, 2}};
  PhaseSpaceHistogram a(1.0, axes), b(1.0, axes), c(2.0, axes);
  a.add({0.2, 0, 0}, {});
  b.add({0.7, 0, 0}, {});
  b.add({5, 0, 0}, {});
  a.merge(b);
  EXPECT_EQ(a.total(), 3u);
  EXPECT_EQ(a.counts(), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_THROW(a.merge(c), std::invalid_argument);
}

TEST(Ensemble, InitialStatesReproducibleAndIndependentOfCount) {
  EnsembleConfig cfg;
  cfg.seed = 7;
  cfg.cloud.position_sigma = {1, 1, 1};
  cfg.cloud.momentum_sigma = {0.1, 0.2, 0.3};
  const auto a = initial_state(cfg, 5);
  cfg.trajectories = 1000;
  const auto b = initial_state(cfg, 5);
  EXPECT_EQ(a, b);
  EXPECT_NE(initial_state(cfg, 5).first, initial_state(cfg, 6).first);
}

TEST(Ensemble, ResultsIndependentOfWorkers) {
  EnsembleConfig cfg;
  cfg.trajectories = 24;
  cfg.charge = 0.5;
  cfg.field = FieldRealization::per_trajectory;
  cfg.k_spacing = 1.0;
  cfg.cutoff = 2.0;
  cfg.dt = 0.05;
  cfg.seed = 3;
  cfg.cloud.position_sigma = {1, 1, 1};
  cfg.cloud.momentum_sigma = {0.2, 0.2, 0.2};
  cfg.axes = {{PhaseAxis::x1, -3, 3, 12}, {PhaseAxis::p1, -1, 1, 8}};
  const std::vector<double> times{0.0, 1.0, 2.0};
  const auto one = run_ensemble(cfg, times);
  cfg.workers = 3;
  const auto three = run_ensemble(cfg, times);
  cfg.workers = 7;
  const auto seven = run_ensemble(cfg, times);
  EXPECT_EQ(one, three);
  EXPECT_EQ(one, seven);
  for (const auto& h : one) EXPECT_EQ(h.total(), 24u);
}

TEST(Ensemble, SharedFieldDiffersFromPerTrajectory) {
  EnsembleConfig cfg;
  cfg.trajectories = 16;
  cfg.charge = 2.0;
  cfg.k_spacing = 1.0;
  cfg.cutoff = 2.0;
  cfg.dt = 0.05;
  cfg.seed = 3;
  cfg.axes = {{PhaseAxis::p1, -0.2, 0.2, 40}};
  cfg.field = FieldRealization::shared;
  const auto shared = run_ensemble(cfg, {2.0});
  // A cloud with no spread in one shared field is a single point.
  const auto max_bin = *std::max_element(shared[0].counts().begin(), shared[0].counts().end());
  EXPECT_EQ(max_bin + shared[0].overflow(), 16u);
  EXPECT_TRUE(max_bin == 16u || shared[0].overflow() == 16u);
  cfg.field = FieldRealization::per_trajectory;
  const auto own = run_ensemble(cfg, {2.0});
  EXPECT_FALSE(own == shared);
}

TEST(Ensemble, BlowupCarriesIndex) {
  EnsembleConfig cfg;
  cfg.trajectories = 4;
  cfg.workers = 2;
  cfg.dt = 0.1;
  cfg.charge = 1.0;
  cfg.field = FieldRealization::per_trajectory;
  cfg.k_spacing = 1e300;
  cfg.cutoff = 2e300;
  try {
    run_ensemble(cfg, {1.0});
    FAIL() << "expected IntegrationBlowup";
  } catch (const IntegrationBlowup& e) {
    EXPECT_EQ(e.trajectory(), 0);
  }
}

TEST(Ensemble, RejectsBadInput) {
  EnsembleConfig cfg;
  EXPECT_THROW(run_ensemble(cfg, {1.0, 0.5}), std::invalid_argument);
  cfg.trajectories = 0;
  EXPECT_THROW(run_ensemble(cfg, {1.0}), std::invalid_argument);
}

TEST(Green, MatchesClosedFormForGaussianSource) {
  // g = exp(-(x^0)^2): the line integral has a closed form in erf.
  const PhaseSpaceFunction g = [](const FourVector& x, const OnShellMomentum&) {
    return std::exp(-x[0] * x[0]);
  };
  const OnShellMomentum p({0.5, 0, 0}, 1.0);
  const double e = p.energy();
  for (double t : {-1.0, 0.0, 0.7, 2.0}) {
    const auto r = free_streaming_inverse(g, {t, 0, 0, 0}, p, 10.0, 0.01);
    const double exact = std::sqrt(std::numbers::pi) / (2 * e) * (std::erf(t) - std::erf(t - 10.0 * e));
    EXPECT_NEAR(r.value, exact, 1e-9);
    EXPECT_FALSE(r.truncation_warning);
    EXPECT_EQ(r.intervals % 2, 0u);
  }
}

TEST(Green, InvertsTransportOperator) {
  const PhaseSpaceFunction g = [](const FourVector& x, const OnShellMomentum&) {
    return std::exp(-x[0] * x[0] - 0.5 * dot(x.spatial(), x.spatial()));
  };
  const OnShellMomentum p({0.3, -0.4, 0.2}, 1.2);
  const FourVector x(0.5, 0.2, 0.1, -0.3);
  const double h = 1e-3;
  const auto plus = free_streaming_inverse(g, x + h * p.four(), p, 20.0, 0.005);
  const auto minus = free_streaming_inverse(g, x - h * p.four(), p, 20.0, 0.005);
  EXPECT_NEAR((plus.value - minus.value) / (2 * h), g(x, p), 1e-6);
}

TEST(Green, FlagsTruncatedTail) {
  const PhaseSpaceFunction one = [](const FourVector&, const OnShellMomentum&) { return 1.0; };
  const auto r = free_streaming_inverse(one, {}, OnShellMomentum::at_rest(1.0), 1.0, 0.1);
  EXPECT_TRUE(r.truncation_warning);
  EXPECT_NEAR(r.value, 1.0, 1e-14);
}

TEST(Green, BinProbabilityForStaticPositions) {
  GaussianCloud cloud;
  cloud.position_mean = {0.5, 0, 0};
  cloud.position_sigma = {1.0, 0, 0};
  cloud.momentum_mean = {0.75, 0, 0};
  const std::vector<HistogramAxis> axes{{PhaseAxis::x1, -2, 4, 6}};
  const double v = 0.75 / 1.25;
  double total = 0;
  for (std::size_t b = 0; b < 6; ++b) {
    const double lo = -2.0 + b, hi = lo + 1;
    const double expected = normal_cdf(hi - 0.5 - 2 * v) - normal_cdf(lo - 0.5 - 2 * v);
    const double got = free_streaming_bin_probability(cloud, 1.0, axes, b, 2.0);
    EXPECT_NEAR(got, expected, 1e-12);
    total += got;
  }
  EXPECT_LT(total, 1.0);
}

TEST(Green, BinProbabilityMatchesEnsemble) {
  EnsembleConfig cfg;
  cfg.trajectories = 20000;
  cfg.mass = 1.0;
  cfg.dt = 0.5;
  cfg.seed = 12;
  cfg.cloud.position_sigma = {0.5, 0, 0};
  cfg.cloud.momentum_mean = {0.5, 0, 0};
  cfg.cloud.momentum_sigma = {0.4, 0, 0};
  cfg.axes = {{PhaseAxis::x1, -2, 6, 8}, {PhaseAxis::p1, -0.5, 1.5, 4}};
  const auto h = run_ensemble(cfg, {3.0})[0];
  for (std::size_t b = 0; b < h.counts().size(); ++b) {
    const double prob = free_streaming_bin_probability(cfg.cloud, cfg.mass, cfg.axes, b, 3.0);
    const double n = static_cast<double>(cfg.trajectories);
    const double sd = std::sqrt(std::max(1.0, n * prob * (1 - prob)));
    EXPECT_NEAR(static_cast<double>(h.counts()[b]), n * prob, 5 * sd) << "bin " << b;
  }
  cfg.cloud.momentum_sigma = {0.1, 0.1, 0};
  EXPECT_THROW(free_streaming_bin_probability(cfg.cloud, 1.0, cfg.axes, 0, 1.0), std::invalid_argument);
}

TEST(Nonrelativistic, DeviationScalesAsSpeedSquared) {
  UniformFieldSource field({1e-5, 0, 0}, {});
  const auto slow = nonrelativistic_consistency(field, {}, {0.01, 0, 0}, 1.0, 1.0, 20.0, 0.01);
  const auto faster = nonrelativistic_consistency(field, {}, {0.02, 0, 0}, 1.0, 1.0, 20.0, 0.01);
  EXPECT_TRUE(slow.within_regime);
  EXPECT_LT(slow.max_relative_deviation, 1e-3);
  // The gap is (3/2) v^2 times the field-driven displacement.
  EXPECT_NEAR(faster.max_absolute_deviation / slow.max_absolute_deviation, 4.0, 0.2);
  const auto fast = nonrelativistic_consistency(field, {}, {0.5, 0, 0}, 1.0, 1.0, 1.0, 0.01);
  EXPECT_FALSE(fast.within_regime);
}

TEST(Nonrelativistic, AgreesInVacuumField) {
  const auto field = vacuum_source(9, 0.5, 2.0);
  const auto r = nonrelativistic_consistency(field, {}, {0.01, 0.0, 0.0}, 1.0, 0.001, 10.0, 0.01);
  EXPECT_LT(r.max_relative_deviation, 1e-3);
}

TEST(Export, HistogramNdjsonLayout) {
  PhaseSpaceHistogram h(1.0, {{PhaseAxis::x1, 0, 2, 2}});
  h.add({0.5, 0, 0}, {});
  h.add({0.6, 0, 0}, {});
  h.add({9, 0, 0}, {});
  std::ostringstream out;
  write_histograms_ndjson(out, {h}, {4, "{}"});
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[0].find("stochkg.meta/1"), std::string::npos);
  EXPECT_NE(lines[1].find("stochkg.bin/1"), std::string::npos);
  EXPECT_NE(lines[1].find("\"count\":2"), std::string::npos);
  EXPECT_NE(lines[2].find("stochkg.slice/1"), std::string::npos);
  EXPECT_NE(lines[2].find("\"overflow\":1"), std::string::npos);

  std::ostringstream csv;
  write_histogram_summary_csv(csv, {h});
  EXPECT_EQ(csv.str(), "t,bins,total,overflow,max_count\n1,2,3,1,2\n");
}

TEST(Export, TrajectoryNdjsonHasOneRecordPerSample) {
  const auto tr = integrate_trajectory(NullFieldSource{}, {}, OnShellMomentum::at_rest(1.0), 0, 1.0, 0.25);
  std::ostringstream out;
  write_trajectory_ndjson(out, tr, {1, ""});
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + static_cast<long>(tr.samples.size()));
}
