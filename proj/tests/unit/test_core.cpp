#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "stochkg/core/fourier.hpp"
#include "stochkg/core/numeric.hpp"
#include "stochkg/core/random.hpp"
#include "stochkg/core/stencil.hpp"
#include "stochkg/core/text_format.hpp"

using namespace stochkg;

TEST(MinkowskiDot, TimeLikeUnit) { EXPECT_EQ(minkowski_dot({1, 0, 0, 0}, {1, 0, 0, 0}), 1.0); }

TEST(MinkowskiDot, NullVector) { EXPECT_EQ(minkowski_dot({1, 1, 0, 0}, {1, 1, 0, 0}), 0.0); }

TEST(MinkowskiDot, MixedComponents) { EXPECT_EQ(minkowski_dot({2, 1, 1, 1}, {3, 1, 0, 2}), 3.0); }

TEST(LorentzBoost, ZeroVelocityIsIdentity) {
  const FourVector a(1.5, -0.2, 0.3, 2.0);
  EXPECT_EQ(lorentz_boost({}, a), a);
}

TEST(LorentzBoost, RestMomentum) {
  const FourVector b = lorentz_boost({0.6, 0, 0}, {1, 0, 0, 0});
  EXPECT_NEAR(b[0], 1.25, 1e-15);
  EXPECT_NEAR(b[1], 0.75, 1e-15);
  EXPECT_EQ(b[2], 0.0);
  EXPECT_EQ(b[3], 0.0);
}

TEST(LorentzBoost, PreservesInterval) {
  SeededRng rng(11, 0);
  for (int i = 0; i < 1000; ++i) {
    const FourVector a(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    v = v * (0.95 * rng.uniform() / std::max(1.0, norm(v)));
    const FourVector b = lorentz_boost(v, a);
    EXPECT_NEAR(minkowski_dot(b, b), minkowski_dot(a, a), 1e-12 * (1 + a[0] * a[0] + dot(a.spatial(), a.spatial())));
  }
}

TEST(LorentzBoost, ComposesWithInverse) {
  SeededRng rng(12, 0);
  for (int i = 0; i < 200; ++i) {
    const FourVector a(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Vec3 v{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    const FourVector back = lorentz_boost(-v, lorentz_boost(v, a));
    for (int mu = 0; mu < 4; ++mu) EXPECT_NEAR(back[mu], a[mu], 1e-12);
  }
}

TEST(LorentzBoost, RejectsLuminalSpeed) {
  EXPECT_THROW(lorentz_boost({1.0, 0, 0}, {}), std::domain_error);
  EXPECT_THROW(lorentz_boost({0.8, 0.7, 0}, {}), std::domain_error);
}

TEST(OnShellEnergy, Examples) {
  EXPECT_EQ(onshell_energy({0, 0, 0}, 1.0), 1.0);
  EXPECT_EQ(onshell_energy({3, 0, 0}, 4.0), 5.0);
  EXPECT_EQ(onshell_energy({1, 1, 1}, 1.0), 2.0);
  EXPECT_THROW(onshell_energy({}, 0.0), std::domain_error);
  EXPECT_THROW(onshell_energy({}, -1.0), std::domain_error);
}

TEST(OnShellMomentum, LiesOnShell) {
  SeededRng rng(3, 0);
  for (int i = 0; i < 100; ++i) {
    const OnShellMomentum p({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.1, 3));
    const FourVector four = p.four();
    EXPECT_GE(p.energy(), p.mass());
    EXPECT_NEAR(minkowski_dot(four, four) / (p.mass() * p.mass()), 1.0, 1e-12);
  }
}

TEST(OnShellMomentum, FromVelocityRoundTrip) {
  const auto p = OnShellMomentum::from_velocity({0.3, -0.4, 0.1}, 2.0);
  EXPECT_NEAR(p.velocity().x, 0.3, 1e-15);
  EXPECT_NEAR(p.velocity().y, -0.4, 1e-15);
  EXPECT_NEAR(p.velocity().z, 0.1, 1e-15);
}

TEST(SpaceTimeGrid, WavenumbersAreLatticeMultiples) {
  const auto g = SpaceTimeGrid::line(3.0, 16);
  EXPECT_DOUBLE_EQ(g.spacing(0), 3.0 / 16);
  for (std::size_t i = 0; i < 16; ++i) {
    const double k = g.wavenumber(0, i);
    const double ratio = k / (2 * std::numbers::pi / 3.0);
    EXPECT_NEAR(ratio, std::round(ratio), 1e-12);
  }
  EXPECT_EQ(g.mode_number(0, 8), -8);
  EXPECT_EQ(g.mode_number(0, 7), 7);
}

TEST(SpaceTimeGrid, RejectsNonPowerOfTwo) {
  EXPECT_THROW(SpaceTimeGrid::line(1.0, 12), std::invalid_argument);
  EXPECT_THROW(SpaceTimeGrid::line(-1.0, 16), std::invalid_argument);
  EXPECT_THROW(SpaceTimeGrid(2, {1, 1, 1}, {4, 4, 1}, 0.0), std::invalid_argument);
  EXPECT_THROW(SpaceTimeGrid::line(1.0, 16, -0.1), std::invalid_argument);
}

TEST(SpaceTimeGrid, FlattenRoundTrip) {
  const auto g = SpaceTimeGrid::cube(2.0, 8);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g.flatten(g.unflatten(i)), i);
  EXPECT_EQ(g.spectral_index({-1, 0, 0}), g.flatten({7, 0, 0}));
}

TEST(Fourier, RoundTrip) {
  SeededRng rng(5, 0);
  for (const auto& g : {SpaceTimeGrid::line(7.0, 64), SpaceTimeGrid::cube(3.0, 8)}) {
    std::vector<Complex> v(g.size());
    for (auto& c : v) c = {rng.normal(), rng.normal()};
    const auto back = from_spectrum(g, to_spectrum(g, v));
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      err = std::max(err, std::abs(back[i] - v[i]));
      scale = std::max(scale, std::abs(v[i]));
    }
    EXPECT_LT(err / scale, 1e-12);
  }
}

TEST(Fourier, SpectrumOfPlaneWave) {
  const auto g = SpaceTimeGrid::line(2.0, 32);
  std::vector<Complex> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::polar(1.0, 2 * std::numbers::pi * 3 * g.coordinate(0, i) / 2.0);
  const auto s = to_spectrum(g, v);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(s[i]), i == 3 ? 1.0 : 0.0, 1e-13);
}

TEST(Fourier, SpectralDerivativeExactOnResolvedModes) {
  const auto g = SpaceTimeGrid::line(5.0, 64);
  const double k = 2 * std::numbers::pi * 4 / 5.0;
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(k * g.coordinate(0, i));
  const auto d = derivative(g, std::span<const double>(v), 0, DerivativeScheme::spectral);
  const auto lap = laplacian(g, std::span<const double>(v), DerivativeScheme::spectral);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_NEAR(d[i], k * std::cos(k * g.coordinate(0, i)), 1e-12);
    EXPECT_NEAR(lap[i], -k * k * v[i], 1e-11);
  }
}

TEST(Fourier, CentralDerivativeIsSecondOrder) {
  std::vector<double> errors;
  std::vector<double> steps;
  for (std::size_t n : {32u, 64u, 128u}) {
    const auto g = SpaceTimeGrid::line(2 * std::numbers::pi, n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(g.coordinate(0, i));
    const auto d = derivative(g, std::span<const double>(v), 0, DerivativeScheme::central2);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - std::cos(g.coordinate(0, i))));
    errors.push_back(e);
    steps.push_back(g.spacing(0));
  }
  EXPECT_NEAR(fitted_order(steps, errors), 2.0, 0.05);
}

TEST(SeededRng, SameStreamSameSequence) {
  SeededRng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeededRng, DistinctStreamsUncorrelated) {
  const int n = 100000;
  for (std::uint64_t s = 0; s < 4; ++s) {
    SeededRng a(42, s), b(42, s + 1);
    double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i) {
      const double x = a.uniform(), y = b.uniform();
      sa += x;
      sb += y;
      sab += x * y;
      saa += x * x;
      sbb += y * y;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(double(n)));
  }
}

TEST(SeededRng, UniformAndNormalMoments) {
  SeededRng rng(9, 1);
  const int n = 200000;
  double su = 0, sn = 0, snn = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    snn += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 4 / std::sqrt(double(n)));
  EXPECT_NEAR(snn / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(SeededRng, ChildStreamsDiffer) {
  SeededRng parent(1, 2);
  SeededRng c0 = parent.child(0), c1 = parent.child(1);
  EXPECT_NE(c0.next_u64(), c1.next_u64());
  EXPECT_EQ(parent.child(0).next_u64(), SeededRng(1, 2).child(0).next_u64());
}

class StencilAccuracy : public ::testing::TestWithParam<int> {};

TEST_P(StencilAccuracy, ExactOnPolynomialsOfMatchingDegree) {
  const int acc = GetParam();
  const auto& d1 = first_derivative_stencil(acc);
  const auto& d2 = second_derivative_stencil(acc);
  // The first-derivative stencil of accuracy a differentiates x^j exactly for j <= a.
  for (int j = 0; j <= acc; ++j) {
    double s1 = 0.0, s2 = 0.0;
    for (const auto& t : d1.taps) s1 += t.weight * std::pow(t.offset, j);
    for (const auto& t : d2.taps) s2 += t.weight * std::pow(t.offset, j);
    EXPECT_NEAR(s1, j == 1 ? 1.0 : 0.0, 1e-12) << "degree " << j;
    EXPECT_NEAR(s2, j == 2 ? 2.0 : 0.0, 1e-12) << "degree " << j;
  }
}

INSTANTIATE_TEST_SUITE_P(Accuracies, StencilAccuracy, ::testing::Values(2, 4, 6, 8));

TEST(Stencil, RejectsUnknownAccuracy) {
  EXPECT_THROW(first_derivative_stencil(3), std::invalid_argument);
  EXPECT_THROW(second_derivative_stencil(10), std::invalid_argument);
}

TEST(Numeric, PairwiseSumMatchesExactIntegers) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(i);
  EXPECT_EQ(pairwise_sum(v), 499500.0);
}

TEST(Numeric, FittedOrderOfPowerLaw) {
  const std::vector<double> h{0.1, 0.05, 0.025};
  const std::vector<double> e{3e-4, 3e-4 / 16, 3e-4 / 256};
  EXPECT_NEAR(fitted_order(h, e), 4.0, 1e-12);
  const auto o = halving_orders(e);
  EXPECT_NEAR(o[0], 4.0, 1e-12);
}

TEST(Numeric, SimpsonIntegratesCubicsExactly) {
  const std::size_t n = 10;
  const double h = 2.0 / n;
  double s = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double x = h * j;
    s += simpson_weight(j, n) * (x * x * x - x);
  }
  EXPECT_NEAR(h * s, 4.0 - 2.0, 1e-13);
}

TEST(TextFormat, RoundTripsDoubles) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_real(v)), v);
  EXPECT_EQ(format_real(2.0), "2");
}

TEST(TextFormat, CsvQuoting) {
  std::ostringstream out;
  write_csv_row(out, {1.5, std::int64_t{-3}, std::uint64_t{7}, std::string("a,b"), std::string("plain")});
  EXPECT_EQ(out.str(), "1.5,-3,7,\"a,b\",plain\n");
}

TEST(TextFormat, MetaRecord) {
  std::ostringstream out;
  write_ndjson_meta(out, "x", {5, R"({"b":1,"a":2})"});
  EXPECT_EQ(out.str(), R"({"schema":"stochkg.meta/1","artifact":"x","seed":5,"config":{"b":1,"a":2}})" "\n");
}
