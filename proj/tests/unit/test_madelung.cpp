#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "stochkg/madelung/madelung.hpp"

using namespace stochkg;
using namespace stochkg::kgwave;
using namespace stochkg::madelung;

namespace {

constexpr double pi = std::numbers::pi;

SpectralWave two_modes(const SpaceTimeGrid& g, double m) {
  SpectralWave w(g, m);
  w.add_mode({1, 0, 0}, 1.0);
  w.add_mode({3, 0, 0}, 0.4);
  return w;
}

}  // namespace

TEST(Decompose, PlaneWaveVelocityIsMomentum) {
  const auto g = SpaceTimeGrid::line(10.0, 32);
  const double m = 1.3, k = 2 * pi * 2 / 10.0;
  SpectralWave w(g, m);
  w.add_mode({2, 0, 0}, 1.5);
  const auto mf = decompose(time_levels(w, 0.7, 1e-3), m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(mf.rho()[i], 2.25, 1e-12);
    EXPECT_NEAR(mf.u()[0][i], std::sqrt(m * m + k * k), 1e-6);
    EXPECT_NEAR(mf.u()[1][i], k, 1e-12);
    EXPECT_EQ(mf.u()[2][i], 0.0);
  }
  EXPECT_EQ(mf.mask_fraction(), 0.0);
  EXPECT_EQ(mf.u_levels.size(), 3u);
}

TEST(Decompose, RejectsEmptyAndMalformedInput) {
  const auto g = SpaceTimeGrid::line(1.0, 8);
  const std::vector<GridField> zero{GridField(g, 0.0), GridField(g, 0.1), GridField(g, 0.2)};
  EXPECT_THROW(decompose(zero, 1.0), EmptyFieldError);
  EXPECT_THROW(decompose(std::vector<GridField>(2, GridField(g, 0.0)), 1.0), std::invalid_argument);
}

TEST(Decompose, MasksNodes) {
  const auto g = SpaceTimeGrid::line(4.0, 16);
  SpectralWave w(g, 1.0);
  w.add_mode({1, 0, 0}, 1.0);
  w.add_mode({-1, 0, 0}, -1.0);  // 2i sin(kx) e^{-iwt}: zeros at x = 0 and L/2
  const auto mf = decompose(time_levels(w, 0.0, 1e-3, 1), 1.0, 1e-6);
  EXPECT_EQ(mf.mask[0], 1);
  EXPECT_EQ(mf.mask[8], 1);
  EXPECT_NEAR(mf.mask_fraction(), 2.0 / 16, 1e-15);
  EXPECT_EQ(mf.u()[1][0], 0.0);
}

TEST(Continuity, SmallForKleinGordonSolution) {
  const auto g = SpaceTimeGrid::line(12.0, 64);
  const auto w = two_modes(g, 1.0);
  std::vector<double> errs;
  for (double dt : {0.02, 0.01}) {
    const auto mf = decompose(time_levels(w, 0.5, dt), 1.0);
    errs.push_back(max_abs(continuity_residual(mf)));
  }
  EXPECT_LT(errs[1], 1e-3);
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.1);
}

TEST(Continuity, NeedsFiveLevels) {
  const auto g = SpaceTimeGrid::line(12.0, 64);
  const auto mf = decompose(time_levels(two_modes(g, 1.0), 0.5, 0.01, 1), 1.0);
  EXPECT_THROW(continuity_residual(mf), std::invalid_argument);
}

TEST(QuantumPotential, MatchesDirectFiniteDifferenceOfAmplitude) {
  const auto g = SpaceTimeGrid::line(12.0, 128);
  const auto w = two_modes(g, 1.0);
  const double t = 0.5, dt = 1e-3;
  const auto mf = decompose(time_levels(w, t, dt), 1.0);
  const auto q = quantum_potential(mf);
  // Oracle: box R / R with R = |psi| sampled on the grid and differenced directly.
  std::vector<std::vector<double>> r(3, std::vector<double>(g.size()));
  for (int j = 0; j < 3; ++j) {
    const auto f = synthesize(w, t + (j - 1) * dt);
    for (std::size_t i = 0; i < g.size(); ++i) r[j][i] = std::abs(f.values[i]);
  }
  const double h = g.spacing(0);
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
    const std::size_t ip2 = (i + 2) % n, im2 = (i + n - 2) % n;
    const double rtt = (r[2][i] - 2 * r[1][i] + r[0][i]) / (dt * dt);
    const double rxx = (-r[1][ip2] + 16 * r[1][ip] - 30 * r[1][i] + 16 * r[1][im] - r[1][im2]) / (12 * h * h);
    EXPECT_NEAR(q.values[i], (rtt - rxx) / r[1][i], 2e-3) << i;
  }
}

TEST(HamiltonJacobi, CanonicalIdentityHoldsAtHalf) {
  const auto g = SpaceTimeGrid::line(12.0, 64);
  const auto mf = decompose(time_levels(two_modes(g, 1.0), 0.5, 1e-3), 1.0);
  const auto r = hj_residual(mf, 0.5, HjForm::canonical);
  EXPECT_LT(weighted_l2(r, mf.rho()), 1e-5);
  const auto off = hj_residual(mf, 0.3, HjForm::canonical);
  EXPECT_GT(weighted_l2(off, mf.rho()), 1e-2);
}

TEST(HamiltonJacobi, PlaneWaveResiduals) {
  const auto g = SpaceTimeGrid::line(10.0, 32);
  SpectralWave w(g, 2.0);
  w.add_mode({1, 0, 0}, 1.0);
  const auto mf = decompose(time_levels(w, 0.0, 1e-3), 2.0);
  EXPECT_LT(max_abs(hj_residual(mf, 0.5, HjForm::canonical)), 1e-5);
  // u.u / 2 - m^2 on shell is -m^2 / 2.
  const auto half = hj_residual(mf, 0.5, HjForm::half_kinetic);
  for (double v : half.values) EXPECT_NEAR(v, -2.0, 1e-5);
}

TEST(BetaFit, RecoversHalf) {
  const auto g = SpaceTimeGrid::line(12.0, 64);
  const auto mf = decompose(time_levels(two_modes(g, 1.0), 0.5, 1e-3), 1.0);
  const auto fit = fit_beta_sq(mf);
  EXPECT_NEAR(fit.beta_sq, 0.5, 1e-5);
  EXPECT_LT(fit.standard_error, 1e-4);
  EXPECT_EQ(fit.points, g.size());
}

TEST(BetaFit, ScaledVelocityShiftsEstimate) {
  const auto g = SpaceTimeGrid::line(12.0, 64);
  auto mf = decompose(time_levels(two_modes(g, 1.0), 0.5, 1e-3), 1.0);
  const double before = fit_beta_sq(mf).beta_sq;
  mf.scale_velocity(1, 1.1);
  EXPECT_GT(std::abs(fit_beta_sq(mf).beta_sq - before), 1e-3);
}

TEST(BetaFit, PlaneWaveIsIllPosed) {
  const auto g = SpaceTimeGrid::line(10.0, 32);
  SpectralWave w(g, 1.0);
  w.add_mode({1, 0, 0}, 1.0);
  const auto mf = decompose(time_levels(w, 0.0, 1e-3), 1.0);
  EXPECT_THROW(fit_beta_sq(mf), IllPosedFit);
}

TEST(HjForm, ParseAndName) {
  EXPECT_EQ(parse_hj_form("half_kinetic"), HjForm::half_kinetic);
  EXPECT_EQ(parse_hj_form("canonical"), HjForm::canonical);
  EXPECT_STREQ(hj_form_name(HjForm::canonical), "canonical");
  EXPECT_THROW(parse_hj_form("other"), std::invalid_argument);
}

TEST(Norms, WeightedAndMax) {
  ResidualField r{{1.0, -3.0, 100.0}, {0, 0, 1}};
  const std::vector<double> rho{1.0, 3.0, 1.0};
  EXPECT_NEAR(weighted_l2(r, rho), std::sqrt((1.0 + 27.0) / 4.0), 1e-15);
  EXPECT_EQ(max_abs(r), 3.0);
}

TEST(Export, ResidualCsv) {
  std::ostringstream out;
  write_residual_csv_header(out);
  write_residual_csv_row(out, 64, 0.01, "canonical", 0.5, 1e-6, 2e-6);
  EXPECT_EQ(out.str(), "points,dt,form,beta_sq,l2_residual,linf_residual\n64,0.01,canonical,0.5,1e-06,2e-06\n");
}
