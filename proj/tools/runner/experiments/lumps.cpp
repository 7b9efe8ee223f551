#include <cmath>
#include <algorithm>
#include <bit>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "../experiments.hpp"
#include "../parallel.hpp"
#include "stochkg/core/numeric.hpp"
#include "stochkg/core/random.hpp"
#include "stochkg/lumps/packet.hpp"
#include "stochkg/lumps/transport.hpp"

namespace stochkg::runner {
namespace {

using namespace stochkg::lumps;

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

LumpSolution read_lump(ConfigReader& r, const std::array<double, 3>& default_velocity) {
  const double mass = r.positive("mass_in_inverse_length", 1.0);
  const Vec3 centre = to_vec(r.triple("centre_in_length", std::array<double, 3>{0, 0, 0}));
  const Vec3 v = to_vec(r.triple("velocity", default_velocity));
  if (!(norm(v) < 1.0)) throw ConfigError(r.path_of("velocity"), "speed must be below 1");
  return {centre, OnShellMomentum::from_velocity(v, mass)};
}

struct LumpParams {
  LumpSolution lump{{}, OnShellMomentum::at_rest(1.0)};
  double time;
  double half_width;
  double exclusion_radius;
  std::vector<std::uint64_t> intervals;
  double min_order;
  double rest_tolerance;
  double control_min_residual;
  std::uint64_t positivity_samples;
  double momentum_extent;
  std::uint64_t superposition_lumps;
  std::uint64_t oracle_samples;
  double oracle_tolerance;
};

// Static Yukawa at the rest-frame image of the lab event.
double boosted_oracle(const LumpSolution& l, const FourVector& x) {
  const FourVector rel(x[0], x.spatial() - l.centre);
  const FourVector rest = lorentz_boost(-1.0 * l.velocity(), rel);
  const double r = norm(rest.spatial());
  return std::exp(-l.mass() * r) / (4.0 * std::numbers::pi * r);
}

void run_lumps(const LumpParams& p, RunContext& ctx) {
  const auto grid_for = [&](std::uint64_t n) {
    return TransportGrid{p.time, p.lump.worldline(p.time), p.half_width, n, p.exclusion_radius};
  };
  std::vector<TransportReport> reports(p.intervals.size());
  parallel_for(p.intervals.size(), ctx.workers(),
               [&](std::size_t i) { reports[i] = lump_transport_residual(p.lump, grid_for(p.intervals[i])); });
  std::ostringstream csv;
  write_transport_csv_header(csv);
  std::vector<double> hs;
  std::vector<double> errs;
  for (const auto& r : reports) {
    write_transport_csv_row(csv, r);
    hs.push_back(r.spacing);
    errs.push_back(r.linf_relative);
  }
  ctx.artifact("transport_convergence.csv", csv.str());
  ctx.verdict(check_at_least("AC-9", "boosted lump transport residual order in spacing", fitted_order(hs, errs),
                             p.min_order));

  const LumpSolution rest{p.lump.centre, OnShellMomentum::at_rest(p.lump.mass())};
  const auto rest_report = lump_transport_residual(rest, grid_for(p.intervals.front()));
  ctx.verdict(check_at_most("AC-9", "rest lump transport residual", rest_report.linf_relative, p.rest_tolerance));

  // Transverse momentum of the same magnitude: the residual must stay large.
  const Vec3 v = p.lump.velocity();
  const double speed = norm(v);
  const Vec3 turned = speed > 0.0 ? Vec3{-v.y - v.z, v.x, v.x} : Vec3{0.5, 0.0, 0.0};
  const auto wrong = OnShellMomentum::from_velocity(turned * ((speed > 0.0 ? speed : 0.5) / norm(turned)),
                                                    p.lump.mass());
  const auto g = grid_for(p.intervals.back());
  const auto control = transport_residual_field([&](const FourVector& x) { return lump_evaluate(p.lump, x); }, wrong,
                                                g, {Worldline{p.lump.centre, p.lump.velocity()}});
  ctx.verdict(check_at_least("AC-9", "wrong-momentum control residual", summarize(control, g).linf_relative,
                             p.control_min_residual));

  // Phase-space samples: event and momentum both drawn at random, for the single lump
  // and for a random superposition in both evaluation modes.
  SeededRng rng(ctx.seed(), 1);
  std::vector<LumpSolution> members;
  for (std::uint64_t k = 0; k < p.superposition_lumps; ++k) {
    Vec3 c;
    Vec3 v;
    for (int a = 0; a < 3; ++a) c[a] = rng.uniform(-0.5 * p.half_width, 0.5 * p.half_width);
    for (int a = 0; a < 3; ++a) v[a] = rng.uniform(-0.5, 0.5);
    members.push_back({c, OnShellMomentum::from_velocity(v, p.lump.mass())});
  }
  const LumpEnsemble group(members);
  double smallest = std::numeric_limits<double>::infinity();
  std::uint64_t singular = 0;
  for (std::uint64_t i = 0; i < p.positivity_samples; ++i) {
    FourVector x;
    x[0] = p.time + rng.uniform(-p.half_width, p.half_width);
    for (int a = 1; a < 4; ++a) x[a] = rng.uniform(-p.half_width, p.half_width);
    Vec3 q;
    for (int a = 0; a < 3; ++a) q[a] = rng.uniform(-p.momentum_extent, p.momentum_extent);
    const OnShellMomentum momentum(q, p.lump.mass());
    try {
      const double values[] = {lump_evaluate({p.lump.centre, momentum}, x), superpose(group, x, momentum),
                               superpose_fixed(group, x)};
      for (double v : values) smallest = std::isfinite(v) ? std::min(smallest, v) : -1.0;
    } catch (const SingularityError&) {
      ++singular;
    }
  }
  ctx.measure("positivity samples on the worldline", static_cast<double>(singular));
  ctx.verdict(check_true("AC-9", "lump and superpositions strictly positive off the worldlines", smallest > 0.0));

  SeededRng oracle_rng(ctx.seed(), 2);
  std::ostringstream oracle_csv;
  write_csv_header(oracle_csv, {"t", "x1", "x2", "x3", "lump", "boosted_static"});
  double worst = 0.0;
  for (std::uint64_t i = 0; i < p.oracle_samples; ++i) {
    FourVector x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = oracle_rng.uniform(-p.half_width, p.half_width);
    const double expected = boosted_oracle(p.lump, x);
    const double value = lump_evaluate(p.lump, x);
    worst = std::max(worst, std::abs(value - expected) / expected);
    write_csv_row(oracle_csv, {x[0], x[1], x[2], x[3], value, expected});
  }
  ctx.artifact("boost_oracle.csv", oracle_csv.str());
  ctx.verdict(check_at_most("AC-9", "max relative difference from the boosted static Yukawa", worst,
                            p.oracle_tolerance));
}

struct PacketParams {
  LumpSolution lump{{}, OnShellMomentum::at_rest(1.0)};
  double bandwidth;
  PacketOptions options;
  double tolerance;
  std::vector<std::pair<double, bool>> feasibility_cases;
};

void run_packet(const PacketParams& p, RunContext& ctx) {
  const auto r = packet_compare(p.lump, p.bandwidth, p.options);
  std::ostringstream series;
  write_packet_csv(series, r);
  ctx.artifact("packet.csv", series.str());
  ctx.measure("lump velocity", r.lump_velocity);
  ctx.measure("centroid velocity", r.centroid_velocity);
  ctx.measure("spreading rate", r.spreading_rate);
  ctx.verdict(check_true("AC-10", "packet bandwidth exceeds the mass", r.feasible));
  ctx.verdict(check_at_most("AC-10", "centroid velocity relative error against the lump velocity",
                            r.relative_velocity_error, p.tolerance));

  std::ostringstream feasibility;
  write_csv_header(feasibility, {"bandwidth", "mass", "expected_feasible", "feasible", "relative_velocity_error"});
  for (const auto& [bw, expected] : p.feasibility_cases) {
    const auto f = packet_compare(p.lump, bw, p.options);
    write_csv_row(feasibility, {bw, f.mass, std::string(expected ? "true" : "false"),
                                std::string(f.feasible ? "true" : "false"), f.relative_velocity_error});
    ctx.verdict(check_true("AC-10", fmt::format("feasibility at bandwidth {} is {}", format_real(bw),
                                                expected ? "feasible" : "infeasible"),
                           f.feasible == expected));
  }
  ctx.artifact("feasibility.csv", feasibility.str());
}

}  // namespace

Plan configure_lump_check(ConfigReader& r) {
  LumpParams p;
  r.section("lump", [&](ConfigReader& s) { p.lump = read_lump(s, {0.5, 0.0, 0.0}); });
  p.time = r.real("time_in_length", 0.0);
  p.half_width = r.positive("half_width_in_length", 6.0);
  p.exclusion_radius = r.positive("exclusion_radius_in_length", 3.0);
  for (double n : r.reals("intervals", 2, std::vector<double>{16, 32, 64})) {
    if (!(n >= 2.0 && n == std::floor(n))) throw ConfigError(r.path_of("intervals"), "entries must be integers >= 2");
    p.intervals.push_back(static_cast<std::uint64_t>(n));
  }
  const double coarsest = 2.0 * p.half_width / static_cast<double>(*std::min_element(p.intervals.begin(), p.intervals.end()));
  if (p.exclusion_radius < 3.0 * coarsest) {
    throw ConfigError(r.path_of("exclusion_radius_in_length"), "must be at least three spacings of the coarsest grid");
  }
  p.min_order = r.real("min_order", 1.9);
  p.rest_tolerance = r.positive("rest_tolerance", 1e-12);
  p.control_min_residual = r.positive("control_min_residual", 0.1);
  p.positivity_samples = r.count("positivity_samples", 1, 100000);
  p.momentum_extent = r.positive("positivity_momentum_extent_in_inverse_length", 5.0);
  p.superposition_lumps = r.count("superposition_lumps", 1, 3);
  p.oracle_samples = r.count("oracle_samples", 1, 1000);
  p.oracle_tolerance = r.positive("oracle_tolerance", 1e-10);
  return [p](RunContext& ctx) { run_lumps(p, ctx); };
}

Plan configure_packet_compare(ConfigReader& r) {
  PacketParams p;
  r.section("lump", [&](ConfigReader& s) {
    const double mass = s.positive("mass_in_inverse_length", 1.0);
    const double p_bar = s.positive("momentum_in_inverse_length", 10.0);
    p.lump = {{}, OnShellMomentum({p_bar, 0.0, 0.0}, mass)};
  });
  p.bandwidth = r.positive("bandwidth_in_inverse_length", 2.0);
  r.section("evolution", [&](ConfigReader& s) {
    p.options.box_length = s.positive("box_length_in_length", 64.0);
    p.options.points = s.count("points", 16, 1024);
    if (!std::has_single_bit(p.options.points)) throw ConfigError(s.path_of("points"), "must be a power of two");
    p.options.start_fraction = s.bounded("start_fraction", 0.0, 1.0, 0.25);
    p.options.duration = s.non_negative("duration_in_length", 0.0);
    p.options.samples = s.count("samples", 3, 65);
  });
  p.tolerance = r.positive("relative_tolerance", 0.01);
  const Json default_cases = Json::parse(R"([
    {"bandwidth_in_inverse_length": 2.0, "expected_feasible": true},
    {"bandwidth_in_inverse_length": 0.5, "expected_feasible": false}
  ])");
  r.each("feasibility_cases", 0, default_cases, [&](ConfigReader& c, std::size_t) {
    const double bw = c.positive("bandwidth_in_inverse_length");
    p.feasibility_cases.emplace_back(bw, c.flag("expected_feasible"));
  });
  return [p](RunContext& ctx) { run_packet(p, ctx); };
}

}  // namespace stochkg::runner
