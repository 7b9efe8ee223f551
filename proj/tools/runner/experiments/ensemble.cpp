#include <cmath>

#include "../experiments.hpp"
#include "../parallel.hpp"
#include "stochkg/core/numeric.hpp"
#include "stochkg/dynamics/ensemble.hpp"
#include "stochkg/dynamics/export.hpp"
#include "stochkg/dynamics/green.hpp"
#include "stochkg/dynamics/nonrelativistic.hpp"

namespace stochkg::runner {
namespace {

using namespace stochkg::dynamics;

struct TransportParams {
  std::uint64_t trajectories;
  double charge;
  double k_spacing;
  double cutoff;
  Vec3 momentum_sigma;
  double t_span;
  double dt;
  double drift_tolerance;
  std::vector<double> order_dts;
  double min_order;
  std::uint64_t record_every;
};

struct HistogramParams {
  std::uint64_t trajectories;
  GaussianCloud cloud;
  double t;
  double dt;
  std::vector<HistogramAxis> axes;
  double sigma_threshold;
};

struct GreenParams {
  Vec3 momentum;
  double lambda_max;
  double dlambda;
  double fd_step;
  std::uint64_t probes;
  double probe_extent;
  double source_width;
  double tolerance;
};

struct NonrelativisticParams {
  double speed;
  double charge;
  double t_span;
  double dt;
};

struct EnsembleParams {
  double mass;
  TransportParams transport;
  HistogramParams histogram;
  GreenParams green;
  NonrelativisticParams nonrelativistic;
};

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

vacuum::ModeSet member_modes(const EnsembleParams& p, std::uint64_t seed, std::size_t i) {
  SeededRng rng = SeededRng(seed, i + 1).child(1);
  return vacuum::sample_modes(p.transport.k_spacing, p.transport.cutoff, rng);
}

OnShellMomentum member_momentum(const EnsembleParams& p, std::uint64_t seed, std::size_t i) {
  SeededRng rng = SeededRng(seed, i + 1).child(0);
  Vec3 q;
  for (int a = 0; a < 3; ++a) q[a] = p.transport.momentum_sigma[a] * rng.normal();
  return {q, p.mass};
}

void run_transport(const EnsembleParams& p, RunContext& ctx) {
  const auto& t = p.transport;
  std::vector<double> drift(t.trajectories);
  std::vector<Trajectory> first(1);
  parallel_for(t.trajectories, ctx.workers(), [&](std::size_t i) {
    const VacuumFieldSource field(member_modes(p, ctx.seed(), i));
    auto tr = integrate_trajectory(field, {}, member_momentum(p, ctx.seed(), i), t.charge, t.t_span, t.dt,
                                   t.record_every);
    drift[i] = tr.max_drift;
    if (i == 0) first[0] = std::move(tr);
  });

  std::ostringstream csv;
  write_csv_header(csv, {"trajectory", "dt", "max_drift"});
  double worst = 0.0;
  for (std::size_t i = 0; i < drift.size(); ++i) {
    write_csv_row(csv, {std::uint64_t{i}, t.dt, drift[i]});
    worst = std::max(worst, drift[i]);
  }
  ctx.artifact("drift.csv", csv.str());

  std::ostringstream traj;
  write_trajectory_ndjson(traj, first[0], ctx.meta());
  ctx.artifact("trajectory_0.ndjson", traj.str());

  const VacuumFieldSource field(member_modes(p, ctx.seed(), 0));
  const auto p0 = member_momentum(p, ctx.seed(), 0);
  std::vector<double> order_drift(t.order_dts.size());
  parallel_for(t.order_dts.size(), ctx.workers(), [&](std::size_t k) {
    order_drift[k] = integrate_trajectory(field, {}, p0, t.charge, t.t_span, t.order_dts[k], 1u << 30).max_drift;
  });
  std::ostringstream order_csv;
  write_csv_header(order_csv, {"dt", "max_drift"});
  for (std::size_t k = 0; k < order_drift.size(); ++k) write_csv_row(order_csv, {t.order_dts[k], order_drift[k]});
  ctx.artifact("drift_order.csv", order_csv.str());

  ctx.verdict(check_at_most("AC-2", "max pre-projection shell drift", worst, t.drift_tolerance));
  ctx.verdict(check_at_least("AC-2", "shell drift order under step refinement", fitted_order(t.order_dts, order_drift),
                             t.min_order));
}

void run_histogram(const EnsembleParams& p, RunContext& ctx) {
  const auto& h = p.histogram;
  EnsembleConfig cfg;
  cfg.trajectories = h.trajectories;
  cfg.mass = p.mass;
  cfg.cloud = h.cloud;
  cfg.dt = h.dt;
  cfg.field = FieldRealization::none;
  cfg.seed = ctx.seed();
  cfg.axes = h.axes;
  cfg.workers = ctx.workers();
  const auto slices = run_ensemble(cfg, {0.0, h.t});

  std::ostringstream nd;
  write_histograms_ndjson(nd, slices, ctx.meta());
  ctx.artifact("histograms.ndjson", nd.str());
  std::ostringstream summary;
  write_histogram_summary_csv(summary, slices);
  ctx.artifact("histogram_summary.csv", summary.str());

  const auto& last = slices.back();
  const double n = static_cast<double>(h.trajectories);
  std::ostringstream oracle;
  write_csv_header(oracle, {"bin", "count", "expected", "z"});
  double worst = 0.0;
  double inside = 0.0;
  for (std::size_t b = 0; b < last.counts().size(); ++b) {
    const double prob = free_streaming_bin_probability(h.cloud, p.mass, h.axes, b, h.t);
    inside += prob;
    const double expected = n * prob;
    // Multinomial standard deviation, floored at one count for nearly empty bins.
    const double sd = std::sqrt(std::max(1.0, expected * (1.0 - prob)));
    const double z = (static_cast<double>(last.counts()[b]) - expected) / sd;
    worst = std::max(worst, std::abs(z));
    write_csv_row(oracle, {std::uint64_t{b}, last.counts()[b], expected, z});
  }
  ctx.artifact("histogram_oracle.csv", oracle.str());

  const double out_prob = std::max(0.0, 1.0 - inside);
  const double out_sd = std::sqrt(std::max(1.0, n * out_prob * (1.0 - out_prob)));
  const double out_z = (static_cast<double>(last.overflow()) - n * out_prob) / out_sd;
  bool conserved = true;
  for (const auto& s : slices) conserved = conserved && s.total() == h.trajectories;

  ctx.verdict(check_at_most("AC-3", "bin-wise max |z| against characteristics oracle", worst, h.sigma_threshold));
  ctx.verdict(check_at_most("AC-3", "overflow |z| against characteristics oracle", std::abs(out_z), h.sigma_threshold));
  ctx.verdict(check_true("AC-3", "total weight conserved exactly", conserved));
}

void run_green(const EnsembleParams& p, RunContext& ctx) {
  const auto& g = p.green;
  const OnShellMomentum mom(g.momentum, p.mass);
  const double w2 = g.source_width * g.source_width;
  const PhaseSpaceFunction source = [w2](const FourVector& x, const OnShellMomentum&) {
    return std::exp(-(x[0] * x[0] + dot(x.spatial(), x.spatial())) / (2.0 * w2));
  };

  SeededRng rng = SeededRng(ctx.seed(), 0).child(2);
  std::vector<FourVector> points(g.probes);
  for (auto& x : points) {
    for (int mu = 0; mu < 4; ++mu) x[mu] = rng.uniform(-g.probe_extent, g.probe_extent);
  }
  std::vector<double> applied(points.size());
  std::vector<double> value(points.size());
  std::vector<int> warned(points.size());
  parallel_for(points.size(), ctx.workers(), [&](std::size_t i) {
    const FourVector step = g.fd_step * mom.four();
    const auto plus = free_streaming_inverse(source, points[i] + step, mom, g.lambda_max, g.dlambda);
    const auto minus = free_streaming_inverse(source, points[i] - step, mom, g.lambda_max, g.dlambda);
    applied[i] = (plus.value - minus.value) / (2.0 * g.fd_step);
    value[i] = source(points[i], mom);
    warned[i] = plus.truncation_warning || minus.truncation_warning;
  });

  std::ostringstream csv;
  write_csv_header(csv, {"t", "x1", "x2", "x3", "g", "transport_of_inverse"});
  std::vector<double> err(points.size());
  std::vector<double> norm2(points.size());
  std::uint64_t warnings = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& x = points[i];
    write_csv_row(csv, {x[0], x[1], x[2], x[3], value[i], applied[i]});
    err[i] = (applied[i] - value[i]) * (applied[i] - value[i]);
    norm2[i] = value[i] * value[i];
    warnings += static_cast<std::uint64_t>(warned[i]);
  }
  ctx.artifact("green_roundtrip.csv", csv.str());
  ctx.measure("green truncation warnings", static_cast<double>(warnings));
  ctx.verdict(check_at_most("AC-4", "relative L2 error of transport applied to the inverse",
                            std::sqrt(pairwise_sum(err) / pairwise_sum(norm2)), g.tolerance));
}

void run_nonrelativistic(const EnsembleParams& p, RunContext& ctx) {
  const auto& n = p.nonrelativistic;
  SeededRng rng = SeededRng(ctx.seed(), 0).child(3);
  const VacuumFieldSource field(vacuum::sample_modes(p.transport.k_spacing, p.transport.cutoff, rng));
  std::ostringstream csv;
  write_csv_header(csv, {"speed", "max_relative_deviation", "max_absolute_deviation", "within_regime"});
  for (double speed : {n.speed, 2.0 * n.speed}) {
    const auto r = nonrelativistic_consistency(field, {}, {speed, 0.0, 0.0}, p.mass, n.charge, n.t_span, n.dt);
    write_csv_row(csv, {speed, r.max_relative_deviation, r.max_absolute_deviation,
                        std::string(r.within_regime ? "true" : "false")});
    if (speed == n.speed) ctx.measure("nonrelativistic max relative deviation", r.max_relative_deviation);
  }
  ctx.artifact("nonrelativistic.csv", csv.str());
}

HistogramAxis read_axis(ConfigReader& r) {
  static const std::vector<std::string> names{"x1", "x2", "x3", "p1", "p2", "p3"};
  const auto name = r.choice("coordinate", names);
  HistogramAxis a{};
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) a.coordinate = static_cast<PhaseAxis>(i);
  }
  a.lo = r.real("lo_in_coordinate_units");
  a.hi = r.real("hi_in_coordinate_units");
  if (!(a.hi > a.lo)) throw ConfigError(r.path_of("hi_in_coordinate_units"), "must exceed lo_in_coordinate_units");
  a.bins = r.count("bins", 1);
  return a;
}

}  // namespace

Plan configure_ensemble(ConfigReader& r) {
  EnsembleParams p;
  p.mass = r.positive("mass_in_inverse_length", 1.0);
  r.section("transport", [&](ConfigReader& s) {
    auto& t = p.transport;
    t.trajectories = s.count("trajectories", 1, 10);
    t.charge = s.real("charge_dimensionless", 0.3);
    t.k_spacing = s.positive("k_spacing_in_inverse_length", 1.0);
    t.cutoff = s.positive("cutoff_in_inverse_length", 3.0);
    if (t.cutoff < t.k_spacing) {
      throw ConfigError(s.path_of("cutoff_in_inverse_length"), "must not be below k_spacing_in_inverse_length");
    }
    t.momentum_sigma = to_vec(s.triple("momentum_sigma_in_inverse_length", std::array<double, 3>{0.3, 0.3, 0.3}));
    t.t_span = s.positive("t_span_in_length", 10.0);
    t.dt = s.positive("dt_in_length", 1e-3);
    t.drift_tolerance = s.positive("drift_tolerance", 1e-8);
    t.order_dts = s.reals("order_dts_in_length", 2, std::vector<double>{0.1, 0.05, 0.025});
    for (double v : t.order_dts) {
      if (!(v > 0.0)) throw ConfigError(s.path_of("order_dts_in_length"), "entries must be positive");
    }
    t.min_order = s.real("min_order", 3.8);
    t.record_every = s.count("record_every", 1, 100);
  });
  r.section("histogram", [&](ConfigReader& s) {
    auto& h = p.histogram;
    h.trajectories = s.count("trajectories", 1, 20000);
    h.cloud.position_mean = to_vec(s.triple("position_mean_in_length", std::array<double, 3>{0, 0, 0}));
    h.cloud.position_sigma = to_vec(s.triple("position_sigma_in_length", std::array<double, 3>{0.5, 0.5, 0.5}));
    h.cloud.momentum_mean = to_vec(s.triple("momentum_mean_in_inverse_length", std::array<double, 3>{0.5, 0, 0}));
    h.cloud.momentum_sigma = to_vec(s.triple("momentum_sigma_in_inverse_length", std::array<double, 3>{0.4, 0, 0}));
    int spread = 0;
    for (int a = 0; a < 3; ++a) {
      if (h.cloud.position_sigma[a] < 0.0) throw ConfigError(s.path_of("position_sigma_in_length"), "must be non-negative");
      if (h.cloud.momentum_sigma[a] < 0.0) {
        throw ConfigError(s.path_of("momentum_sigma_in_inverse_length"), "must be non-negative");
      }
      spread += h.cloud.momentum_sigma[a] > 0.0;
    }
    if (spread > 1) {
      throw ConfigError(s.path_of("momentum_sigma_in_inverse_length"),
                        "the characteristics oracle supports spread in at most one component");
    }
    h.t = s.positive("t_in_length", 5.0);
    h.dt = s.positive("dt_in_length", 0.05);
    const Json default_axes = Json::parse(
        R"([{"coordinate":"x1","lo_in_coordinate_units":-2,"hi_in_coordinate_units":6,"bins":16},
            {"coordinate":"p1","lo_in_coordinate_units":-0.8,"hi_in_coordinate_units":1.8,"bins":13}])");
    s.each("axes", 1, default_axes, [&](ConfigReader& a, std::size_t) { h.axes.push_back(read_axis(a)); });
    h.sigma_threshold = s.positive("sigma_threshold", 4.0);
  });
  r.section("green", [&](ConfigReader& s) {
    auto& g = p.green;
    g.momentum = to_vec(s.triple("momentum_in_inverse_length", std::array<double, 3>{0.4, -0.2, 0.1}));
    g.lambda_max = s.positive("lambda_max_in_length", 40.0);
    g.dlambda = s.positive("dlambda_in_length", 0.05);
    g.fd_step = s.positive("fd_step_in_length", 1e-3);
    g.probes = s.count("probes", 1, 64);
    g.probe_extent = s.positive("probe_extent_in_length", 2.0);
    g.source_width = s.positive("source_width_in_length", 1.0);
    g.tolerance = s.positive("tolerance", 1e-3);
  });
  r.section("nonrelativistic", [&](ConfigReader& s) {
    auto& n = p.nonrelativistic;
    n.speed = s.bounded("speed", 0.0, 0.999, 0.01);
    n.charge = s.real("charge_dimensionless", 1e-3);
    n.t_span = s.positive("t_span_in_length", 10.0);
    n.dt = s.positive("dt_in_length", 1e-2);
  });
  return [p](RunContext& ctx) {
    run_transport(p, ctx);
    run_histogram(p, ctx);
    run_green(p, ctx);
    run_nonrelativistic(p, ctx);
  };
}

}  // namespace stochkg::runner
