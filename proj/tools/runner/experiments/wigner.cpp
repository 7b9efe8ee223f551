#include <algorithm>
#include <cmath>

#include "../experiments.hpp"
#include "../parallel.hpp"
#include "../wave_config.hpp"
#include "stochkg/core/numeric.hpp"
#include "stochkg/core/random.hpp"
#include "stochkg/wigner/moments.hpp"
#include "stochkg/wigner/no_go.hpp"
#include "stochkg/wigner/transform.hpp"

namespace stochkg::runner {
namespace {

using namespace stochkg::kgwave;
using namespace stochkg::wigner;

const Json default_modes = Json::parse(R"([
  {"mode_numbers": [1, 0, 0], "amplitude_re": 1.0},
  {"mode_numbers": [2, 0, 0], "amplitude_re": 0.3, "amplitude_im": 0.2},
  {"mode_numbers": [-1, 0, 0], "amplitude_re": 0.5}
])");

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

struct Probes {
  double time;
  std::vector<double> x1;
  std::vector<double> z0;
  std::vector<double> z1;
  std::vector<XZPoint> points() const { return xz_points(time, x1, z0, z1); }
};

Probes read_probes(ConfigReader& r) {
  Probes p;
  r.section("probes", [&](ConfigReader& s) {
    p.time = s.real("time_in_length", 0.2);
    p.x1 = s.reals("x1_in_length", 1, std::vector<double>{0.3, 2.1});
    p.z0 = s.reals("z0_in_length", 1, std::vector<double>{0.0, 0.4});
    p.z1 = s.reals("z1_in_length", 1, std::vector<double>{-0.5, 0.7});
  });
  return p;
}

struct WignerParams {
  SpectralWave wave{SpaceTimeGrid::line(1.0, 2), 1.0};
  double beta;
  Probes probes;
  std::vector<double> steps;
  int accuracy;
  double min_order;
  double control_mass;
  double control_ratio;
  FourVector moment_point;
  StencilOptions moment_stencil;
  double divergence_step;
  double sigma_tolerance;
  double identity_tolerance;
  std::vector<double> divergence_tolerances;
  long plane_mode;
  std::uint64_t wigner_x_points;
  std::uint64_t wigner_z_points;
};

double max_entry(const Tensor4c& t, int dim) {
  double m = 0.0;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) m = std::max(m, std::abs(t[a][b]));
  }
  return m;
}

void run_wigner(const WignerParams& p, RunContext& ctx) {
  const ProductDistribution pd(p.wave, p.beta);
  ProductDistribution control(p.wave, p.beta);
  SpectralWave heavy(p.wave.grid(), p.control_mass);
  for (std::size_t i = 0; i < p.wave.positive().size(); ++i) heavy.positive()[i] = p.wave.positive()[i];
  control.add_component(heavy);
  const auto points = p.probes.points();

  std::vector<double> residual(p.steps.size());
  std::vector<double> control_residual(p.steps.size());
  parallel_for(p.steps.size(), ctx.workers(), [&](std::size_t i) {
    residual[i] = max_abs(mixed_derivative_residual(pd, points, p.steps[i], p.accuracy));
    control_residual[i] = max_abs(mixed_derivative_residual(control, points, p.steps[i], p.accuracy));
  });
  std::ostringstream mixed;
  write_csv_header(mixed, {"h", "max_residual", "mixed_mass_control"});
  for (std::size_t i = 0; i < p.steps.size(); ++i) write_csv_row(mixed, {p.steps[i], residual[i], control_residual[i]});
  ctx.artifact("mixed_derivative.csv", mixed.str());
  ctx.verdict(check_at_least("AC-7", "mixed-derivative residual order in h", fitted_order(p.steps, residual),
                             p.min_order));
  ctx.verdict(check_at_least("AC-7", "mixed-mass control residual ratio finest over coarsest",
                             control_residual.back() / control_residual.front(), p.control_ratio));

  const int dim = pd.spacetime_dim();
  const auto d = moment_decomposition(pd, p.moment_point, p.moment_stencil);
  const double scale = std::abs(first_moment(pd, p.moment_point, p.moment_stencil)[0]);
  const double div1 = std::abs(first_moment_divergence(pd, p.moment_point, p.divergence_step, p.moment_stencil));
  const auto d2 = second_moment_divergence(pd, p.moment_point, p.divergence_step, p.moment_stencil);
  double div2 = 0.0;
  for (int mu = 0; mu < dim; ++mu) div2 = std::max(div2, std::abs(d2[mu]));
  double div3 = 0.0;
  for (int nu = 0; nu < dim; ++nu) {
    for (int la = nu; la < dim; ++la) {
      div3 = std::max(div3, std::abs(third_moment_divergence(pd, p.moment_point, nu, la, p.divergence_step,
                                                             p.moment_stencil)));
    }
  }
  std::ostringstream moments;
  write_csv_header(moments, {"mu", "nu", "second", "mean_mean", "log_hessian", "sigma", "identity_residual"});
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      write_csv_row(moments, {std::int64_t{a}, std::int64_t{b}, d.second[a][b].real(),
                              (d.mean[a] * d.mean[b]).real(), d.log_hessian[a][b].real(), d.sigma[a][b].real(),
                              std::abs(d.identity_residual[a][b])});
    }
  }
  ctx.artifact("moments.csv", moments.str());
  ctx.verdict(check_at_most("AC-7", "max |sigma| of the product distribution", max_entry(d.sigma, dim),
                            p.sigma_tolerance));
  ctx.verdict(check_at_most("AC-7", "max second-moment identity residual", max_entry(d.identity_residual, dim),
                            p.identity_tolerance));
  ctx.verdict(check_at_most("AC-7", "first-moment divergence relative to rho <p0>", div1 / scale,
                            p.divergence_tolerances[0]));
  ctx.verdict(check_at_most("AC-7", "second-moment divergence relative to rho <p0>", div2 / scale,
                            p.divergence_tolerances[1]));
  ctx.verdict(check_at_most("AC-7", "third-moment divergence relative to rho <p0>", div3 / scale,
                            p.divergence_tolerances[2]));

  SpectralWave plane(p.wave.grid(), p.wave.mass());
  plane.add_mode({p.plane_mode, 0, 0}, 1.0);
  const ProductDistribution plane_pd(plane, p.beta);
  const double k = p.wave.grid().wavenumber(0, p.wave.grid().spectral_index({p.plane_mode, 0, 0}));
  const auto m1 = first_moment(plane_pd, p.moment_point, {1e-3, 8});
  ctx.measure("plane-wave mean momentum over wave number", m1[1].real() / k);
  ctx.measure("2 beta", 2.0 * p.beta);

  const double length = p.wave.grid().length(0);
  std::vector<double> xs(p.wigner_x_points);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = length * static_cast<double>(i) / static_cast<double>(xs.size());
  const auto table = wigner_transform(pd, p.probes.time, xs, length, {p.wigner_z_points, 0.0});
  std::ostringstream wcsv;
  write_wigner_csv(wcsv, table);
  ctx.artifact("wigner.csv", wcsv.str());
  ctx.measure("wigner max imaginary part", table.max_imaginary);
  ctx.measure("wigner minimum value", *std::min_element(table.values.begin(), table.values.end()));
}

struct NoGoParams {
  SpaceTimeGrid grid = SpaceTimeGrid::line(1.0, 2);
  double mass;
  double beta;
  double time;
  std::uint64_t sets;
  long max_mode;
  double relative_tolerance;
  SpaceTimeGrid shell_grid = SpaceTimeGrid::line(1.0, 2);
  double shell_mass;
  long shell_mode;
  Probes probes;
  double shell_step;
  double shell_tolerance;
};

void run_nogo(const NoGoParams& p, RunContext& ctx) {
  std::vector<NoGoIntegrals> results(p.sets);
  parallel_for(p.sets, ctx.workers(), [&](std::size_t s) {
    SeededRng rng(ctx.seed(), s + 1);
    SpectralWave w(p.grid, p.mass);
    for (long n = -p.max_mode; n <= p.max_mode; ++n) {
      const double re = rng.normal();
      const double im = rng.normal();
      w.add_mode({n, 0, 0}, Complex(re, im));
    }
    results[s] = no_go_integral(w, p.time, p.beta);
  });
  std::ostringstream csv;
  write_csv_header(csv, {"set", "I_grid", "I_spectral", "relative_difference"});
  double worst = 0.0;
  bool negative = true;
  for (std::size_t s = 0; s < results.size(); ++s) {
    const auto& r = results[s];
    const double rel = std::abs(r.grid - r.spectral) / std::abs(r.spectral);
    worst = std::max(worst, rel);
    negative = negative && r.spectral < 0.0 && r.grid < 0.0;
    write_csv_row(csv, {std::uint64_t{s}, r.grid, r.spectral, rel});
  }
  const auto zero = no_go_integral(SpectralWave(p.grid, p.mass), p.time, p.beta);
  write_csv_row(csv, {std::string("zero"), zero.grid, zero.spectral, 0.0});
  ctx.artifact("nogo.csv", csv.str());
  ctx.verdict(check_at_most("AC-8", "grid against spectral integral, max relative difference", worst,
                            p.relative_tolerance));
  ctx.verdict(check_true("AC-8", "integral strictly negative for every nonzero set", negative));
  ctx.verdict(check_true("AC-8", "integral vanishes for the zero wave", zero.grid == 0.0 && zero.spectral == 0.0));

  SpectralWave single(p.shell_grid, p.shell_mass);
  single.add_mode({p.shell_mode, 0, 0}, 1.0);
  const ProductDistribution pd(single, p.beta);
  const auto points = p.probes.points();
  const auto r = mass_shell_residual(pd, points, p.shell_step);
  const double m2 = p.shell_mass * p.shell_mass;
  std::ostringstream shell;
  write_csv_header(shell, {"t", "x1", "z0", "z1", "residual_re", "residual_im", "minus_m2_q_re", "minus_m2_q_im"});
  double shell_worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex expected = -m2 * qtilde(pd, points[i].x, points[i].z);
    shell_worst = std::max(shell_worst, std::abs(r[i] - expected) / std::abs(expected));
    write_csv_row(shell, {points[i].x[0], points[i].x[1], points[i].z[0], points[i].z[1], r[i].real(), r[i].imag(),
                          expected.real(), expected.imag()});
  }
  ctx.artifact("mass_shell.csv", shell.str());
  ctx.verdict(check_at_most("AC-8", "single-mode mass-shell residual against -m^2 Q0, max relative error",
                            shell_worst, p.shell_tolerance));
}

double read_beta(ConfigReader& r) { return r.positive("beta", default_beta); }

}  // namespace

Plan configure_wigner_check(ConfigReader& r) {
  WignerParams p;
  const auto grid = read_line_grid(r, 16.0, 64);
  const double mass = r.positive("mass_in_inverse_length", 1.0);
  p.wave = read_modes(r, grid, mass, default_modes);
  p.beta = read_beta(r);
  p.probes = read_probes(r);
  p.steps = r.reals("steps_in_length", 2, std::vector<double>{0.04, 0.02, 0.01});
  for (double h : p.steps) {
    if (!(h > 0.0)) throw ConfigError(r.path_of("steps_in_length"), "entries must be positive");
  }
  p.accuracy = static_cast<int>(r.count("stencil_accuracy", 2, 2));
  if (p.accuracy % 2 != 0 || p.accuracy > 8) {
    throw ConfigError(r.path_of("stencil_accuracy"), "must be 2, 4, 6 or 8");
  }
  p.min_order = r.real("min_order", 1.9);
  p.control_mass = r.positive("control_mass_in_inverse_length", 2.5);
  if (p.control_mass == mass) {
    throw ConfigError(r.path_of("control_mass_in_inverse_length"), "must differ from mass_in_inverse_length");
  }
  p.control_ratio = r.positive("control_min_ratio", 0.5);
  r.section("moments", [&](ConfigReader& s) {
    const auto x = s.reals("point_in_length", 2, std::vector<double>{0.3, 1.7});
    if (x.size() != 2) throw ConfigError(s.path_of("point_in_length"), "expected (t, x1)");
    p.moment_point = {x[0], x[1], 0.0, 0.0};
    p.moment_stencil.h = s.positive("step_in_length", 0.01);
    p.moment_stencil.accuracy = static_cast<int>(s.count("stencil_accuracy", 2, 4));
    if (p.moment_stencil.accuracy % 2 != 0 || p.moment_stencil.accuracy > 8) {
      throw ConfigError(s.path_of("stencil_accuracy"), "must be 2, 4, 6 or 8");
    }
    p.divergence_step = s.positive("divergence_step_in_length", 1e-3);
    p.sigma_tolerance = s.positive("sigma_tolerance", 1e-5);
    p.identity_tolerance = s.positive("identity_tolerance", 1e-5);
    p.divergence_tolerances = s.reals("divergence_tolerances", 3, std::vector<double>{1e-5, 1e-4, 1e-3});
    if (p.divergence_tolerances.size() != 3) {
      throw ConfigError(s.path_of("divergence_tolerances"), "expected one tolerance per moment order");
    }
  });
  p.plane_mode = r.mode_numbers("plane_wave_mode_numbers", std::array<long, 3>{3, 0, 0})[0];
  r.section("transform", [&](ConfigReader& s) {
    p.wigner_x_points = s.count("x_points", 1, 16);
    p.wigner_z_points = s.count("z_points", 2, 256);
    if (p.wigner_z_points % 2 != 0) throw ConfigError(s.path_of("z_points"), "must be even");
  });
  return [p](RunContext& ctx) { run_wigner(p, ctx); };
}

Plan configure_mass_shell_nogo(ConfigReader& r) {
  NoGoParams p;
  p.grid = read_line_grid(r, 12.0, 64);
  p.mass = r.positive("mass_in_inverse_length", 0.9);
  p.beta = read_beta(r);
  p.time = r.real("time_in_length", 0.7);
  p.sets = r.count("random_sets", 1, 10);
  p.max_mode = static_cast<long>(r.count("max_mode_number", 1, 20));
  if (p.max_mode >= static_cast<long>(p.grid.points(0) / 2)) {
    throw ConfigError(r.path_of("max_mode_number"), "must stay below the Nyquist mode points / 2");
  }
  p.relative_tolerance = r.positive("relative_tolerance", 1e-6);
  r.section("single_mode", [&](ConfigReader& s) {
    p.shell_grid = read_line_grid(s, 10.0, 32);
    p.shell_mass = s.positive("mass_in_inverse_length", 1.3);
    p.shell_mode = s.mode_numbers("mode_numbers", std::array<long, 3>{2, 0, 0})[0];
    p.probes = read_probes(s);
    p.shell_step = s.positive("step_in_length", 0.05);
    p.shell_tolerance = s.positive("tolerance", 1e-10);
  });
  return [p](RunContext& ctx) { run_nogo(p, ctx); };
}

}  // namespace stochkg::runner
