#include "stochkg/madelung/madelung.hpp"

#include <algorithm>
#include <cmath>

#include "stochkg/core/numeric.hpp"
#include "stochkg/core/text_format.hpp"

namespace stochkg::madelung {

using kgwave::GridField;

double MadelungField::mask_fraction() const {
  if (mask.empty()) return 0.0;
  std::size_t masked = 0;
  for (auto m : mask) masked += m;
  return static_cast<double>(masked) / static_cast<double>(mask.size());
}

void MadelungField::scale_velocity(int mu, double factor) {
  for (auto& level : u_levels) {
    for (auto& v : level[mu]) v *= factor;
  }
}

namespace {

std::vector<double> density(const GridField& f) {
  std::vector<double> rho(f.values.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(f.values[i]);
  return rho;
}

Components momentum_field(const std::vector<GridField>& levels, std::size_t centre, double dt,
                          double floor) {
  const GridField& f = levels[centre];
  const auto& grid = f.grid;
  const std::size_t n = grid.size();
  Components u;
  for (auto& c : u) c.assign(n, 0.0);

  std::vector<Complex> dt_psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    dt_psi[i] = (levels[centre + 1].values[i] - levels[centre - 1].values[i]) / (2.0 * dt);
  }
  std::array<std::vector<Complex>, 3> grad;
  for (int a = 0; a < grid.dim(); ++a) {
    grad[a] = derivative(grid, f.values, a, DerivativeScheme::spectral);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = std::norm(f.values[i]);
    if (rho < floor) continue;
    const Complex conj = std::conj(f.values[i]);
    u[0][i] = -(conj * dt_psi[i]).imag() / rho;
    for (int a = 0; a < grid.dim(); ++a) u[a + 1][i] = (conj * grad[a][i]).imag() / rho;
  }
  return u;
}

void require_mask_coverage(const MadelungField& mf) {
  if (mf.mask_fraction() >= 0.5) {
    throw std::invalid_argument("madelung: mask covers half of the grid or more");
  }
}

ResidualField masked(const MadelungField& mf) {
  return {std::vector<double>(mf.grid.size(), 0.0), mf.mask};
}

struct DensityDerivatives {
  std::vector<double> box;     // d_t^2 rho - laplacian rho
  std::vector<double> square;  // (d_t rho)^2 - |grad rho|^2
};

DensityDerivatives density_derivatives(const MadelungField& mf) {
  const auto& grid = mf.grid;
  const std::size_t n = grid.size();
  const auto& [lo, mid, hi] = mf.rho_levels;
  const auto lap = laplacian(grid, std::span<const double>(mid), DerivativeScheme::spectral);
  std::array<std::vector<double>, 3> grad;
  for (int a = 0; a < grid.dim(); ++a) {
    grad[a] = derivative(grid, std::span<const double>(mid), a, DerivativeScheme::spectral);
  }
  DensityDerivatives d{std::vector<double>(n), std::vector<double>(n)};
  const double dt2 = mf.dt * mf.dt;
  for (std::size_t i = 0; i < n; ++i) {
    const double rt = (hi[i] - lo[i]) / (2.0 * mf.dt);
    const double rtt = (hi[i] - 2.0 * mid[i] + lo[i]) / dt2;
    double g2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) g2 += grad[a][i] * grad[a][i];
    d.box[i] = rtt - lap[i];
    d.square[i] = rt * rt - g2;
  }
  return d;
}

double minkowski_square(const Components& u, std::size_t i) {
  return u[0][i] * u[0][i] - u[1][i] * u[1][i] - u[2][i] * u[2][i] - u[3][i] * u[3][i];
}

}  // namespace

MadelungField decompose(const std::vector<GridField>& levels, double mass,
                        double rho_floor_fraction) {
  if (levels.size() != 3 && levels.size() != 5) {
    throw std::invalid_argument("decompose: need 3 or 5 time levels");
  }
  const double dt = levels[1].time - levels[0].time;
  if (!(dt > 0.0)) throw std::invalid_argument("decompose: time levels must increase");
  for (std::size_t j = 1; j < levels.size(); ++j) {
    if (!(levels[j].grid == levels[0].grid)) {
      throw std::invalid_argument("decompose: time levels live on different grids");
    }
    if (std::abs(levels[j].time - levels[j - 1].time - dt) > 1e-9 * dt) {
      throw std::invalid_argument("decompose: time levels must be equally spaced");
    }
  }

  const std::size_t c = levels.size() / 2;
  MadelungField mf;
  mf.grid = levels[c].grid;
  mf.time = levels[c].time;
  mf.dt = dt;
  mf.mass = mass;
  for (int j = 0; j < 3; ++j) mf.rho_levels[j] = density(levels[c - 1 + j]);

  const double peak = *std::max_element(mf.rho().begin(), mf.rho().end());
  if (!(peak > 0.0)) throw EmptyFieldError("decompose: the wave vanishes identically");
  mf.rho_floor = rho_floor_fraction * peak;

  mf.mask.resize(mf.grid.size());
  for (std::size_t i = 0; i < mf.mask.size(); ++i) mf.mask[i] = mf.rho()[i] < mf.rho_floor ? 1 : 0;

  if (levels.size() == 5) {
    for (std::size_t l = 1; l <= 3; ++l) mf.u_levels.push_back(momentum_field(levels, l, dt, mf.rho_floor));
  } else {
    mf.u_levels.push_back(momentum_field(levels, 1, dt, mf.rho_floor));
  }
  return mf;
}

std::vector<GridField> time_levels(const kgwave::SpectralWave& w, double t, double dt,
                                   int half_width) {
  std::vector<GridField> out;
  for (int j = -half_width; j <= half_width; ++j) out.push_back(kgwave::synthesize(w, t + j * dt));
  return out;
}

double weighted_l2(const ResidualField& r, const std::vector<double>& rho) {
  std::vector<double> num;
  std::vector<double> den;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!r.mask.empty() && r.mask[i]) continue;
    num.push_back(rho[i] * r.values[i] * r.values[i]);
    den.push_back(rho[i]);
  }
  const double d = pairwise_sum(den);
  return d > 0.0 ? std::sqrt(pairwise_sum(num) / d) : 0.0;
}

double max_abs(const ResidualField& r) {
  double m = 0.0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!r.mask.empty() && r.mask[i]) continue;
    m = std::max(m, std::abs(r.values[i]));
  }
  return m;
}

ResidualField continuity_residual(const MadelungField& mf) {
  require_mask_coverage(mf);
  if (mf.u_levels.size() != 3) {
    throw std::invalid_argument("continuity_residual: decompose needs five time levels");
  }
  const auto& grid = mf.grid;
  const std::size_t n = grid.size();
  ResidualField r = masked(mf);

  for (std::size_t i = 0; i < n; ++i) {
    const double n_hi = mf.rho_levels[2][i] * mf.u_levels[2][0][i];
    const double n_lo = mf.rho_levels[0][i] * mf.u_levels[0][0][i];
    r.values[i] = (n_hi - n_lo) / (2.0 * mf.dt);
  }
  for (int a = 0; a < grid.dim(); ++a) {
    std::vector<double> flux(n);
    for (std::size_t i = 0; i < n; ++i) flux[i] = mf.rho()[i] * mf.u()[a + 1][i];
    const auto div = derivative(grid, std::span<const double>(flux), a, DerivativeScheme::spectral);
    for (std::size_t i = 0; i < n; ++i) r.values[i] += div[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (r.mask[i]) r.values[i] = 0.0;
  }
  return r;
}

HjForm parse_hj_form(std::string_view tag) {
  if (tag == "half_kinetic") return HjForm::half_kinetic;
  if (tag == "canonical") return HjForm::canonical;
  throw std::invalid_argument("unknown Hamilton-Jacobi form '" + std::string(tag) + "'");
}

const char* hj_form_name(HjForm form) { return form == HjForm::half_kinetic ? "half_kinetic" : "canonical"; }

ResidualField quantum_potential(const MadelungField& mf) {
  const auto d = density_derivatives(mf);
  ResidualField q = masked(mf);
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    if (q.mask[i]) continue;
    const double rho = mf.rho()[i];
    q.values[i] = 0.5 * d.box[i] / rho - 0.25 * d.square[i] / (rho * rho);
  }
  return q;
}

ResidualField hj_residual(const MadelungField& mf, double beta_sq, HjForm form) {
  require_mask_coverage(mf);
  const auto d = density_derivatives(mf);
  const double m2 = mf.mass * mf.mass;
  ResidualField r = masked(mf);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.mask[i]) continue;
    const double rho = mf.rho()[i];
    const double uu = minkowski_square(mf.u(), i);
    if (form == HjForm::canonical) {
      const double q = 0.5 * d.box[i] / rho - 0.25 * d.square[i] / (rho * rho);
      r.values[i] = uu - m2 - 2.0 * beta_sq * q;
    } else {
      r.values[i] = 0.5 * uu + 0.5 * beta_sq * d.square[i] / (rho * rho) - beta_sq * d.box[i] / rho - m2;
    }
  }
  return r;
}

BetaFit fit_beta_sq(const MadelungField& mf, double regressor_tolerance) {
  require_mask_coverage(mf);
  const ResidualField q = quantum_potential(mf);
  const double m2 = mf.mass * mf.mass;
  std::vector<double> wxx, wxy, wyy, w;
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    if (q.mask[i]) continue;
    const double rho = mf.rho()[i];
    const double x = q.values[i];
    const double y = minkowski_square(mf.u(), i) - m2;
    w.push_back(rho);
    wxx.push_back(rho * x * x);
    wxy.push_back(rho * x * y);
    wyy.push_back(rho * y * y);
  }
  const double sw = pairwise_sum(w);
  const double sxx = pairwise_sum(wxx);
  const double sxy = pairwise_sum(wxy);
  const double syy = pairwise_sum(wyy);
  const double scale = m2 > 0.0 ? m2 : 1.0;
  if (!(sw > 0.0) || std::sqrt(sxx / sw) < regressor_tolerance * scale) {
    throw IllPosedFit("fit_beta_sq: quantum potential is numerically zero");
  }
  const double slope = sxy / sxx;
  BetaFit fit;
  fit.points = w.size();
  fit.beta_sq = 0.5 * slope;
  // Weighted residual variance with n - 1 effective degrees of freedom.
  const double rss = std::max(0.0, syy - slope * sxy);
  const double dof = fit.points > 1 ? static_cast<double>(fit.points - 1) : 1.0;
  fit.standard_error = 0.5 * std::sqrt(rss / dof / sxx);
  return fit;
}

void write_residual_csv_header(std::ostream& out) {
  write_csv_header(out, {"points", "dt", "form", "beta_sq", "l2_residual", "linf_residual"});
}

void write_residual_csv_row(std::ostream& out, std::size_t points, double dt, std::string_view form,
                            double beta_sq, double l2, double linf) {
  write_csv_row(out, {static_cast<std::uint64_t>(points), dt, std::string(form), beta_sq, l2, linf});
}

}  // namespace stochkg::madelung
