#include "bimeron/mobius_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bimeron/energy.hpp"
#include "bimeron/nelder_mead.hpp"

namespace bimeron {

namespace {

constexpr double kPi = std::numbers::pi;

MobiusParams params_from_vector(const std::vector<double>& p) {
  MobiusParams mp;
  mp.z0 = {p[0], p[1]};
  mp.rho = std::exp(p[2]);
  mp.phi = p[3];
  mp.alpha = p[4];
  mp.beta = p[5];
  return mp;
}

// stride-decimated copy used inside the simplex search; the final defect is
// always re-evaluated on the full grid. n-1 must be divisible by the stride.
Field decimate(const Field& f, int stride) {
  const int n = f.n();
  const int nd = (n - 1) / stride + 1;
  const GridSpec gd{f.grid().half_width, nd};
  Field out(gd);
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j) out.set(i, j, f.at(i * stride, j * stride));
  return out;
}

int pick_stride(int n, int target_side) {
  const int limit = (n - 1) / std::max(1, target_side - 1);
  for (int k = limit; k >= 2; --k)
    if ((n - 1) % k == 0) return k;
  return 1;
}

}  // namespace

double fit_defect(const Field& field, const MobiusParams& params) {
  const GridSpec& g = field.grid();
  const int n = g.points_per_side;
  std::array<std::vector<double>, 3> diff;
  for (auto& v : diff) v.resize(g.node_count());
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const Director psi = mobius_field(params, g.node(i, j));
      const Director m = field.at(i, j);
      diff[0][k] = m.x - psi.x;
      diff[1][k] = m.y - psi.y;
      diff[2][k] = m.z - psi.z;
    }
  });
  // defect integrates |grad(m - Psi)|^2 = 2 x the Dirichlet form
  return 2.0 * dirichlet_planes(diff, g);
}

MobiusParams initial_guess(const Field& field) {
  const GridSpec& g = field.grid();
  const int n = g.points_per_side;
  const DensityFields dens = energy_densities(field);

  double mass = 0.0, cx = 0.0, cy = 0.0, peak = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = dens.dirichlet[static_cast<std::size_t>(i) * n + j];
      mass += w;
      cx += w * g.coord(j);
      cy += w * g.coord(i);
      peak = std::max(peak, w);
    }
  if (peak < 1e-12)
    throw DegenerateDensityError("initial_guess: DEGENERATE_DENSITY, the "
                                 "Dirichlet density vanishes everywhere");
  if (degree(field).rounded != -1)
    throw std::invalid_argument("initial_guess: field must carry degree -1");
  cx /= mass;
  cy /= mass;

  double r2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double w = dens.dirichlet[static_cast<std::size_t>(i) * n + j];
      const double dx = g.coord(j) - cx, dy = g.coord(i) - cy;
      r2 += w * (dx * dx + dy * dy);
    }
  const double rho = std::sqrt(r2 / mass);

  // mean in-plane direction on the boundary ring fixes the corotation angle
  double bx = 0.0, by = 0.0;
  for (int k = 0; k < n; ++k) {
    for (const Director d : {field.at(0, k), field.at(n - 1, k), field.at(k, 0),
                             field.at(k, n - 1)}) {
      bx += d.x;
      by += d.y;
    }
  }
  const double phi = std::atan2(-bx, by);

  MobiusParams guess;
  guess.z0 = {cx, cy};
  guess.rho = rho;
  guess.phi = phi;
  guess.alpha = 0.0;
  guess.beta = 0.0;
  return guess.canonical();
}

FitReport fit(const Field& field, const MobiusParams& guess, double sigma,
              const FitOptions& options) {
  if (!(guess.rho > 0.0))
    throw std::invalid_argument("fit: guess rho must be positive");

  const int stride = pick_stride(field.grid().points_per_side, 801);
  const Field coarse = stride > 1 ? decimate(field, stride) : field;

  const double lnrho0 = std::log(guess.rho);
  const auto objective = [&](const std::vector<double>& p) {
    // soft wall keeps the simplex off absurd scales
    const double excess = std::abs(p[2] - lnrho0) - 3.0;
    const double barrier = excess > 0.0 ? 1e6 * excess * excess : 0.0;
    return fit_defect(coarse, params_from_vector(p)) + barrier;
  };

  const std::vector<double> start{guess.z0.real(), guess.z0.imag(), lnrho0,
                                  guess.phi,       guess.alpha,     guess.beta};
  const double zscale = std::max(field.grid().spacing(), guess.rho / 8.0);
  const std::vector<double> scale{zscale, zscale, 0.15, 0.15, 0.15, 0.05};

  NelderMeadOptions nm;
  nm.max_iters = options.max_iters;
  nm.xatol = options.xatol;
  nm.fatol = options.fatol;
  const NelderMeadResult res = nelder_mead(objective, start, scale, nm);
  if (!res.converged && options.throw_on_nonconverged)
    throw FitNotConvergedError("fit: FIT_NOT_CONVERGED within the simplex cap");

  FitReport report;
  report.params = params_from_vector(res.x).canonical();
  report.defect = fit_defect(field, report.params);
  report.rho_times_log =
      sigma > 0.0 ? report.params.rho * std::log(1.0 / (sigma * sigma))
                  : std::numeric_limits<double>::quiet_NaN();
  report.alpha_abs = std::abs(report.params.alpha);
  report.converged = res.converged;
  report.iterations = res.iterations;
  return report;
}

StabilityCheck stability_check(const Field& field, const FitReport& report) {
  StabilityCheck out;
  out.defect = report.defect;
  out.dirichlet_excess = 2.0 * dirichlet(field) - 8.0 * kPi;
  out.excess_positive = out.dirichlet_excess > 0.0;
  out.ratio = out.excess_positive ? out.defect / out.dirichlet_excess
                                  : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace bimeron
