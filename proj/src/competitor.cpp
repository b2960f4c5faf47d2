#include "bimeron/competitor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bimeron/sample.hpp"

namespace bimeron {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;

GridSpec measurement_grid(const CompetitorSpec& spec, const MeasureGrid& policy) {
  const double half_width = policy.half_width_mult * spec.rho * spec.l_trunc;
  const double h_target = spec.rho / policy.points_per_rho;
  int n = static_cast<int>(std::ceil(2.0 * half_width / h_target)) + 1;
  if (n % 2 == 0) ++n;  // odd n so the coarse Richardson grid is a subgrid
  return GridSpec{half_width, n};
}
}  // namespace

double cutoff(double r) {
  if (r < 0.0) throw std::invalid_argument("cutoff: r must be nonnegative");
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double s = r - 1.0;
  return 1.0 - s * s * s * (6.0 * s * s - 15.0 * s + 10.0);
}

ComplexPair truncated_w(Complex z, double l) {
  if (!(l > 1.0)) throw std::invalid_argument("truncated_w: truncation L must exceed 1");
  const double r = std::abs(z) / l;
  const Complex q = z + 1.0;
  if (r <= 1.0) return w_star(z);  // plateau: identical to the untruncated map
  const Complex i(0.0, 1.0);
  if (r >= 2.0) return {i, {1.0, 0.0}};
  const double chi = cutoff(r);
  // w = i - chi 2i/(z+1)  ->  p = i (z+1) - 2i chi, q = z+1
  return {i * q - 2.0 * i * chi, q};
}

Director competitor_map(const CompetitorSpec& spec, Complex z) {
  const Complex zeta = std::polar(1.0, -spec.alpha) * z / spec.rho;
  return stereographic(truncated_w(zeta, spec.l_trunc));
}

Field build_competitor(const CompetitorSpec& spec, const GridSpec& grid) {
  spec.validate();
  grid.validate();
  const double needed = 2.5 * spec.rho * spec.l_trunc;
  if (grid.half_width < needed * (1.0 - 1e-12))
    throw std::invalid_argument(
        "build_competitor: grid half-width below 2.5 rho L; the support of "
        "variation does not fit");
  return sample([&](Complex z) { return competitor_map(spec, z); }, grid);
}

MeasureRecord measure_vs_model(const CompetitorSpec& spec, double sigma,
                               const MeasureGrid& policy) {
  spec.validate();
  const GridSpec grid = measurement_grid(spec, policy);
  const auto map = [&](Complex z) { return competitor_map(spec, z); };
  const MapMeasurement meas = policy.richardson
                                  ? measure_map_richardson(map, grid)
                                  : measure_map(map, grid);
  MeasureRecord rec;
  rec.spec = spec;
  rec.sigma = sigma;
  rec.measured = breakdown_from_terms(meas.terms, meas.degree, sigma);
  rec.model_dirichlet = kFourPi;
  rec.model_anisotropy = kFourPi * spec.rho * spec.rho * std::log(spec.l_trunc);
  rec.model_dmi = -kFourPi * spec.rho * std::cos(spec.alpha);
  rec.dev_dirichlet = (rec.measured.dirichlet - rec.model_dirichlet) / kFourPi;
  rec.dev_anisotropy =
      (rec.measured.anisotropy - rec.model_anisotropy) / rec.model_anisotropy;
  rec.dev_dmi = rec.model_dmi != 0.0
                    ? (rec.measured.dmi - rec.model_dmi) / std::abs(rec.model_dmi)
                    : rec.measured.dmi;
  return rec;
}

C1Estimate fit_c1(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3)
    throw std::invalid_argument("fit_c1: need at least 3 truncation values");
  double lmin = pairs[0].first, lmax = pairs[0].first;
  for (const auto& [l, _] : pairs) {
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
  }
  if (!(lmax >= 2.0 * lmin))
    throw std::invalid_argument("fit_c1: FIT_ILL_CONDITIONED, truncations span "
                                "less than one octave");

  // affine least squares of excess against x = 1/L^2; the intercept soaks up
  // the L-independent quadrature bias
  const std::size_t m = pairs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [l, y] : pairs) {
    const double x = 1.0 / (l * l);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / det;
  const double intercept = (sxx * sy - sx * sxy) / det;

  C1Estimate est;
  est.c1_hat = slope;
  est.intercept = intercept;
  est.pairs.assign(pairs.begin(), pairs.end());
  est.residuals.reserve(m);
  for (const auto& [l, y] : pairs) {
    const double fit = slope / (l * l) + intercept;
    est.residuals.push_back(y != 0.0 ? (y - fit) / y : y - fit);
  }
  // the model is a pure 1/L^2 cost; a fit dominated by its intercept (or a
  // nonpositive slope) means the data do not follow it
  est.ill_fitting =
      !(slope > 0.0) || std::abs(intercept) > 0.5 * std::abs(slope) * sx / m;
  return est;
}

C1Estimate estimate_c1(std::span<const double> l_values, const MeasureGrid& policy) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(l_values.size());
  for (const double l : l_values) {
    const CompetitorSpec spec{0.0, 1.0, l};
    spec.validate();
    const GridSpec grid = measurement_grid(spec, policy);
    const auto map = [&](Complex z) { return competitor_map(spec, z); };
    const MapMeasurement meas = policy.richardson
                                    ? measure_map_richardson(map, grid)
                                    : measure_map(map, grid);
    pairs.emplace_back(l, meas.terms.dirichlet - kFourPi);
  }
  return fit_c1(pairs);
}

}  // namespace bimeron
