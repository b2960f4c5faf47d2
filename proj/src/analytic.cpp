#include "bimeron/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bimeron {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
}  // namespace

double dmi_mobius_ball(double alpha, double beta, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("dmi_mobius_ball: radius must be positive");
  const double ca = std::cos(alpha);
  const double c2b = std::cos(2.0 * beta);
  const double s2b = std::sin(2.0 * beta);
  const double r2 = radius * radius;
  const double den = (1.0 + r2) * (1.0 + r2);
  return -kFourPi * (ca * c2b * c2b * r2 * r2 + ca * s2b * (1.0 + s2b) * r2) / den;
}

double dmi_mobius_limit(double alpha, double beta) {
  const double c2b = std::cos(2.0 * beta);
  return -kFourPi * std::cos(alpha) * c2b * c2b;
}

double anisotropy_ball(double l) {
  if (!(l >= 0.0)) throw std::invalid_argument("anisotropy_ball: radius must be nonnegative");
  const double l2 = l * l;
  return 2.0 * kPi * std::log1p(l2) - 2.0 * kPi * l2 / (1.0 + l2);
}

double reduced_energy(const CompetitorModel& model, double alpha, double rho, double l) {
  model.validate();
  if (!(l > 1.0)) throw std::invalid_argument("reduced_energy: truncation L must exceed 1");
  if (!(rho > 0.0)) throw std::invalid_argument("reduced_energy: rho must be positive");
  const double s2 = model.sigma * model.sigma;
  return kFourPi + model.c1 / (l * l) +
         kFourPi * s2 * (rho * rho * std::log(l) - rho * std::cos(alpha));
}

AsymptoticPrediction optimal_scales(const CompetitorModel& model) {
  model.validate();
  const double sigma = model.sigma;
  const double s2 = sigma * sigma;
  const double ln_inv = std::log(1.0 / sigma);

  AsymptoticPrediction out;
  out.sigma = sigma;
  out.l_sigma = std::sqrt(2.0 * model.c1 / kPi) * ln_inv / sigma;
  out.rho_l = 1.0 / (2.0 * std::log(out.l_sigma));
  out.rho_pred = 1.0 / std::log(1.0 / s2);
  out.e_min_upper = kFourPi - kPi * s2 / std::log(ln_inv / sigma);
  const double ln_is2 = std::log(1.0 / s2);
  out.e_min_theorem = kFourPi - 2.0 * kPi * s2 / std::log(ln_is2 * ln_is2 / s2);
  return out;
}

double stability_scale(double dirichlet) {
  const double excess = 2.0 * dirichlet - 8.0 * kPi;
  if (!(excess > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(excess);
}

}  // namespace bimeron
