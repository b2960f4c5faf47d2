#pragma once

#include <stdexcept>

namespace bimeron {

/// Closed-form values and asymptotic predictions used as quadrature oracles
/// and acceptance baselines. Everything here is an exact function of its
/// parameters; no grids involved.

/// DMI of the conformal map with angles (alpha, beta) over the disc B_R.
double dmi_mobius_ball(double alpha, double beta, double radius);

/// R -> infinity limit of the above: -4 pi cos(alpha) cos^2(2 beta).
double dmi_mobius_limit(double alpha, double beta);

/// Exact anisotropy of the base map over B_L:
/// 2 pi ln(1 + L^2) - 2 pi L^2 / (1 + L^2).
double anisotropy_ball(double l);

/// Truncation-cost model: E <= 4 pi + C1/L^2 + 4 pi sigma^2 (rho^2 ln L - rho cos alpha).
/// C1 is not known in closed form; it is measured from quadrature
/// (competitor::estimate_c1) and defaults to 1 for previews.
struct CompetitorModel {
  double c1 = 1.0;      // > 0
  double sigma = 0.1;   // in (0, 1/2)

  void validate() const {
    if (!(c1 > 0.0)) throw std::invalid_argument("CompetitorModel: c1 must be positive");
    if (!(sigma > 0.0 && sigma < 0.5))
      throw std::invalid_argument("CompetitorModel: sigma must lie in (0, 1/2)");
  }
};

double reduced_energy(const CompetitorModel& model, double alpha, double rho, double l);

/// Main-order optimal scales and the minimal-energy expansions, without
/// their O-remainders. At desk-scale sigma the remainders are not small;
/// consumers treat these as bands, not equalities.
struct AsymptoticPrediction {
  double sigma = 0.0;
  double e_min_upper = 0.0;    // 4pi - pi sigma^2 / ln(sigma^-1 ln(1/sigma))
  double e_min_theorem = 0.0;  // 4pi - 2pi sigma^2 / ln((1/sigma^2) ln^2(1/sigma^2))
  double rho_pred = 0.0;       // 1 / ln(1/sigma^2)
  double rho_l = 0.0;          // 1 / (2 ln L_sigma)
  double l_sigma = 0.0;        // sqrt(2 c1/pi) ln(1/sigma) / sigma
};

AsymptoticPrediction optimal_scales(const CompetitorModel& model);

/// L = (2D - 8pi)^(-1/2); +infinity when D <= 4pi (possible only through
/// discretization error, since 4pi is the conformal bound at degree one).
double stability_scale(double dirichlet);

}  // namespace bimeron
