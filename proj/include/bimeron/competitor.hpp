#pragma once

#include <span>
#include <vector>

#include "bimeron/energy.hpp"
#include "bimeron/grid.hpp"
#include "bimeron/mobius.hpp"

namespace bimeron {

/// Truncated Mobius competitor m_{alpha,rho,L}(z) = Phi(w_*^L(e^{-i alpha} z / rho)).
/// The sampled field is exactly constant outside the disc of radius 2 rho L.
struct CompetitorSpec {
  double alpha = 0.0;
  double rho = 1.0;      // > 0
  double l_trunc = 10.0; // > 1, in the pre-dilation variable

  void validate() const {
    if (!(rho > 0.0)) throw std::invalid_argument("CompetitorSpec: rho must be positive");
    if (!(l_trunc > 1.0))
      throw std::invalid_argument("CompetitorSpec: truncation L must exceed 1");
  }
};

/// C^2 cutoff: 1 on [0,1], 0 on [2,inf), quintic smoothstep in between.
/// Slope stays within [-1.875, 0], inside the admissible [-2, 0].
double cutoff(double r);

/// w_*^L(z) = i - chi(|z|/L) 2i/(z+1), in homogeneous form. Equals w_*(z)
/// bit-for-bit when |z| <= L and the constant i when |z| >= 2L.
ComplexPair truncated_w(Complex z, double l);

/// Pointwise competitor evaluation (no grid).
Director competitor_map(const CompetitorSpec& spec, Complex z);

/// Sample the competitor; rejects grids whose half-width is below 2.5 rho L
/// (the constant collar needed for exact degree and boundary-flux checks).
Field build_competitor(const CompetitorSpec& spec, const GridSpec& grid);

/// Side-by-side record of measured quadrature values against the model
/// main terms 4pi, 4pi rho^2 ln L, -4pi rho cos(alpha).
struct MeasureRecord {
  CompetitorSpec spec;
  double sigma = 0.0;
  EnergyBreakdown measured;
  double model_dirichlet = 0.0;
  double model_anisotropy = 0.0;
  double model_dmi = 0.0;
  double dev_dirichlet = 0.0;  // relative deviations
  double dev_anisotropy = 0.0;
  double dev_dmi = 0.0;
};

/// Grid recipe for competitor measurements. Spacing is given in units of
/// rho (points per core scale); refine enables the h^2 -> 0 extrapolation.
struct MeasureGrid {
  double half_width_mult = 2.5;
  double points_per_rho = 16.0;
  bool richardson = true;
};

MeasureRecord measure_vs_model(const CompetitorSpec& spec, double sigma,
                               const MeasureGrid& grid_policy);

/// Least-squares fit of the Dirichlet excess D - 4pi against 1/L^2.
struct C1Estimate {
  double c1_hat = 0.0;
  double intercept = 0.0;  // absorbs the h^2 quadrature offset
  std::vector<std::pair<double, double>> pairs;  // (L, excess)
  std::vector<double> residuals;                 // relative, per L
  bool ill_fitting = false;  // slope nonpositive or dwarfed by the intercept
};

/// Fit from precomputed (L, excess) pairs. Throws when fewer than 3 values
/// or when the L values span less than one octave (FIT_ILL_CONDITIONED).
C1Estimate fit_c1(std::span<const std::pair<double, double>> pairs);

/// Measure the excesses at rho = 1 for the given truncations, then fit.
C1Estimate estimate_c1(std::span<const double> l_values, const MeasureGrid& grid_policy);

}  // namespace bimeron
