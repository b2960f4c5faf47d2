#pragma once

#include "bimeron/grid.hpp"
#include "bimeron/mobius.hpp"

namespace bimeron {

/// Closest-Mobius-map diagnostics: the fit minimizes the Dirichlet defect
/// integral |grad(m - Psi)|^2 over the chart (z0, rho, phi, alpha, beta),
/// with Psi evaluated analytically at the nodes.
struct FitReport {
  MobiusParams params;         // canonical
  double defect = 0.0;         // quadrature of |grad(m - Psi)|^2
  double rho_times_log = 0.0;  // rho * ln(1/sigma^2); NaN when sigma unknown
  double alpha_abs = 0.0;
  bool converged = true;
  int iterations = 0;
};

struct DegenerateDensityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FitNotConvergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Moment-based starting chart: z0 = centroid of the Dirichlet density,
/// rho = its rms radius, phi from the mean in-plane direction on the
/// boundary ring, alpha = beta = 0. Requires degree -1 and a density above
/// 1e-12 somewhere (DEGENERATE_DENSITY otherwise).
MobiusParams initial_guess(const Field& field);

struct FitOptions {
  int max_iters = 2000;
  double xatol = 1e-7;
  double fatol = 1e-11;
  bool throw_on_nonconverged = false;  // else reported via FitReport::converged
};

/// Derivative-free (Nelder-Mead) minimization of the defect over the chart;
/// rho moves in log scale. Deterministic given the guess. sigma only feeds
/// the rho * ln(1/sigma^2) diagnostic (pass 0 to skip it).
FitReport fit(const Field& field, const MobiusParams& guess, double sigma = 0.0,
              const FitOptions& options = {});

/// Dirichlet defect of the field against one chart point (the fit objective).
double fit_defect(const Field& field, const MobiusParams& params);

/// Stability-scale comparison: defect and Dirichlet excess 2D - 8pi with
/// their ratio; the ratio is reported, not judged (no numeric bound exists).
struct StabilityCheck {
  double defect = 0.0;
  double dirichlet_excess = 0.0;
  double ratio = 0.0;
  bool excess_positive = true;  // false -> ratio is a sentinel (infinity)
};

StabilityCheck stability_check(const Field& field, const FitReport& report);

}  // namespace bimeron
