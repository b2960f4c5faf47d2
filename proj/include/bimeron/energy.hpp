#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "bimeron/grid.hpp"
#include "bimeron/reduce.hpp"

namespace bimeron {

struct EnergySpec {
  double sigma = 0.1;  // in (0, 1/2): the positivity window of the density

  void validate() const {
    if (!(sigma > 0.0 && sigma < 0.5))
      throw std::invalid_argument("EnergySpec: sigma must lie in (0, 1/2)");
  }
};

struct DegreeResult {
  double raw = 0.0;
  int rounded = 0;
  bool reliable = true;  // false when |raw - rounded| > 0.1 (UNRELIABLE_DEGREE)
};

struct EnergyBreakdown {
  double dirichlet = 0.0;
  double anisotropy = 0.0;
  double dmi = 0.0;
  double sigma = 0.0;
  double total = 0.0;  // dirichlet + sigma^2 (anisotropy + dmi)
  double degree_raw = 0.0;
  int degree = 0;
  bool degree_reliable = true;
  double stability_l = 0.0;  // (2D - 8pi)^(-1/2), +inf at or below the bound
};

struct EnergyTerms {
  double dirichlet = 0.0;
  double anisotropy = 0.0;
  double dmi_tilde = 0.0;
};

/// Quadrature weights for a disc mask. Boundary cells carry the fraction of
/// their cell area inside the disc (subsampled); interior cells weigh h^2.
struct DiscMask {
  double radius = 0.0;
  std::vector<double> weight;  // absolute weights, node-major like Field
};

DiscMask make_disc_mask(const GridSpec& grid, double radius, int subsample = 16);

// Quadrature of the energy terms with uniform midpoint weights h^2.
// Derivatives are second-order central in the interior and second-order
// one-sided on the boundary; reductions are deterministic pairwise sums.
double dirichlet(const Field& f);
double anisotropy(const Field& f);
double dmi_tilde(const Field& f);

/// Dirichlet quadrature of arbitrary (not necessarily unit) nodal 3-vector
/// data with the same stencils; used for defect integrals.
double dirichlet_planes(const std::array<std::vector<double>, 3>& comp,
                        const GridSpec& grid);
/// Classical curl form m . (curl m); provided to test the boundary identity
/// relating it to dmi_tilde.
double dmi_curl(const Field& f);

// The same terms restricted to a disc.
double dirichlet(const Field& f, const DiscMask& mask);
double anisotropy(const Field& f, const DiscMask& mask);
double dmi_tilde(const Field& f, const DiscMask& mask);

/// Line integral of (-m3 m2, m3 m1) . n over the grid boundary (trapezoid);
/// the discrete counterpart of the flux difference between the two DMI forms.
double boundary_flux(const Field& f);

/// Topological degree: each grid cell splits into two triangles whose
/// oriented spherical areas are summed via the half-angle tangent formula.
DegreeResult degree(const Field& f);

EnergyBreakdown total_energy(const Field& f, const EnergySpec& spec);

/// Tangent-space L2 gradient density of the discrete total energy: the exact
/// derivative of the quadrature sums (same stencils), divided by the node
/// weight and projected onto the tangent plane at each node.
VectorField gradient(const Field& f, const EnergySpec& spec);

/// The energy recomputed as a sum of squares (plus the m3^2 remainder);
/// equals the three-term form identically and is used as a cross-check.
double convex_form_energy(const Field& f, const EnergySpec& spec);

/// Pointwise pieces of the energy density, for positivity checks:
/// 0.5|grad m|^2, m3^2, and the DMI density 2 m3 (d1 m2 - d2 m1).
struct DensityFields {
  std::vector<double> dirichlet, m3sq, dmi;
};
DensityFields energy_densities(const Field& f);

// ---- streaming measurement of closed-form maps ----
// Rows are evaluated on demand in bands, so grids far larger than memory
// can be integrated. The row evaluator must fill mx, my, mz (length n) with
// unit vectors for grid row i.
using RowEval = std::function<void(int i, double* mx, double* my, double* mz)>;

struct MapMeasurement {
  EnergyTerms terms;
  DegreeResult degree;
};

MapMeasurement measure_rows(const RowEval& eval, const GridSpec& grid);

template <typename MapFn>
MapMeasurement measure_map(MapFn&& map, const GridSpec& grid) {
  const int n = grid.points_per_side;
  RowEval eval = [&](int i, double* mx, double* my, double* mz) {
    const double y = grid.coord(i);
    for (int j = 0; j < n; ++j) {
      const Director d = map(std::complex<double>(grid.coord(j), y));
      const double inv = 1.0 / d.norm();
      mx[j] = d.x * inv;
      my[j] = d.y * inv;
      mz[j] = d.z * inv;
    }
  };
  return measure_rows(eval, grid);
}

/// h^2 -> 0 extrapolation from spacings h and 2h (n must be odd so the
/// coarse grid is the even-index subgrid). Degree is taken from the fine grid.
template <typename MapFn>
MapMeasurement measure_map_richardson(MapFn&& map, const GridSpec& grid) {
  if (grid.points_per_side % 2 == 0)
    throw std::invalid_argument("measure_map_richardson: points_per_side must be odd");
  MapMeasurement fine = measure_map(map, grid);
  const GridSpec coarse_grid{grid.half_width, (grid.points_per_side + 1) / 2};
  MapMeasurement coarse = measure_map(map, coarse_grid);
  MapMeasurement out = fine;
  out.terms.dirichlet = (4.0 * fine.terms.dirichlet - coarse.terms.dirichlet) / 3.0;
  out.terms.anisotropy = (4.0 * fine.terms.anisotropy - coarse.terms.anisotropy) / 3.0;
  out.terms.dmi_tilde = (4.0 * fine.terms.dmi_tilde - coarse.terms.dmi_tilde) / 3.0;
  return out;
}

EnergyBreakdown breakdown_from_terms(const EnergyTerms& terms, const DegreeResult& deg,
                                     double sigma);

}  // namespace bimeron
