#pragma once

#include <complex>

#include "bimeron/grid.hpp"
#include "bimeron/reduce.hpp"

namespace bimeron {

/// Evaluate a closed-form map at every grid node. The map is any callable
/// Complex -> Director; values are renormalized (rounding correction only).
template <typename MapFn>
Field sample(MapFn&& map, const GridSpec& grid) {
  grid.validate();
  Field f(grid);
  const int n = grid.points_per_side;
  parallel_for(0, n, [&](int i) {
    const double y = grid.coord(i);
    for (int j = 0; j < n; ++j) {
      Director d = map(std::complex<double>(grid.coord(j), y));
      const double inv = 1.0 / d.norm();
      f.set(i, j, Director{d.x * inv, d.y * inv, d.z * inv});
    }
  });
  return f;
}

/// Symmetry actions on sampled fields. Translations that are integer
/// multiples of the spacing and corotations by multiples of pi/2 are exact
/// index permutations; anything else resamples by bilinear interpolation
/// (clamped at the grid edge) followed by renormalization.
Field apply_translation(const Field& f, std::complex<double> x0);
Field apply_dilation(const Field& f, double rho);
Field apply_corotation(const Field& f, double phi);
Field apply_reflection(const Field& f);

/// Bilinear lookup of the field at an arbitrary point, clamped to the domain.
Director interpolate(const Field& f, std::complex<double> at);

}  // namespace bimeron
