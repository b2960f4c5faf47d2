#include "bimeron/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bimeron {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& start,
                             const std::vector<double>& initial_scale,
                             const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> pts(dim + 1, start);
  for (std::size_t k = 0; k < dim; ++k) pts[k + 1][k] += initial_scale[k];
  std::vector<double> vals(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) vals[k] = objective(pts[k]);

  std::vector<std::size_t> order(dim + 1);
  NelderMeadResult result;

  for (int iter = 0; iter < options.max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[dim], second = order[dim - 1];

    // convergence: simplex extent and value spread
    double extent = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double lo = pts[order[0]][k], hi = lo;
      for (std::size_t v = 1; v <= dim; ++v) {
        lo = std::min(lo, pts[order[v]][k]);
        hi = std::max(hi, pts[order[v]][k]);
      }
      extent = std::max(extent, hi - lo);
    }
    if (extent <= options.xatol && vals[worst] - vals[best] <= options.fatol) {
      result.converged = true;
      result.iterations = iter;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[v][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto blend = [&](double coeff) {
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k)
        p[k] = centroid[k] + coeff * (centroid[k] - pts[worst][k]);
      return p;
    };

    std::vector<double> refl = blend(kReflect);
    const double f_refl = objective(refl);
    if (f_refl < vals[best]) {
      std::vector<double> exp_pt = blend(kExpand);
      const double f_exp = objective(exp_pt);
      if (f_exp < f_refl) {
        pts[worst] = std::move(exp_pt);
        vals[worst] = f_exp;
      } else {
        pts[worst] = std::move(refl);
        vals[worst] = f_refl;
      }
      continue;
    }
    if (f_refl < vals[second]) {
      pts[worst] = std::move(refl);
      vals[worst] = f_refl;
      continue;
    }
    // contraction (outside when the reflection improved on the worst)
    const bool outside = f_refl < vals[worst];
    std::vector<double> contr = blend(outside ? kContract : -kContract);
    const double f_contr = objective(contr);
    if (f_contr < std::min(f_refl, vals[worst])) {
      pts[worst] = std::move(contr);
      vals[worst] = f_contr;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == best) continue;
      for (std::size_t k = 0; k < dim; ++k)
        pts[v][k] = pts[best][k] + kShrink * (pts[v][k] - pts[best][k]);
      vals[v] = objective(pts[v]);
    }
  }

  std::size_t arg = 0;
  for (std::size_t v = 1; v <= dim; ++v)
    if (vals[v] < vals[arg]) arg = v;
  result.x = pts[arg];
  result.value = vals[arg];
  if (!result.converged) result.iterations = options.max_iters;
  return result;
}

}  // namespace bimeron
