#include "bimeron/grid.hpp"

#include <cmath>

namespace bimeron {

void Field::renormalize() {
  const std::size_t count = grid_.node_count();
  double* mx = comp_[0].data();
  double* my = comp_[1].data();
  double* mz = comp_[2].data();
  for (std::size_t k = 0; k < count; ++k) {
    const double inv = 1.0 / std::sqrt(mx[k] * mx[k] + my[k] * my[k] + mz[k] * mz[k]);
    mx[k] *= inv;
    my[k] *= inv;
    mz[k] *= inv;
  }
}

double Field::max_unit_defect() const {
  const std::size_t count = grid_.node_count();
  const double* mx = comp_[0].data();
  const double* my = comp_[1].data();
  const double* mz = comp_[2].data();
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double d =
        std::abs(std::sqrt(mx[k] * mx[k] + my[k] * my[k] + mz[k] * mz[k]) - 1.0);
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace bimeron
