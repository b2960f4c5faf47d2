#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bimeron/energy.hpp"
#include "bimeron/grid.hpp"

namespace bimeron {

struct DescentConfig {
  int max_iters = 500;
  double grad_tol = 1e-5;    // weighted tangent norm of the gradient
  double armijo_c = 1e-4;    // sufficient-decrease constant
  double backtrack = 0.5;    // step-shrink factor
  double initial_step = 0.0; // 0 -> h^2 (diffusive scale)
  bool degree_guard = true;  // stop when the rounded degree changes

  // Plain projected descent stalls on the soft dilation mode (curvature
  // ~ sigma^2/2), so production runs smooth the gradient through
  // (I - tau Laplacian)^-1 and periodically take the closed-form optimal
  // dilation. Both moves are Armijo-guarded; energies stay monotone.
  double precond_tau = 0.0;  // 0 -> off; > 0 -> Sobolev smoothing scale tau
  int snap_every = 0;        // 0 -> off; else try a dilation snap every k iterations

  void validate() const {
    if (!(armijo_c > 0.0 && armijo_c < 1.0))
      throw std::invalid_argument("DescentConfig: armijo_c must lie in (0,1)");
    if (!(backtrack > 0.0 && backtrack < 1.0))
      throw std::invalid_argument("DescentConfig: backtrack must lie in (0,1)");
    if (!(grad_tol > 0.0))
      throw std::invalid_argument("DescentConfig: grad_tol must be positive");
    if (max_iters < 0) throw std::invalid_argument("DescentConfig: max_iters < 0");
  }
};

enum class Termination { kGradTol, kMaxIters, kDegreeLost };

const char* to_string(Termination t);

struct DescentReport {
  int iterations = 0;
  std::vector<double> energies;  // E_sigma after every accepted move; non-increasing
  std::vector<double> grad_norms;
  std::vector<double> steps;
  EnergyBreakdown final_energy;
  double pohozaev_residual = 0.0;
  Termination terminated_by = Termination::kMaxIters;
  std::shared_ptr<Field> final_field;  // the field the descent stopped at
};

struct LineSearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |dmi + 2 anisotropy| / anisotropy; scaling criticality of minimizers.
/// Returns +inf when anisotropy <= 1e-14.
double pohozaev_residual(const EnergyBreakdown& breakdown);

/// One tangent-projected descent move with Armijo backtracking and
/// projection retraction. Returns the new field and its energy.
/// Throws LineSearchError when the step underflows below 1e-14.
std::pair<Field, double> step(const Field& field, const EnergySpec& spec,
                              const DescentConfig& cfg);

/// Iterate until the gradient norm falls below grad_tol or max_iters;
/// requires the initial field to carry degree -1.
DescentReport minimize(const Field& init, const EnergySpec& spec,
                       const DescentConfig& cfg);

}  // namespace bimeron
