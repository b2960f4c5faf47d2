#include "bimeron/minimizer.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "bimeron/sample.hpp"

namespace bimeron {

namespace {

double weighted_norm(const VectorField& v, double cell) {
  double s = 0.0;
  for (const auto& plane : v.comp)
    for (const double x : plane) s += x * x;
  return std::sqrt(cell * s);
}

double weighted_dot(const VectorField& a, const VectorField& b, double cell) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double* pa = a.comp[c].data();
    const double* pb = b.comp[c].data();
    for (std::size_t k = 0; k < a.comp[c].size(); ++k) s += pa[k] * pb[k];
  }
  return cell * s;
}

Field retract(const Field& m, const VectorField& d, double t) {
  Field out(m.grid());
  const int n = m.n();
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const Director v = m.at(i, j);
      out.set(i, j, Director::normalized(v.x - t * d.comp[0][k],
                                         v.y - t * d.comp[1][k],
                                         v.z - t * d.comp[2][k]));
    }
  });
  return out;
}

// Solves (I - tau Laplacian) u = g with Neumann walls via DCT-II/DCT-III.
// Serial FFTW with FFTW_ESTIMATE plans keeps results bit-reproducible.
class SobolevSolver {
 public:
  SobolevSolver(int n, double h, double tau) : n_(n) {
    buf_ = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    fwd_ = fftw_plan_r2r_2d(n, n, buf_, buf_, FFTW_REDFT10, FFTW_REDFT10,
                            FFTW_ESTIMATE);
    inv_ = fftw_plan_r2r_2d(n, n, buf_, buf_, FFTW_REDFT01, FFTW_REDFT01,
                            FFTW_ESTIMATE);
    den_.resize(static_cast<std::size_t>(n) * n);
    const double norm = 1.0 / (4.0 * static_cast<double>(n) * n);
    for (int i = 0; i < n; ++i) {
      const double li = 2.0 * (1.0 - std::cos(std::numbers::pi * i / n)) / (h * h);
      for (int j = 0; j < n; ++j) {
        const double lj = 2.0 * (1.0 - std::cos(std::numbers::pi * j / n)) / (h * h);
        den_[static_cast<std::size_t>(i) * n + j] = norm / (1.0 + tau * (li + lj));
      }
    }
  }
  ~SobolevSolver() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(buf_);
  }
  SobolevSolver(const SobolevSolver&) = delete;
  SobolevSolver& operator=(const SobolevSolver&) = delete;

  void apply(VectorField& v) const {
    const std::size_t count = static_cast<std::size_t>(n_) * n_;
    for (auto& plane : v.comp) {
      std::copy(plane.begin(), plane.end(), buf_);
      fftw_execute(fwd_);
      for (std::size_t k = 0; k < count; ++k) buf_[k] *= den_[k];
      fftw_execute(inv_);
      std::copy(buf_, buf_ + count, plane.begin());
    }
  }

 private:
  int n_;
  double* buf_;
  fftw_plan fwd_, inv_;
  std::vector<double> den_;
};

void project_tangent(const Field& m, VectorField& v) {
  const int n = m.n();
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const Director d = m.at(i, j);
      const double dot =
          v.comp[0][k] * d.x + v.comp[1][k] * d.y + v.comp[2][k] * d.z;
      v.comp[0][k] -= dot * d.x;
      v.comp[1][k] -= dot * d.y;
      v.comp[2][k] -= dot * d.z;
    }
  });
}

struct MoveResult {
  Field field;
  EnergyTerms terms;
  double energy = 0.0;
  double step_used = 0.0;
  bool degree_lost = false;  // decrease reachable only by leaving the sector
};

double total_of(const EnergyTerms& t, double sigma) {
  return t.dirichlet + sigma * sigma * (t.anisotropy + t.dmi_tilde);
}

EnergyTerms terms_of(const Field& f) {
  return {dirichlet(f), anisotropy(f), dmi_tilde(f)};
}

// Armijo backtracking along -d from m. With the degree guard, a trial that
// meets the decrease condition but flips the rounded degree is rejected like
// an insufficient decrease; if only such trials remain when the step
// underflows, that is a genuine collapse (degree_lost). Throws when the step
// underflows without any acceptable decrease at all.
MoveResult armijo_move(const Field& m, const VectorField& d, double gd,
                       double energy, const EnergySpec& spec,
                       const DescentConfig& cfg, double t0) {
  double t = t0;
  bool saw_degree_flip = false;
  while (true) {
    Field trial = retract(m, d, t);
    const EnergyTerms tt = terms_of(trial);
    const double et = total_of(tt, spec.sigma);
    if (et <= energy - cfg.armijo_c * t * gd) {
      if (!cfg.degree_guard || degree(trial).rounded == -1)
        return {std::move(trial), tt, et, t, false};
      saw_degree_flip = true;
    }
    t *= cfg.backtrack;
    if (t < 1e-14) {
      if (saw_degree_flip) return {Field(m.grid()), {}, energy, 0.0, true};
      throw LineSearchError("line search underflow: no decrease above step 1e-14");
    }
  }
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kGradTol: return "GRAD_TOL";
    case Termination::kMaxIters: return "MAX_ITERS";
    case Termination::kDegreeLost: return "DEGREE_LOST";
  }
  return "UNKNOWN";
}

double pohozaev_residual(const EnergyBreakdown& b) {
  if (b.anisotropy <= 1e-14) return std::numeric_limits<double>::infinity();
  return std::abs(b.dmi + 2.0 * b.anisotropy) / b.anisotropy;
}

std::pair<Field, double> step(const Field& field, const EnergySpec& spec,
                              const DescentConfig& cfg) {
  spec.validate();
  cfg.validate();
  const double h = field.grid().spacing();
  const double cell = h * h;
  VectorField g = gradient(field, spec);
  const double gnorm = weighted_norm(g, cell);
  const EnergyTerms t0 = terms_of(field);
  const double e0 = total_of(t0, spec.sigma);
  if (gnorm <= cfg.grad_tol) return {field, e0};  // already stationary
  const double gd = weighted_dot(g, g, cell);
  const double init_t = cfg.initial_step > 0.0 ? cfg.initial_step : h * h;
  DescentConfig unguarded = cfg;
  unguarded.degree_guard = false;  // a single step has no sector to protect
  MoveResult moved = armijo_move(field, g, gd, e0, spec, unguarded, init_t);
  return {std::move(moved.field), moved.energy};
}

DescentReport minimize(const Field& init, const EnergySpec& spec,
                       const DescentConfig& cfg) {
  spec.validate();
  cfg.validate();
  const DegreeResult q0 = degree(init);
  if (q0.rounded != -1)
    throw std::invalid_argument("minimize: initial field must carry degree -1");

  const GridSpec grid = init.grid();
  const double h = grid.spacing();
  const double cell = h * h;

  std::unique_ptr<SobolevSolver> solver;
  if (cfg.precond_tau > 0.0)
    solver = std::make_unique<SobolevSolver>(grid.points_per_side, h, cfg.precond_tau);

  Field m = init;
  EnergyTerms terms = terms_of(m);
  double energy = total_of(terms, spec.sigma);

  DescentReport report;
  report.energies.push_back(energy);
  report.terminated_by = Termination::kMaxIters;

  double t_next = cfg.initial_step > 0.0 ? cfg.initial_step : h * h;
  const double t_cap = cfg.precond_tau > 0.0 ? 8.0 * cfg.precond_tau : 1.0;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    VectorField g = gradient(m, spec);
    const double gnorm = weighted_norm(g, cell);
    report.grad_norms.push_back(gnorm);
    if (gnorm <= cfg.grad_tol) {
      report.terminated_by = Termination::kGradTol;
      break;
    }

    VectorField d = g;
    if (solver) {
      solver->apply(d);
      project_tangent(m, d);
    }
    const double gd = weighted_dot(g, d, cell);

    MoveResult moved = armijo_move(m, d, gd, energy, spec, cfg, t_next);
    if (moved.degree_lost) {
      report.terminated_by = Termination::kDegreeLost;
      report.iterations = iter + 1;
      break;
    }
    m = std::move(moved.field);
    terms = moved.terms;
    energy = moved.energy;
    report.energies.push_back(energy);
    report.steps.push_back(moved.step_used);
    report.iterations = iter + 1;
    t_next = std::min(moved.step_used * 2.0, t_cap);

    // closed-form optimal dilation of the current shape: the energy is
    // quadratic in the scale, lambda* = -H/(2A); accepted only on decrease
    if (cfg.snap_every > 0 && (iter + 1) % cfg.snap_every == 0 &&
        terms.anisotropy > 1e-14) {
      const double lam = -terms.dmi_tilde / (2.0 * terms.anisotropy);
      if (lam > 0.5 && lam < 2.0) {
        Field snapped = apply_dilation(m, lam);
        const EnergyTerms ts = terms_of(snapped);
        const double es = total_of(ts, spec.sigma);
        const bool degree_ok =
            !cfg.degree_guard || degree(snapped).rounded == -1;
        if (es < energy && degree_ok) {
          m = std::move(snapped);
          terms = ts;
          energy = es;
          report.energies.push_back(energy);
        }
      }
    }
  }

  report.final_energy = breakdown_from_terms(terms, degree(m), spec.sigma);
  report.pohozaev_residual = pohozaev_residual(report.final_energy);
  report.final_field = std::make_shared<Field>(std::move(m));
  return report;
}

}  // namespace bimeron
