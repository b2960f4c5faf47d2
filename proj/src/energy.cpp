#include "bimeron/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

namespace bimeron {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// d/dx along a row: central interior, second-order one-sided ends.
void dx_row(const double* f, int n, double inv2h, double* out) {
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (int j = 1; j < n - 1; ++j) out[j] = (f[j + 1] - f[j - 1]) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
}

// d/dy at row i. `win` points at the first stored row (index win_first);
// rows i-2..i+2 needed at the ends must lie inside the window.
void dy_row(const double* win, int win_first, int n, int i, int rows_total,
            double inv2h, double* out) {
  const auto row = [&](int r) { return win + static_cast<std::ptrdiff_t>(r - win_first) * n; };
  if (i == 0) {
    const double *r0 = row(0), *r1 = row(1), *r2 = row(2);
    for (int j = 0; j < n; ++j) out[j] = (-3.0 * r0[j] + 4.0 * r1[j] - r2[j]) * inv2h;
  } else if (i == rows_total - 1) {
    const double *r0 = row(i), *r1 = row(i - 1), *r2 = row(i - 2);
    for (int j = 0; j < n; ++j) out[j] = (3.0 * r0[j] - 4.0 * r1[j] + r2[j]) * inv2h;
  } else {
    const double *up = row(i + 1), *dn = row(i - 1);
    for (int j = 0; j < n; ++j) out[j] = (up[j] - dn[j]) * inv2h;
  }
}

// gather form of the transposed difference operator (adjoint of dx_row),
// valid for every n >= 3; multiply by inv2h at the call site
double diffT_gather(const double* u, int n, int k) {
  double s = 0.0;
  if (k - 1 >= 1 && k - 1 <= n - 2) s += u[k - 1];
  if (k + 1 >= 1 && k + 1 <= n - 2) s -= u[k + 1];
  if (k == 0) s -= 3.0 * u[0];
  else if (k == 1) s += 4.0 * u[0];
  else if (k == 2) s -= u[0];
  if (k == n - 1) s += 3.0 * u[n - 1];
  else if (k == n - 2) s -= 4.0 * u[n - 1];
  else if (k == n - 3) s += u[n - 1];
  return s;
}

struct RowScratch {
  std::vector<double> dx[3], dy[3], acc;
  void resize(int n) {
    for (auto& v : dx) v.resize(n);
    for (auto& v : dy) v.resize(n);
    acc.resize(n);
  }
};

RowScratch& scratch() {
  thread_local RowScratch s;
  return s;
}

// per-row partial sums of the three energy densities
struct RowTerms {
  double dirichlet, anisotropy, dmi;
};

RowTerms row_terms(const double* const win[3], int win_first, int n, int i,
                   int rows_total, double inv2h, const double* mask_row) {
  RowScratch& s = scratch();
  s.resize(n);
  const auto row = [&](int c, int r) {
    return win[c] + static_cast<std::ptrdiff_t>(r - win_first) * n;
  };
  for (int c = 0; c < 3; ++c) {
    dx_row(row(c, i), n, inv2h, s.dx[c].data());
    dy_row(win[c], win_first, n, i, rows_total, inv2h, s.dy[c].data());
  }
  const double* m3 = row(2, i);
  RowTerms out{};
  for (int j = 0; j < n; ++j) {
    double g2 = 0.0;
    for (int c = 0; c < 3; ++c)
      g2 += s.dx[c][j] * s.dx[c][j] + s.dy[c][j] * s.dy[c][j];
    s.acc[j] = 0.5 * g2 * (mask_row ? mask_row[j] : 1.0);
  }
  out.dirichlet = pairwise_sum(s.acc.data(), n);
  for (int j = 0; j < n; ++j)
    s.acc[j] = m3[j] * m3[j] * (mask_row ? mask_row[j] : 1.0);
  out.anisotropy = pairwise_sum(s.acc.data(), n);
  for (int j = 0; j < n; ++j)
    s.acc[j] = 2.0 * m3[j] * (s.dx[1][j] - s.dy[0][j]) * (mask_row ? mask_row[j] : 1.0);
  out.dmi = pairwise_sum(s.acc.data(), n);
  return out;
}

// oriented solid angle of the spherical triangle (a, b, c)
inline double solid_angle(double ax, double ay, double az, double bx, double by,
                          double bz, double cx, double cy, double cz) {
  const double num = ax * (by * cz - bz * cy) + ay * (bz * cx - bx * cz) +
                     az * (bx * cy - by * cx);
  const double den = 1.0 + (ax * bx + ay * by + az * bz) +
                     (bx * cx + by * cy + bz * cz) + (cx * ax + cy * ay + cz * az);
  return 2.0 * std::atan2(num, den);
}

// summed solid angles of the two triangles of every cell between rows i, i+1
double row_solid_angles(const double* const win[3], int win_first, int n, int i) {
  RowScratch& s = scratch();
  s.resize(n);
  const auto row = [&](int c, int r) {
    return win[c] + static_cast<std::ptrdiff_t>(r - win_first) * n;
  };
  const double *x0 = row(0, i), *y0 = row(1, i), *z0 = row(2, i);
  const double *x1 = row(0, i + 1), *y1 = row(1, i + 1), *z1 = row(2, i + 1);
  for (int j = 0; j < n - 1; ++j) {
    // corners a=(i,j) b=(i,j+1) c=(i+1,j+1) d=(i+1,j), counterclockwise
    const double oma = solid_angle(x0[j], y0[j], z0[j], x0[j + 1], y0[j + 1],
                                   z0[j + 1], x1[j + 1], y1[j + 1], z1[j + 1]);
    const double omb = solid_angle(x0[j], y0[j], z0[j], x1[j + 1], y1[j + 1],
                                   z1[j + 1], x1[j], y1[j], z1[j]);
    s.acc[j] = oma + omb;
  }
  return pairwise_sum(s.acc.data(), n - 1);
}

EnergyTerms energy_terms_planes(const double* const win[3], const GridSpec& g,
                                const std::vector<double>* mask) {
  const int n = g.points_per_side;
  const double h = g.spacing();
  const double inv2h = 1.0 / (2.0 * h);
  std::vector<double> rowD(n), rowA(n), rowH(n);
  parallel_for(0, n, [&](int i) {
    const double* mask_row = mask ? mask->data() + static_cast<std::size_t>(i) * n : nullptr;
    const RowTerms t = row_terms(win, 0, n, i, n, inv2h, mask_row);
    rowD[i] = t.dirichlet;
    rowA[i] = t.anisotropy;
    rowH[i] = t.dmi;
  });
  const double scale = mask ? 1.0 : h * h;
  return {pairwise_sum(rowD) * scale, pairwise_sum(rowA) * scale,
          pairwise_sum(rowH) * scale};
}

EnergyTerms energy_terms_impl(const Field& f, const std::vector<double>* mask) {
  const double* win[3] = {f.component(0).data(), f.component(1).data(),
                          f.component(2).data()};
  return energy_terms_planes(win, f.grid(), mask);
}

DegreeResult degree_from_raw(double raw) {
  DegreeResult out;
  out.raw = raw;
  out.rounded = static_cast<int>(std::lround(raw));
  out.reliable = std::abs(raw - out.rounded) <= 0.1;
  return out;
}

}  // namespace

double dirichlet(const Field& f) { return energy_terms_impl(f, nullptr).dirichlet; }

double dirichlet_planes(const std::array<std::vector<double>, 3>& comp,
                        const GridSpec& grid) {
  const double* win[3] = {comp[0].data(), comp[1].data(), comp[2].data()};
  return energy_terms_planes(win, grid, nullptr).dirichlet;
}
double anisotropy(const Field& f) { return energy_terms_impl(f, nullptr).anisotropy; }
double dmi_tilde(const Field& f) { return energy_terms_impl(f, nullptr).dmi_tilde; }

double dirichlet(const Field& f, const DiscMask& mask) {
  return energy_terms_impl(f, &mask.weight).dirichlet;
}
double anisotropy(const Field& f, const DiscMask& mask) {
  return energy_terms_impl(f, &mask.weight).anisotropy;
}
double dmi_tilde(const Field& f, const DiscMask& mask) {
  return energy_terms_impl(f, &mask.weight).dmi_tilde;
}

double dmi_curl(const Field& f) {
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double h = g.spacing();
  const double inv2h = 1.0 / (2.0 * h);
  const double* win[3] = {f.component(0).data(), f.component(1).data(),
                          f.component(2).data()};
  std::vector<double> rows(n);
  parallel_for(0, n, [&](int i) {
    RowScratch& s = scratch();
    s.resize(n);
    const double* m1 = win[0] + static_cast<std::size_t>(i) * n;
    const double* m2 = win[1] + static_cast<std::size_t>(i) * n;
    const double* m3 = win[2] + static_cast<std::size_t>(i) * n;
    dx_row(m2, n, inv2h, s.dx[1].data());
    dx_row(m3, n, inv2h, s.dx[2].data());
    dy_row(win[0], 0, n, i, n, inv2h, s.dy[0].data());
    dy_row(win[2], 0, n, i, n, inv2h, s.dy[2].data());
    for (int j = 0; j < n; ++j)
      s.acc[j] = m1[j] * s.dy[2][j] - m2[j] * s.dx[2][j] +
                 m3[j] * (s.dx[1][j] - s.dy[0][j]);
    rows[i] = pairwise_sum(s.acc.data(), n);
  });
  return pairwise_sum(rows) * h * h;
}

double boundary_flux(const Field& f) {
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double h = g.spacing();
  // flux of V = (-m3 m2, m3 m1); trapezoid along each edge of the square
  auto trapezoid = [&](auto&& value) {
    double s = 0.5 * value(0) + 0.5 * value(n - 1);
    for (int k = 1; k < n - 1; ++k) s += value(k);
    return s * h;
  };
  const double right = trapezoid([&](int i) {
    const Director d = f.at(i, n - 1);
    return -d.z * d.y;  // V . (+e1)
  });
  const double left = trapezoid([&](int i) {
    const Director d = f.at(i, 0);
    return d.z * d.y;  // V . (-e1)
  });
  const double top = trapezoid([&](int j) {
    const Director d = f.at(n - 1, j);
    return d.z * d.x;  // V . (+e2)
  });
  const double bottom = trapezoid([&](int j) {
    const Director d = f.at(0, j);
    return -d.z * d.x;  // V . (-e2)
  });
  return right + left + top + bottom;
}

DegreeResult degree(const Field& f) {
  const int n = f.n();
  const double* win[3] = {f.component(0).data(), f.component(1).data(),
                          f.component(2).data()};
  std::vector<double> rows(n - 1);
  parallel_for(0, n - 1, [&](int i) { rows[i] = row_solid_angles(win, 0, n, i); });
  return degree_from_raw(pairwise_sum(rows) / kFourPi);
}

EnergyBreakdown breakdown_from_terms(const EnergyTerms& terms, const DegreeResult& deg,
                                     double sigma) {
  EnergyBreakdown out;
  out.dirichlet = terms.dirichlet;
  out.anisotropy = terms.anisotropy;
  out.dmi = terms.dmi_tilde;
  out.sigma = sigma;
  out.total = terms.dirichlet + sigma * sigma * (terms.anisotropy + terms.dmi_tilde);
  out.degree_raw = deg.raw;
  out.degree = deg.rounded;
  out.degree_reliable = deg.reliable;
  out.stability_l = 1.0;  // overwritten below
  const double excess = 2.0 * terms.dirichlet - 2.0 * kFourPi;
  out.stability_l = excess > 0.0 ? 1.0 / std::sqrt(excess)
                                 : std::numeric_limits<double>::infinity();
  return out;
}

EnergyBreakdown total_energy(const Field& f, const EnergySpec& spec) {
  spec.validate();
  return breakdown_from_terms(energy_terms_impl(f, nullptr), degree(f), spec.sigma);
}

VectorField gradient(const Field& f, const EnergySpec& spec) {
  spec.validate();
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double h = g.spacing();
  const double inv2h = 1.0 / (2.0 * h);
  const double s2 = spec.sigma * spec.sigma;
  VectorField out(g);

  // uniform weights h^2 cancel against the density normalization, so all
  // sums below are unit-weight
  std::vector<double> plane(g.node_count());
  for (int c = 0; c < 3; ++c) {
    const double* m = f.component(c).data();
    double* gc = out.comp[c].data();
    // x part: row-local adjoint of dx
    parallel_for(0, n, [&](int i) {
      RowScratch& s = scratch();
      s.resize(n);
      dx_row(m + static_cast<std::size_t>(i) * n, n, inv2h, s.dx[0].data());
      double* dst = gc + static_cast<std::size_t>(i) * n;
      for (int k = 0; k < n; ++k)
        dst[k] += inv2h * diffT_gather(s.dx[0].data(), n, k);
    });
    // y part: build the dy plane, then apply the adjoint down each column
    parallel_for(0, n, [&](int i) {
      dy_row(m, 0, n, i, n, inv2h, plane.data() + static_cast<std::size_t>(i) * n);
    });
    parallel_for(0, n, [&](int k) {
      double* dst = gc + static_cast<std::size_t>(k) * n;
      const double* u = plane.data();
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        const auto at = [&](int r) { return u[static_cast<std::size_t>(r) * n + j]; };
        if (k - 1 >= 1 && k - 1 <= n - 2) s += at(k - 1);
        if (k + 1 >= 1 && k + 1 <= n - 2) s -= at(k + 1);
        if (k == 0) s -= 3.0 * at(0);
        else if (k == 1) s += 4.0 * at(0);
        else if (k == 2) s -= at(0);
        if (k == n - 1) s += 3.0 * at(n - 1);
        else if (k == n - 2) s -= 4.0 * at(n - 1);
        else if (k == n - 3) s += at(n - 1);
        dst[j] += inv2h * s;
      }
    });
  }

  // anisotropy + DMI pieces
  const double* m3 = f.component(2).data();
  // plane <- dx m2 - dy m1
  {
    const double* m1 = f.component(0).data();
    const double* m2 = f.component(1).data();
    parallel_for(0, n, [&](int i) {
      RowScratch& s = scratch();
      s.resize(n);
      dx_row(m2 + static_cast<std::size_t>(i) * n, n, inv2h, s.dx[0].data());
      dy_row(m1, 0, n, i, n, inv2h, s.dy[0].data());
      double* dst = plane.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) dst[j] = s.dx[0][j] - s.dy[0][j];
    });
  }
  parallel_for(0, n, [&](int i) {
    double* g3 = out.comp[2].data() + static_cast<std::size_t>(i) * n;
    const double* curl = plane.data() + static_cast<std::size_t>(i) * n;
    const double* z = m3 + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) g3[j] += 2.0 * s2 * (z[j] + curl[j]);
  });
  // d/dm2: adjoint of dx applied to 2 sigma^2 m3 (row-local)
  parallel_for(0, n, [&](int i) {
    const double* z = m3 + static_cast<std::size_t>(i) * n;
    double* g2 = out.comp[1].data() + static_cast<std::size_t>(i) * n;
    for (int k = 0; k < n; ++k)
      g2[k] += 2.0 * s2 * inv2h * diffT_gather(z, n, k);
  });
  // d/dm1: minus adjoint of dy applied to 2 sigma^2 m3 (columnwise)
  parallel_for(0, n, [&](int k) {
    double* g1 = out.comp[0].data() + static_cast<std::size_t>(k) * n;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      const auto at = [&](int r) { return m3[static_cast<std::size_t>(r) * n + j]; };
      if (k - 1 >= 1 && k - 1 <= n - 2) s += at(k - 1);
      if (k + 1 >= 1 && k + 1 <= n - 2) s -= at(k + 1);
      if (k == 0) s -= 3.0 * at(0);
      else if (k == 1) s += 4.0 * at(0);
      else if (k == 2) s -= at(0);
      if (k == n - 1) s += 3.0 * at(n - 1);
      else if (k == n - 2) s -= 4.0 * at(n - 1);
      else if (k == n - 3) s += at(n - 1);
      g1[j] -= 2.0 * s2 * inv2h * s;
    }
  });

  // project to the tangent plane at each node
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const Director m = f.at(i, j);
      const double dot = out.comp[0][k] * m.x + out.comp[1][k] * m.y + out.comp[2][k] * m.z;
      out.comp[0][k] -= dot * m.x;
      out.comp[1][k] -= dot * m.y;
      out.comp[2][k] -= dot * m.z;
    }
  });
  return out;
}

double convex_form_energy(const Field& f, const EnergySpec& spec) {
  spec.validate();
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double h = g.spacing();
  const double inv2h = 1.0 / (2.0 * h);
  const double s2 = spec.sigma * spec.sigma;
  const double* win[3] = {f.component(0).data(), f.component(1).data(),
                          f.component(2).data()};
  std::vector<double> rows(n);
  parallel_for(0, n, [&](int i) {
    RowScratch& s = scratch();
    s.resize(n);
    const auto row = [&](int c) { return win[c] + static_cast<std::size_t>(i) * n; };
    for (int c = 0; c < 3; ++c) {
      dx_row(row(c), n, inv2h, s.dx[c].data());
      dy_row(win[c], 0, n, i, n, inv2h, s.dy[c].data());
    }
    const double* m3 = row(2);
    for (int j = 0; j < n; ++j) {
      const double a = s.dy[0][j] - 2.0 * s2 * m3[j];
      const double b = s.dx[1][j] + 2.0 * s2 * m3[j];
      s.acc[j] = 0.5 * (a * a + b * b + s.dx[0][j] * s.dx[0][j] +
                        s.dy[1][j] * s.dy[1][j] + s.dx[2][j] * s.dx[2][j] +
                        s.dy[2][j] * s.dy[2][j]) +
                 s2 * (1.0 - 4.0 * s2) * m3[j] * m3[j];
    }
    rows[i] = pairwise_sum(s.acc.data(), n);
  });
  return pairwise_sum(rows) * h * h;
}

DensityFields energy_densities(const Field& f) {
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double inv2h = 1.0 / (2.0 * g.spacing());
  const double* win[3] = {f.component(0).data(), f.component(1).data(),
                          f.component(2).data()};
  DensityFields out;
  out.dirichlet.resize(g.node_count());
  out.m3sq.resize(g.node_count());
  out.dmi.resize(g.node_count());
  parallel_for(0, n, [&](int i) {
    RowScratch& s = scratch();
    s.resize(n);
    for (int c = 0; c < 3; ++c) {
      dx_row(win[c] + static_cast<std::size_t>(i) * n, n, inv2h, s.dx[c].data());
      dy_row(win[c], 0, n, i, n, inv2h, s.dy[c].data());
    }
    const double* m3 = win[2] + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      double g2 = 0.0;
      for (int c = 0; c < 3; ++c)
        g2 += s.dx[c][j] * s.dx[c][j] + s.dy[c][j] * s.dy[c][j];
      out.dirichlet[k] = 0.5 * g2;
      out.m3sq[k] = m3[j] * m3[j];
      out.dmi[k] = 2.0 * m3[j] * (s.dx[1][j] - s.dy[0][j]);
    }
  });
  return out;
}

DiscMask make_disc_mask(const GridSpec& grid, double radius, int subsample) {
  grid.validate();
  if (!(radius > 0.0)) throw std::invalid_argument("make_disc_mask: radius must be positive");
  const int n = grid.points_per_side;
  const double h = grid.spacing();
  DiscMask mask;
  mask.radius = radius;
  mask.weight.assign(grid.node_count(), 0.0);
  const double cell = h * h;
  parallel_for(0, n, [&](int i) {
    const double y = grid.coord(i);
    for (int j = 0; j < n; ++j) {
      const double x = grid.coord(j);
      const double r = std::hypot(x, y);
      double w;
      if (r <= radius - h) {
        w = cell;
      } else if (r >= radius + h) {
        w = 0.0;
      } else {
        int count = 0;
        for (int a = 0; a < subsample; ++a) {
          const double oy = y + ((a + 0.5) / subsample - 0.5) * h;
          for (int b = 0; b < subsample; ++b) {
            const double ox = x + ((b + 0.5) / subsample - 0.5) * h;
            if (ox * ox + oy * oy <= radius * radius) ++count;
          }
        }
        w = cell * count / (subsample * subsample);
      }
      mask.weight[static_cast<std::size_t>(i) * n + j] = w;
    }
  });
  return mask;
}

MapMeasurement measure_rows(const RowEval& eval, const GridSpec& grid) {
  grid.validate();
  const int n = grid.points_per_side;
  const double h = grid.spacing();
  const double inv2h = 1.0 / (2.0 * h);
  constexpr int kBand = 128;
  const int bands = (n + kBand - 1) / kBand;
  std::vector<double> rowD(n), rowA(n), rowH(n), rowQ(n - 1);

  parallel_for(0, bands, [&](int b) {
    const int lo = b * kBand;
    const int hi = std::min(n, lo + kBand);
    const int elo = std::max(0, lo - 2);
    const int ehi = std::min(n, hi + 2);
    thread_local std::vector<double> buf[3];
    for (auto& v : buf) v.resize(static_cast<std::size_t>(ehi - elo) * n);
    for (int i = elo; i < ehi; ++i) {
      const std::size_t off = static_cast<std::size_t>(i - elo) * n;
      eval(i, buf[0].data() + off, buf[1].data() + off, buf[2].data() + off);
    }
    const double* win[3] = {buf[0].data(), buf[1].data(), buf[2].data()};
    for (int i = lo; i < hi; ++i) {
      const RowTerms t = row_terms(win, elo, n, i, n, inv2h, nullptr);
      rowD[i] = t.dirichlet;
      rowA[i] = t.anisotropy;
      rowH[i] = t.dmi;
      if (i < n - 1) rowQ[i] = row_solid_angles(win, elo, n, i);
    }
  });

  MapMeasurement out;
  const double cell = h * h;
  out.terms.dirichlet = pairwise_sum(rowD) * cell;
  out.terms.anisotropy = pairwise_sum(rowA) * cell;
  out.terms.dmi_tilde = pairwise_sum(rowH) * cell;
  out.degree = degree_from_raw(pairwise_sum(rowQ) / kFourPi);
  return out;
}

}  // namespace bimeron
