#include "bimeron/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bimeron/mobius.hpp"

namespace bimeron {

namespace {
constexpr double kPi = std::numbers::pi;

bool near_integer(double x, double tol, long long& out) {
  const double r = std::round(x);
  out = static_cast<long long>(r);
  return std::abs(x - r) <= tol;
}
}  // namespace

Director interpolate(const Field& f, std::complex<double> at) {
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double h = g.spacing();
  const double fx = std::clamp((at.real() + g.half_width) / h, 0.0, double(n - 1));
  const double fy = std::clamp((at.imag() + g.half_width) / h, 0.0, double(n - 1));
  const int j0 = std::min(static_cast<int>(fx), n - 2);
  const int i0 = std::min(static_cast<int>(fy), n - 2);
  const double tx = fx - j0, ty = fy - i0;
  const Director a = f.at(i0, j0), b = f.at(i0, j0 + 1);
  const Director c = f.at(i0 + 1, j0), d = f.at(i0 + 1, j0 + 1);
  const double w00 = (1 - tx) * (1 - ty), w01 = tx * (1 - ty);
  const double w10 = (1 - tx) * ty, w11 = tx * ty;
  return Director::normalized(w00 * a.x + w01 * b.x + w10 * c.x + w11 * d.x,
                              w00 * a.y + w01 * b.y + w10 * c.y + w11 * d.y,
                              w00 * a.z + w01 * b.z + w10 * c.z + w11 * d.z);
}

Field apply_translation(const Field& f, std::complex<double> x0) {
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  const double h = g.spacing();
  Field out(g);
  long long sj = 0, si = 0;
  const bool exact = near_integer(x0.real() / h, 1e-12, sj) &&
                     near_integer(x0.imag() / h, 1e-12, si);
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      if (exact) {
        const int jj = std::clamp<long long>(j - sj, 0, n - 1);
        const int ii = std::clamp<long long>(i - si, 0, n - 1);
        out.set(i, j, f.at(ii, jj));
      } else {
        out.set(i, j, interpolate(f, g.node(i, j) - x0));
      }
    }
  });
  return out;
}

Field apply_dilation(const Field& f, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("apply_dilation: rho must be positive");
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  Field out(g);
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) out.set(i, j, interpolate(f, g.node(i, j) / rho));
  });
  return out;
}

Field apply_corotation(const Field& f, double phi) {
  const GridSpec& g = f.grid();
  const int n = g.points_per_side;
  Field out(g);
  long long quarter = 0;
  const bool exact = near_integer(phi / (kPi / 2.0), 1e-12, quarter);
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      Director v;
      if (exact) {
        // e^{-i phi} (x,y) permutes nodes of the symmetric grid for
        // quarter turns: (x,y) -> (x cos phi + y sin phi, -x sin phi + y cos phi)
        int jj = j, ii = i;
        switch (((quarter % 4) + 4) % 4) {
          case 0: break;
          case 1: jj = i; ii = n - 1 - j; break;           // rotate by -pi/2
          case 2: jj = n - 1 - j; ii = n - 1 - i; break;
          case 3: jj = n - 1 - i; ii = j; break;
        }
        v = f.at(ii, jj);
      } else {
        v = interpolate(f, std::polar(1.0, -phi) * g.node(i, j));
      }
      out.set(i, j, rotate_e3(v, phi));
    }
  });
  return out;
}

Field apply_reflection(const Field& f) {
  Field out(f.grid());
  const int n = f.n();
  parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) out.set(i, j, -f.at(i, j));
  });
  return out;
}

}  // namespace bimeron
