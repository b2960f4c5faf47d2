#include "bimeron/mobius.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bimeron {

namespace {
constexpr double kPi = std::numbers::pi;

// wrap into (-pi, pi]
double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}
}  // namespace

Director stereographic(const ComplexPair& w) {
  const double pp = std::norm(w.p);
  const double qq = std::norm(w.q);
  const double den = pp + qq;
  if (!(den > 0.0))
    throw std::invalid_argument("stereographic: p and q cannot both vanish");
  const Complex pq = w.p * std::conj(w.q);
  return Director::normalized(2.0 * pq.real(), 2.0 * pq.imag(), pp - qq);
}

ComplexPair w_star(Complex z) {
  return {Complex(0.0, 1.0) * (z - 1.0), z + 1.0};
}

ComplexPair w_alpha_beta(Complex z, double alpha, double beta) {
  const ComplexPair w = w_star(std::polar(1.0, -alpha) * z);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const Complex isb(0.0, sb);
  return {cb * w.p + isb * w.q, isb * w.p + cb * w.q};
}

Director rotate_e1(const Director& d, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {d.x, c * d.y - s * d.z, s * d.y + c * d.z};
}

Director rotate_e3(const Director& d, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * d.x - s * d.y, s * d.x + c * d.y, d.z};
}

MobiusParams MobiusParams::canonical() const {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("MobiusParams: rho must be positive");
  MobiusParams out = *this;
  // beta + pi is the same rotation R_{e1,2beta}, so reduce mod pi first
  double beta = std::fmod(out.beta, kPi);
  if (beta <= -kPi / 2.0) beta += kPi;
  if (beta > kPi / 2.0) beta -= kPi;
  double phi = out.phi;
  // a pi/2 shift of beta is the same map with beta negated and phi + pi
  if (beta > kPi / 4.0) {
    beta = kPi / 2.0 - beta;
    phi += kPi;
  } else if (beta < -kPi / 4.0) {
    beta = -kPi / 2.0 - beta;
    phi += kPi;
  }
  // beta = -pi/4 is a fixed point of the flip: that orbit has no
  // representative strictly inside (-pi/4, pi/4] and stays where it is
  out.beta = beta;
  out.phi = wrap_angle(phi);
  out.alpha = wrap_angle(out.alpha);
  return out;
}

bool MobiusParams::is_canonical() const {
  return rho > 0.0 && beta >= -kPi / 4.0 && beta <= kPi / 4.0 &&
         alpha > -kPi && alpha <= kPi && phi > -kPi && phi <= kPi;
}

Director mobius_field(const MobiusParams& params, Complex at) {
  const Complex zeta = std::polar(1.0, -params.phi) * (at - params.z0) / params.rho;
  const ComplexPair w = w_star(std::polar(1.0, -params.alpha) * zeta);
  Director v = stereographic(w);
  v = rotate_e1(v, 2.0 * params.beta);
  return rotate_e3(v, params.phi);
}

}  // namespace bimeron
