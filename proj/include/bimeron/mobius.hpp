#pragma once

#include <complex>

#include "bimeron/grid.hpp"

namespace bimeron {

using Complex = std::complex<double>;

/// Homogeneous representation of an extended-complex value w = p/q.
/// Keeps Mobius evaluation finite through poles (q = 0 encodes w = infinity).
struct ComplexPair {
  Complex p{0.0, 0.0};
  Complex q{1.0, 0.0};
};

/// Inverse stereographic projection of w = p/q onto S^2.
/// Maps 0 to the south pole (0,0,-1) and infinity to the north pole.
Director stereographic(const ComplexPair& w);

/// The degree -1 base map w_*(z) = i(z-1)/(z+1): vortex at z = 1,
/// antivortex (pole) at z = -1.
ComplexPair w_star(Complex z);

/// w^[alpha,beta]: w_* precomposed with rotation by -alpha and pushed through
/// the one-parameter twist that realizes R_{e1,2*beta} on the sphere.
ComplexPair w_alpha_beta(Complex z, double alpha, double beta);

/// Five-parameter chart of the Mobius group (plus the 2d translation z0):
/// translation z0, dilation rho, corotation phi, and the base-map angles
/// (alpha, beta). Canonical ranges: alpha, phi in (-pi, pi], beta in
/// (-pi/4, pi/4].
struct MobiusParams {
  Complex z0{0.0, 0.0};
  double rho = 1.0;
  double phi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  /// Reduce to canonical ranges. A beta shift by pi/2 lands on the same map
  /// via (alpha, beta, phi) -> (alpha, -beta, phi + pi), so reduction walks
  /// beta into (-pi/4, pi/4] while compensating phi.
  MobiusParams canonical() const;
  bool is_canonical() const;
};

/// Rotation about e1 by angle theta applied to a director.
Director rotate_e1(const Director& d, double theta);
/// Rotation about e3 by angle theta applied to a director.
Director rotate_e3(const Director& d, double theta);

/// Evaluate the chart map T_{z0} D_rho R_phi [ R_{e1,2beta} Phi(w_*(e^{-i alpha} .)) ]
/// at a point of the plane.
Director mobius_field(const MobiusParams& params, Complex at);

}  // namespace bimeron
