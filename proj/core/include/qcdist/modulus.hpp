#pragma once

#include "qcdist/unit_radius.hpp"

namespace qcdist {

/// Modulus of the plane ring domain B \ [0,r]: mu(r) = (pi/2) K'(r)/K(r).
/// Strictly decreasing homeomorphism of (0,1) onto (0,inf).
double mu(const UnitRadius& r);

/// d mu/dr = -pi^2 / (4 r r'^2 K(r)^2), always negative on (0,1).
double mu_derivative(const UnitRadius& r);

/// Inverse of mu: the unique r in (0,1) with mu(r) = y, for y > 0.
///
/// Mid-range values are solved by safeguarded Newton inside a closed-form
/// bracket; y < pi/2 reduces through mu(r) mu(r') = pi^2/4, and y >= 300
/// uses r = 4 e^{-y} (the next correction is below 1 ulp there).
UnitRadius mu_inverse(double y);

/// m(r) = (2/pi) r'^2 K(r) K'(r) and its derivative 1/r - (4/(pi r)) E'(r) K(r).
struct MValue {
  double value;
  double derivative;
};
MValue m_function(const UnitRadius& r);

namespace detail {

/// Inverse modulus through the nome q = exp(-2 mu(u)).
///
/// u = 4 sqrt(q) (theta2/theta3)^2 with the theta series in q; for
/// two_mu >= 4 the truncation error is below 1e-30 relative.  log_theta_ratio
/// = log(u e^{mu(u)} / 4) is returned separately because the sandwich bounds
/// need that deviation without the catastrophic cancellation of forming it
/// from log(u) and mu.
struct NomeParts {
  double u;
  double log_theta_ratio;
};
NomeParts nome_inverse(double two_mu);

}  // namespace detail
}  // namespace qcdist
