#pragma once

#include <utility>

#include "qcdist/unit_radius.hpp"

namespace qcdist {

/// The four complete elliptic integrals at one radius.
struct EllipticValues {
  double k;        ///< K(r), first kind
  double k_prime;  ///< K'(r) = K(r')
  double e;        ///< E(r), second kind
  double e_prime;  ///< E'(r) = E(r')
};

/// Arithmetic-geometric mean of a >= b >= 0.
double agm(double a, double b);

/// Complete elliptic integral of the first kind, K(r) = (pi/2)/agm(1, r').
/// Domain: 0 <= r < 1 (diverges at r = 1).
double ellint_k(const UnitRadius& r);

/// Complete elliptic integral of the second kind, E(r), for 0 <= r <= 1.
double ellint_e(const UnitRadius& r);

/// K, K', E, E' in one call. Domain: 0 < r < 1.
EllipticValues ellint_all(const UnitRadius& r);

/// (dK/dr, dE/dr) = ((E - r'^2 K)/(r r'^2), (E - K)/r) for 0 < r < 1.
std::pair<double, double> ellint_derivatives(const UnitRadius& r);

}  // namespace qcdist
