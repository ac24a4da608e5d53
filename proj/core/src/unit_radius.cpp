#include "qcdist/unit_radius.hpp"

#include <cmath>

#include "qcdist/errors.hpp"

namespace qcdist {

UnitRadius::UnitRadius(double r) : r_(r) {
  if (!(r >= 0.0) || !(r <= 1.0)) {
    throw DomainError("radius must lie in [0,1]");
  }
  rp_ = std::sqrt((1.0 - r) * (1.0 + r));
}

UnitRadius UnitRadius::from_complement(double r_prime) {
  UnitRadius c(r_prime);
  return c.complement();
}

UnitRadius UnitRadius::with_complement(double r, double r_prime) {
  if (!(r >= 0.0) || !(r <= 1.0) || !(r_prime >= 0.0) || !(r_prime <= 1.0)) {
    throw DomainError("radius pair must lie in [0,1]");
  }
  return UnitRadius(r, r_prime, 0);
}

}  // namespace qcdist
