#include "qcdist/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qcdist/errors.hpp"

namespace qcdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kAgmCap = 40;

// One AGM pass that also accumulates sum 2^{n-1} c_n^2 for E.
// c_0 is the modulus r; a_0 = 1, b_0 = r'.
struct AgmSums {
  double mean;
  double c_sum;
};

AgmSums agm_with_sum(double r, double r_prime) {
  double a = 1.0;
  double b = r_prime;
  double sum = 0.5 * r * r;
  double pow2 = 0.5;
  for (int i = 0; i < kAgmCap && std::abs(a - b) > 4.0 * kEps * a; ++i) {
    const double c = 0.5 * (a - b);
    pow2 *= 2.0;
    sum += pow2 * c * c;
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return {0.5 * (a + b), sum};
}

}  // namespace

double agm(double a, double b) {
  for (int i = 0; i < kAgmCap && std::abs(a - b) > 4.0 * kEps * a; ++i) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return 0.5 * (a + b);
}

double ellint_k(const UnitRadius& r) {
  if (!(r.r_prime() > 0.0)) {
    throw DomainError("ellint_k: diverges at r = 1");
  }
  return 0.5 * kPi / agm(1.0, r.r_prime());
}

double ellint_e(const UnitRadius& r) {
  if (r.r() == 1.0) {
    return 1.0;
  }
  const AgmSums s = agm_with_sum(r.r(), r.r_prime());
  return 0.5 * kPi / s.mean * (1.0 - s.c_sum);
}

EllipticValues ellint_all(const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r_prime() > 0.0)) {
    throw DomainError("ellint_all: needs 0 < r < 1");
  }
  const AgmSums s = agm_with_sum(r.r(), r.r_prime());
  const AgmSums sc = agm_with_sum(r.r_prime(), r.r());
  EllipticValues v;
  v.k = 0.5 * kPi / s.mean;
  v.e = v.k * (1.0 - s.c_sum);
  v.k_prime = 0.5 * kPi / sc.mean;
  v.e_prime = v.k_prime * (1.0 - sc.c_sum);
  return v;
}

std::pair<double, double> ellint_derivatives(const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r_prime() > 0.0)) {
    throw DomainError("ellint_derivatives: needs 0 < r < 1");
  }
  const AgmSums s = agm_with_sum(r.r(), r.r_prime());
  const double k = 0.5 * kPi / s.mean;
  const double e = k * (1.0 - s.c_sum);
  const double rp2 = r.r_prime() * r.r_prime();
  const double dk = (e - rp2 * k) / (r.r() * rp2);
  const double de = (e - k) / r.r();
  return {dk, de};
}

}  // namespace qcdist
