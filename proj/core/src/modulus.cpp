#include "qcdist/modulus.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qcdist/elliptic.hpp"
#include "qcdist/errors.hpp"

namespace qcdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// mu(r) = (pi/2) agm(1,r') / agm(1,r), since K(x) = (pi/2)/agm(1,x').
double mu_from_agms(double a_r, double a_rp) { return 0.5 * kPi * a_rp / a_r; }

}  // namespace

double mu(const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r_prime() > 0.0)) {
    throw DomainError("mu: needs 0 < r < 1");
  }
  return mu_from_agms(agm(1.0, r.r()), agm(1.0, r.r_prime()));
}

double mu_derivative(const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r_prime() > 0.0)) {
    throw DomainError("mu_derivative: needs 0 < r < 1");
  }
  // -pi^2/(4 r r'^2 K(r)^2) = -agm(1,r')^2/(r r'^2)
  const double a_rp = agm(1.0, r.r_prime());
  return -a_rp * a_rp / (r.r() * r.r_prime() * r.r_prime());
}

UnitRadius mu_inverse(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw DomainError("mu_inverse: needs y > 0");
  }
  if (y >= 300.0) {
    // r = 4 e^{-y}; the e^{-2y} correction is below 1 ulp here.
    const double r = 4.0 * std::exp(-y);
    return UnitRadius::with_complement(r, std::sqrt((1.0 - r) * (1.0 + r)));
  }
  if (y < 0.5 * kPi) {
    // Reduce through mu(r) mu(r') = pi^2/4; the target lands at y' > pi/2.
    return mu_inverse(0.25 * kPi * kPi / y).complement();
  }

  // Certified bracket from the two-sided bound on exp(2 mu):
  //   log((1 + c'^{1/4})/(1 - c'^{1/4})) < 2 mu(r) < log(2(1 + c'^{1/2})/(1 - c'^{1/2}))
  // inverted in closed form, written with w = e^{-2y} to avoid overflow.
  const double w = std::exp(-2.0 * y);
  const double omt = 2.0 * w / (1.0 + w);  // 1 - tanh(y)
  const double th = 1.0 - omt;
  const double m8 = omt * (1.0 + th) * (1.0 + th * th) *
                    (1.0 + th * th * th * th);       // 1 - tanh(y)^8
  const double omv = 4.0 * w / (1.0 + 2.0 * w);      // 1 - (x-2)/(x+2)
  const double v = 1.0 - omv;
  const double m4 = omv * (1.0 + v) * (1.0 + v * v); // 1 - v^4
  double lo = std::sqrt(m8);
  double hi = std::sqrt(m4);

  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double rp = std::sqrt((1.0 - r) * (1.0 + r));
    const double a_r = agm(1.0, r);
    const double a_rp = agm(1.0, rp);
    const double f = mu_from_agms(a_r, a_rp) - y;
    if (std::abs(f) <= 4.0 * kEps * std::max(1.0, y)) {
      break;
    }
    if (f > 0.0) {
      lo = r;  // mu decreasing: residual positive means r is too small
    } else {
      hi = r;
    }
    const double deriv = -a_rp * a_rp / (r * rp * rp);
    double next = r - f / deriv;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (next == r || hi - lo <= 2.0 * kEps * r) {
      break;
    }
    r = next;
  }
  return UnitRadius(r);
}

MValue m_function(const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r_prime() > 0.0)) {
    throw DomainError("m_function: needs 0 < r < 1");
  }
  const EllipticValues v = ellint_all(r);
  const double rp2 = r.r_prime() * r.r_prime();
  MValue out;
  out.value = 2.0 / kPi * rp2 * v.k * v.k_prime;
  out.derivative = 1.0 / r.r() - 4.0 / (kPi * r.r()) * v.e_prime * v.k;
  return out;
}

namespace detail {

NomeParts nome_inverse(double two_mu) {
  // q = exp(-2 mu(u)).  Series truncated at q^20 / q^16: for two_mu >= 4 the
  // tail is below 1e-30 relative.
  const double q = std::exp(-two_mu);
  const double q2 = q * q;
  const double q4 = q2 * q2;
  const double q6 = q4 * q2;
  const double q8 = q4 * q4;
  const double q9 = q8 * q;
  const double q12 = q8 * q4;
  const double q16 = q8 * q8;
  const double q20 = q16 * q4;
  const double top = q2 + q6 + q12 + q20;          // theta2 series - 1
  const double bot = 2.0 * (q + q4 + q9 + q16);    // theta3 series - 1
  NomeParts parts;
  parts.log_theta_ratio = 2.0 * (std::log1p(top) - std::log1p(bot));
  parts.u = 4.0 * std::exp(parts.log_theta_ratio - 0.5 * two_mu);
  return parts;
}

}  // namespace detail
}  // namespace qcdist
