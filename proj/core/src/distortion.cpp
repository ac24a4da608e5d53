#include "qcdist/distortion.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qcdist/elliptic.hpp"
#include "qcdist/errors.hpp"
#include "qcdist/modulus.hpp"

namespace qcdist {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog16 = std::log(16.0);

// Overflow ceiling for exp(): results beyond e^700 are close enough to the
// binary64 limit that callers are sent to the log-domain API.
constexpr double kExpCeiling = 700.0;

UnitRadius complement_pair_from_small(double u) {
  return UnitRadius::with_complement(u, std::sqrt((1.0 - u) * (1.0 + u)));
}

}  // namespace

Dilatation::Dilatation(double k) : k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("dilatation must be positive and finite");
  }
}

UnitRadius radius_from_parameter(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("parameter t must be positive and finite");
  }
  const double onep = 1.0 + t;
  return UnitRadius::with_complement(std::sqrt(t / onep), std::sqrt(1.0 / onep));
}

double phi(Dilatation k, const UnitRadius& r) { return phi_radius(k, r).r(); }

UnitRadius phi_radius(Dilatation k, const UnitRadius& r) {
  if (r.r() == 0.0) {
    return UnitRadius::with_complement(0.0, 1.0);
  }
  if (r.r() == 1.0) {
    return UnitRadius::with_complement(1.0, 0.0);
  }
  return mu_inverse(mu(r) / k.value());
}

std::pair<double, double> phi_partials(Dilatation k, const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r() < 1.0)) {
    throw DomainError("phi_partials: needs 0 < r < 1");
  }
  const UnitRadius s = phi_radius(k, r);
  const double ks = 0.5 * kPi / agm(1.0, s.r_prime());
  const double kps = 0.5 * kPi / agm(1.0, s.r());
  const double kr = 0.5 * kPi / agm(1.0, r.r_prime());
  const double kpr = 0.5 * kPi / agm(1.0, r.r());
  const double sp2 = s.r_prime() * s.r_prime();
  const double rp2 = r.r_prime() * r.r_prime();
  const double num = s.r() * sp2 * ks * kps;
  const double ds_dr = num / (r.r() * rp2 * kr * kpr);
  const double ds_dk = 2.0 / (kPi * k.value()) * num;
  return {ds_dr, ds_dk};
}

namespace detail {

EtaParts eta_parts(double k, double t) {
  const UnitRadius rad = radius_from_parameter(t);
  const double mu_comp = mu(rad.complement());
  const double y = 2.0 * k * mu_comp;

  EtaParts parts{y, UnitRadius::with_complement(0.0, 1.0), 0.0, 0.0};
  if (y >= 4.0) {
    const NomeParts np = nome_inverse(y);
    parts.u = complement_pair_from_small(np.u);
    parts.dev = -2.0 * np.log_theta_ratio + std::log1p(-np.u * np.u);
    parts.log_eta = (y - kLog16) + parts.dev;
  } else {
    parts.u = mu_inverse(0.5 * y);
    parts.log_eta =
        2.0 * (std::log(parts.u.r_prime()) - std::log(parts.u.r()));
    parts.dev = parts.log_eta - (y - kLog16);
  }
  return parts;
}

}  // namespace detail

double lambda(Dilatation k) {
  if (kPi * k.value() > kExpCeiling) {
    throw OverflowInfo("lambda exceeds binary64 range; use eta_log(K, 1)");
  }
  return eta(k, 1.0);
}

double eta(Dilatation k, double t) {
  const detail::EtaParts parts = detail::eta_parts(k.value(), t);
  if (parts.y > kExpCeiling) {
    throw OverflowInfo("eta exceeds binary64 range; use eta_log");
  }
  const double ratio = parts.u.r_prime() / parts.u.r();
  return ratio * ratio;
}

double eta_log(Dilatation k, double t) {
  return detail::eta_parts(k.value(), t).log_eta;
}

double eta_partial_k(Dilatation k, double t) {
  const detail::EtaParts parts = detail::eta_parts(k.value(), t);
  if (parts.y > kExpCeiling) {
    throw OverflowInfo("eta_partial_k exceeds binary64 range");
  }
  const double u = parts.u.r();
  const double s = parts.u.r_prime();  // s = phi_K(r), complement of u
  const double k_s = 0.5 * kPi / agm(1.0, u);
  const double kp_s = 0.5 * kPi / agm(1.0, s);
  const double ratio = s / u;
  return 4.0 / (kPi * k.value()) * ratio * ratio * k_s * kp_s;
}

double schottky_psi(double a, double z_abs) {
  if (!(a > 0.0)) {
    throw DomainError("schottky_psi: needs a > 0");
  }
  if (!(z_abs >= 0.0) || !(z_abs < 1.0)) {
    throw DomainError("schottky_psi: needs 0 <= |z| < 1");
  }
  if (z_abs == 0.0) {
    return a;  // K = 1 is the identity bound
  }
  return eta(Dilatation((1.0 + z_abs) / (1.0 - z_abs)), a);
}

SingularValue singular_value(int p) {
  if (p < 1) {
    throw DomainError("singular_value: needs p >= 1");
  }
  const double y = 0.5 * kPi * std::sqrt(static_cast<double>(p));
  return {p, mu_inverse(y).r()};
}

double quasisymmetry_margin(Dilatation k) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("quasisymmetry_margin: needs K > 1");
  }
  const double s = std::pow(kk - 1.0, 4.0 / 9.0);
  const double m = mu(radius_from_parameter(s));
  const double grow = std::expm1(2.0 * (kk - 1.0) * m);
  if (grow == 0.0) {
    return 0.0;
  }
  if (2.0 * m < 600.0) {
    return std::exp(2.0 * m) * grow / s;
  }
  return std::exp(2.0 * m + std::log(grow) - std::log(s));
}

double quasisymmetry_threshold() {
  // The margin is strictly increasing across the crossing; bisect in
  // log(K-1) for uniform relative resolution.
  double glo = std::log(1e-13);
  double ghi = 0.0;  // K = 2
  for (int i = 0; i < 200; ++i) {
    const double gm = 0.5 * (glo + ghi);
    if (quasisymmetry_margin(Dilatation(1.0 + std::exp(gm))) <= 16.0) {
      glo = gm;
    } else {
      ghi = gm;
    }
  }
  return 1.0 + std::exp(0.5 * (glo + ghi));
}

}  // namespace qcdist
