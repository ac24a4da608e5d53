#pragma once

#include <utility>

#include "qcdist/unit_radius.hpp"

namespace qcdist {

/// Maximal-dilatation parameter K in (0, inf).  Distinct from K(r).
class Dilatation {
 public:
  explicit Dilatation(double k);
  double value() const noexcept { return k_; }
  Dilatation reciprocal() const { return Dilatation(1.0 / k_); }

 private:
  double k_;
};

/// r = sqrt(t/(1+t)) with complement 1/sqrt(1+t), both at full accuracy.
UnitRadius radius_from_parameter(double t);

/// Distortion function phi_K(r) = mu^{-1}(mu(r)/K); phi_K(0)=0, phi_K(1)=1.
double phi(Dilatation k, const UnitRadius& r);

/// phi_K(r) together with its complement phi_{1/K}(r').
UnitRadius phi_radius(Dilatation k, const UnitRadius& r);

/// (ds/dr, ds/dK) for s = phi_K(r):
///   ds/dr = s s'^2 K(s) K'(s) / (r r'^2 K(r) K'(r)),
///   ds/dK = (2/(pi K)) s s'^2 K(s) K'(s).
std::pair<double, double> phi_partials(Dilatation k, const UnitRadius& r);

/// lambda(K) = (1-u^2)/u^2 with u = phi_{1/K}(1/sqrt(2)).
/// Throws OverflowInfo when pi*K > 700 (use eta_log).
double lambda(Dilatation k);

/// eta_K(t) = (s/s')^2 with s = phi_K(sqrt(t/(1+t))).
/// Throws OverflowInfo when 2 K mu(r') > 700 (use eta_log).
double eta(Dilatation k, double t);

/// log eta_K(t), overflow-safe for all K, t in the domain.
double eta_log(Dilatation k, double t);

/// d eta_K(t)/dK = (4/(pi K)) eta_K(t) K(s) K'(s).
double eta_partial_k(Dilatation k, double t);

/// Schottky bound Psi(a, |z|) = eta_K(a) with K = (1+|z|)/(1-|z|).
double schottky_psi(double a, double z_abs);

/// k_p = mu^{-1}((pi/2) sqrt(p)), the pth singular value.
struct SingularValue {
  int p;
  double k_p;
};
SingularValue singular_value(int p);

/// Left side of the quasisymmetry criterion:
/// e^{2 mu(r)} [e^{2(K-1) mu(r)} - 1] / s with s = (K-1)^{4/9}, r = sqrt(s/(1+s)).
double quasisymmetry_margin(Dilatation k);

/// Largest K in (1,2) with quasisymmetry_margin(K) <= 16, by bisection.
double quasisymmetry_threshold();

namespace detail {

/// Shared evaluation core for eta/lambda.
///
/// y = 2 K mu(r') is the asymptotic variable; dev = log(16 eta e^{-y}) is the
/// deviation of log eta from its leading asymptote, computed without
/// cancellation (nome route for y >= 4).  u = phi_{1/K}(r') carries an
/// accurate complement pair, so eta = (u'/u)^2 stays exact at both ends.
struct EtaParts {
  double y;
  UnitRadius u;
  double log_eta;
  double dev;
};
EtaParts eta_parts(double k, double t);

}  // namespace detail
}  // namespace qcdist
