#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "qcdist/elliptic.hpp"
#include "qcdist/errors.hpp"
#include "qcdist/unit_radius.hpp"

using namespace qcdist;
using testutil::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtHalf = std::sqrt(0.5);

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v;
  const double la = std::log(lo);
  const double lb = std::log(hi);
  for (int i = 0; i < n; ++i) {
    v.push_back(std::exp(la + (lb - la) * i / (n - 1)));
  }
  return v;
}

}  // namespace

TEST_CASE("unit radius carries an accurate complement") {
  const UnitRadius a(0.3);
  CHECK(a.r_prime() == doctest::Approx(std::sqrt(0.91)).epsilon(1e-15));

  // r^2 + r'^2 = 1 within 4 ulp
  for (double r : log_grid(1e-8, 1.0 - 1e-8, 200)) {
    const UnitRadius u(r);
    const double s = u.r() * u.r() + u.r_prime() * u.r_prime();
    CHECK(std::abs(s - 1.0) <= 4.0 * testutil::ulp_of(1.0));
  }

  // complement of complement returns the original within 2 ulp
  for (double r : log_grid(1e-8, 1.0 - 1e-8, 200)) {
    const UnitRadius u(r);
    const double back = u.complement().complement().r();
    CHECK(std::abs(back - r) <= 2.0 * testutil::ulp_of(r));
  }

  CHECK_THROWS_AS(UnitRadius(-0.1), DomainError);
  CHECK_THROWS_AS(UnitRadius(1.5), DomainError);
  CHECK_THROWS_AS(UnitRadius(std::nan("")), DomainError);
}

TEST_CASE("ellint_k matches the defining integral") {
  // r = 0: integrand is 1
  CHECK(ellint_k(UnitRadius(0.0)) == doctest::Approx(kPi / 2).epsilon(1e-15));

  // r = 1/sqrt2: (4/pi) K^2 = 4.3768...
  const double k_half = ellint_k(UnitRadius(kSqrtHalf));
  CHECK(std::abs(4.0 / kPi * k_half * k_half - 4.3768) < 5e-4);

  // quadrature oracle on the integrand at r = 0.5
  const double r = 0.5;
  const double oracle = testutil::integrate(
      [r](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - r * r * s * s);
      },
      0.0, kPi / 2);
  CHECK(rel_err(ellint_k(UnitRadius(r)), oracle) < 1e-12);

  CHECK_THROWS_AS(ellint_k(UnitRadius(1.0)), DomainError);
}

TEST_CASE("ellint_e matches the defining integral") {
  CHECK(ellint_e(UnitRadius(0.0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(ellint_e(UnitRadius(1.0)) == doctest::Approx(1.0).epsilon(1e-15));

  // K(1/sqrt2)[E(1/sqrt2) - K(1/sqrt2)/2] = pi/4
  const UnitRadius half(kSqrtHalf);
  const double k = ellint_k(half);
  const double e = ellint_e(half);
  CHECK(rel_err(e, kPi / (4.0 * k) + 0.5 * k) < 1e-14);
  CHECK(e == doctest::Approx(1.350644).epsilon(1e-6));

  const double r = 0.5;
  const double oracle = testutil::integrate(
      [r](double t) {
        const double s = std::sin(t);
        return std::sqrt(1.0 - r * r * s * s);
      },
      0.0, kPi / 2);
  CHECK(rel_err(ellint_e(UnitRadius(r)), oracle) < 1e-12);
}

TEST_CASE("ellint_all is consistent and symmetric") {
  const EllipticValues sym = ellint_all(UnitRadius(kSqrtHalf));
  CHECK(sym.k == doctest::Approx(sym.k_prime).epsilon(1e-15));
  CHECK(sym.e == doctest::Approx(sym.e_prime).epsilon(1e-15));

  const UnitRadius r(0.6);
  const EllipticValues v = ellint_all(r);
  CHECK(v.k == ellint_k(r));
  CHECK(v.e == ellint_e(r));
  const double legendre = v.k * v.e_prime + v.k_prime * v.e - v.k * v.k_prime;
  CHECK(rel_err(legendre, kPi / 2) < 1e-12);

  CHECK_THROWS_AS(ellint_all(UnitRadius(0.0)), DomainError);
  CHECK_THROWS_AS(ellint_all(UnitRadius(1.0)), DomainError);
}

TEST_CASE("Legendre relation holds on a 1000-point grid") {
  for (double r : log_grid(1e-6, 1.0 - 1e-6, 1000)) {
    const EllipticValues v = ellint_all(UnitRadius(r));
    const double legendre =
        v.k * v.e_prime + v.k_prime * v.e - v.k * v.k_prime;
    CHECK(rel_err(legendre, kPi / 2) < 1e-12);
  }
}

TEST_CASE("AGM wiring: K(r) agm(1, r') = pi/2 to 2 ulp") {
  for (double r : log_grid(1e-6, 1.0 - 1e-6, 50)) {
    const UnitRadius u(r);
    const double product = ellint_k(u) * agm(1.0, u.r_prime());
    CHECK(std::abs(product - kPi / 2) <= 2.0 * testutil::ulp_of(kPi / 2));
  }
}

TEST_CASE("derivative formulas match central differences") {
  for (double r : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const auto [dk, de] = ellint_derivatives(UnitRadius(r));
    const double h = 1e-6;
    const double dk_fd = testutil::central_diff(
        [](double x) { return ellint_k(UnitRadius(x)); }, r, h);
    const double de_fd = testutil::central_diff(
        [](double x) { return ellint_e(UnitRadius(x)); }, r, h);
    CHECK(rel_err(dk, dk_fd) < 1e-7);
    CHECK(rel_err(de, de_fd) < 1e-7);
  }
  // tighter spot check at r = 0.5 per the h = 1e-6 stencil accuracy
  const auto [dk, de] = ellint_derivatives(UnitRadius(0.5));
  const double dk_fd = testutil::central_diff(
      [](double x) { return ellint_k(UnitRadius(x)); }, 0.5, 1e-6);
  CHECK(rel_err(dk, dk_fd) < 1e-8);
  CHECK(de < 0.0);

  // r r'^2 dK/dr = pi/(4 K(1/sqrt2)) at the symmetric point
  const UnitRadius half(kSqrtHalf);
  const auto [dk_h, de_h] = ellint_derivatives(half);
  (void)de_h;
  const double lhs = half.r() * half.r_prime() * half.r_prime() * dk_h;
  CHECK(rel_err(lhs, kPi / (4.0 * ellint_k(half))) < 1e-13);

  CHECK_THROWS_AS(ellint_derivatives(UnitRadius(0.0)), DomainError);
}

TEST_CASE("K increases and E decreases in r") {
  double prev_k = ellint_k(UnitRadius(0.0));
  double prev_e = ellint_e(UnitRadius(0.0));
  for (int i = 1; i <= 60; ++i) {
    const double r = i / 61.0;
    const double k = ellint_k(UnitRadius(r));
    const double e = ellint_e(UnitRadius(r));
    CHECK(k > prev_k);
    CHECK(e < prev_e);
    prev_k = k;
    prev_e = e;
  }
  // K >= pi/2 >= E with equality only at 0
  CHECK(ellint_k(UnitRadius(0.3)) > kPi / 2);
  CHECK(ellint_e(UnitRadius(0.3)) < kPi / 2);
}

TEST_CASE("r r' K(r) K(r') peaks at 1/sqrt2 and K(r)/r decreases") {
  auto f = [](double r) {
    const UnitRadius u(r);
    return u.r() * u.r_prime() * ellint_k(u) * ellint_k(u.complement());
  };
  const std::vector<double> up = log_grid(1e-4, kSqrtHalf, 200);
  for (std::size_t i = 1; i < up.size(); ++i) {
    CHECK(f(up[i]) > f(up[i - 1]));
  }
  double prev = f(kSqrtHalf);
  for (int i = 1; i <= 200; ++i) {
    const double r = kSqrtHalf + (1.0 - 1e-6 - kSqrtHalf) * i / 200.0;
    const double cur = f(r);
    CHECK(cur < prev);
    prev = cur;
  }

  auto g = [](double r) { return ellint_k(UnitRadius(r)) / r; };
  for (std::size_t i = 1; i < up.size(); ++i) {
    CHECK(g(up[i]) < g(up[i - 1]));
  }
}

TEST_CASE("accuracy near r = 1") {
  const double r = 1.0 - 1e-12;
  const UnitRadius u(r);
  // K(r) ~ log(4/r') there
  const double expect = std::log(4.0 / u.r_prime());
  CHECK(rel_err(ellint_k(u), expect) < 1e-6);
  CHECK(std::isfinite(ellint_e(u)));
}
