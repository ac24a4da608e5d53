#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "qcdist/elliptic.hpp"
#include "qcdist/errors.hpp"
#include "qcdist/modulus.hpp"
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

// Test-side inverse through the nome, independent of the Newton solver under
// test.  theta series in q = exp(-2y).
double theta_mu_inverse(double y) {
  const double q = std::exp(-2.0 * y);
  const double t2 = 1.0 + std::pow(q, 2) + std::pow(q, 6) + std::pow(q, 12) +
                    std::pow(q, 20);
  const double t3 = 1.0 + 2.0 * (q + std::pow(q, 4) + std::pow(q, 9) +
                                 std::pow(q, 16));
  const double ratio = t2 / t3;
  return 4.0 * std::sqrt(q) * ratio * ratio;
}

}  // namespace

TEST_CASE("mu at the symmetric point and the reciprocal law") {
  CHECK(rel_err(mu(UnitRadius(kSqrtHalf)), kPi / 2) < 1e-15);

  // mu(r) mu(r') = pi^2/4
  const UnitRadius r3(0.3);
  CHECK(rel_err(mu(r3) * mu(r3.complement()), kPi * kPi / 4) < 1e-12);
  for (double r : log_grid(1e-6, 1.0 - 1e-6, 500)) {
    const UnitRadius u(r);
    CHECK(rel_err(mu(u) * mu(u.complement()), kPi * kPi / 4) < 1e-12);
  }

  CHECK_THROWS_AS(mu(UnitRadius(0.0)), DomainError);
  CHECK_THROWS_AS(mu(UnitRadius(1.0)), DomainError);
}

TEST_CASE("mu approaches log(4/r) from below as r -> 0") {
  const double v = mu(UnitRadius(1e-4)) + std::log(1e-4);
  CHECK(v < std::log(4.0));
  CHECK(v > std::log(4.0) - 1e-7);
}

TEST_CASE("mu_derivative matches central differences and is negative") {
  for (double r : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    const double d = mu_derivative(UnitRadius(r));
    CHECK(d < 0.0);
    const double fd = testutil::central_diff(
        [](double x) { return mu(UnitRadius(x)); }, r, 1e-6);
    CHECK(rel_err(d, fd) < 1e-7);
  }
  // consistency with (4/pi) K(1/sqrt2)^2 at the symmetric point:
  // mu'(1/sqrt2) = -pi^2 / (4 (1/sqrt2)(1/2) K^2) = -2 pi sqrt2 / a
  const double k = ellint_k(UnitRadius(kSqrtHalf));
  const double a = 4.0 / kPi * k * k;
  const double expect = -2.0 * kPi * std::sqrt(2.0) / a;
  CHECK(rel_err(mu_derivative(UnitRadius(kSqrtHalf)), expect) < 1e-13);
}

TEST_CASE("mu_inverse round trips") {
  CHECK(rel_err(mu_inverse(kPi / 2).r(), kSqrtHalf) < 1e-14);

  const double y42 = mu(UnitRadius(0.42));
  CHECK(std::abs(mu_inverse(y42).r() - 0.42) < 1e-12);

  for (double r : log_grid(1e-6, 1.0 - 1e-6, 500)) {
    const double back = mu_inverse(mu(UnitRadius(r))).r();
    CHECK(std::abs(back - r) < 1e-12);
  }

  // residual |mu(mu_inverse(y)) - y| <= 1e-12 max(1, y); below y ~ 3.5e-3 the
  // complement rounds to exactly 1 and mu is no longer evaluable there
  for (double y : log_grid(5e-3, 250.0, 60)) {
    const double res = std::abs(mu(mu_inverse(y)) - y);
    CHECK(res <= 1e-12 * std::max(1.0, y));
  }

  CHECK_THROWS_AS(mu_inverse(0.0), DomainError);
  CHECK_THROWS_AS(mu_inverse(-1.0), DomainError);
}

TEST_CASE("mu_inverse at y = log(2)/2 exceeds 0.99999476") {
  const UnitRadius r = mu_inverse(0.5 * std::log(2.0));
  CHECK(r.r() > 0.99999476);
  // and the derived cap [mu^{-1}(log2 / 2)]^{-2} - 1 < 0.000011
  const double cap = (r.r_prime() / r.r()) * (r.r_prime() / r.r());
  CHECK(cap < 0.000011);
}

TEST_CASE("mu_inverse branch seams agree") {
  // reciprocal vs core around y = pi/2
  const double eps = 1e-9;
  CHECK(std::abs(mu_inverse(kPi / 2 - eps).r() - mu_inverse(kPi / 2 + eps).r()) <
        1e-8);
  // asymptotic vs core around y = 300
  const double lo = mu_inverse(300.0 * (1 - 1e-12)).r();
  const double hi = mu_inverse(300.0 * (1 + 1e-12)).r();
  CHECK(rel_err(lo, hi) < 1e-9);
}

TEST_CASE("mu_inverse agrees with the theta-series oracle") {
  for (double y : log_grid(2.0, 290.0, 120)) {
    const double newton = mu_inverse(y).r();
    const double theta = theta_mu_inverse(y);
    CHECK(rel_err(newton, theta) < 1e-13);
  }
}

TEST_CASE("nome parts match mu_inverse where both apply") {
  for (double y : log_grid(4.0, 290.0, 60)) {
    const detail::NomeParts parts = detail::nome_inverse(y);
    CHECK(rel_err(parts.u, mu_inverse(0.5 * y).r()) < 1e-13);
    // log_theta_ratio is log(u e^{y/2} / 4) by construction
    const double direct = std::log(parts.u) + 0.5 * y - std::log(4.0);
    CHECK(std::abs(parts.log_theta_ratio - direct) < 1e-12);
  }
}

TEST_CASE("two-sided bracket on 2 mu(r)") {
  // Both bounds are asymptotically sharp as r -> 0 (the gaps decay like high
  // powers of r), so strictness is asserted where binary64 resolves it and
  // within representational slack elsewhere.  1 - r'^{1/2} and 1 - r'^{1/4}
  // are formed through r^2 to keep relative accuracy near r' = 1.
  const double eps = std::numeric_limits<double>::epsilon();
  for (double r : log_grid(1e-6, 1.0 - 1e-6, 200)) {
    const UnitRadius u(r);
    const double two_mu = 2.0 * mu(u);
    const double q2 = std::sqrt(u.r_prime());
    const double q4 = std::sqrt(q2);
    const double one_m_q2 = r * r / ((1.0 + u.r_prime()) * (1.0 + q2));
    const double one_m_q4 = one_m_q2 / (1.0 + q4);
    const double lower = std::log((1.0 + q4) / one_m_q4);
    const double upper = std::log(2.0 * (1.0 + q2) / one_m_q2);
    const double tol = 8.0 * eps * two_mu;
    CHECK(lower < two_mu + tol);
    CHECK(two_mu < upper + tol);
    if (r >= 0.1) {
      CHECK(lower < two_mu);
      CHECK(two_mu < upper);
    }
  }
}

TEST_CASE("m_function value, derivative, and small-r limit") {
  const MValue m5 = m_function(UnitRadius(0.5));
  const double fd = testutil::central_diff(
      [](double x) { return m_function(UnitRadius(x)).value; }, 0.5, 1e-6);
  CHECK(rel_err(m5.derivative, fd) < 1e-7);

  // m(r) + log r -> log 4
  CHECK(std::abs(m_function(UnitRadius(1e-6)).value + std::log(1e-6) -
                 std::log(4.0)) < 1e-5);

  // m(1/sqrt2) = K(1/sqrt2)^2 / pi
  const double k = ellint_k(UnitRadius(kSqrtHalf));
  CHECK(rel_err(m_function(UnitRadius(kSqrtHalf)).value, k * k / kPi) < 1e-14);

  CHECK_THROWS_AS(m_function(UnitRadius(0.0)), DomainError);
}

TEST_CASE("monotone combinations of K K' and mu") {
  // (2/pi) K K' + log r - mu(r') decreasing with range in (0, log 4)
  auto f = [](double r) {
    const UnitRadius u(r);
    const EllipticValues v = ellint_all(u);
    return 2.0 / kPi * v.k * v.k_prime + std::log(r) - mu(u.complement());
  };
  const std::vector<double> grid = log_grid(1e-5, 1.0 - 1e-5, 200);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double val = f(grid[i]);
    CHECK(val > 0.0);
    CHECK(val < std::log(4.0));
    if (i > 0) {
      CHECK(val < f(grid[i - 1]));
    }
  }

  // (2/pi) K K' + log(r'/r) decreasing with values > log 4
  auto g = [](double r) {
    const UnitRadius u(r);
    const EllipticValues v = ellint_all(u);
    return 2.0 / kPi * v.k * v.k_prime + std::log(u.r_prime() / r);
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double val = g(grid[i]);
    CHECK(val > std::log(4.0));
    if (i > 0) {
      CHECK(val < g(grid[i - 1]));
    }
  }
}

TEST_CASE("mu_inverse extreme arguments") {
  // large y: r = 4 e^{-y} territory
  const UnitRadius tiny = mu_inverse(500.0);
  CHECK(rel_err(tiny.r(), 4.0 * std::exp(-500.0)) < 1e-12);
  CHECK(tiny.r_prime() == 1.0);

  // small y: complement territory
  const UnitRadius big = mu_inverse(kPi * kPi / (4.0 * 500.0));
  CHECK(rel_err(big.r_prime(), 4.0 * std::exp(-500.0)) < 1e-12);
}
