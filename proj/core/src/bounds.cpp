#include "qcdist/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <thread>

#include "qcdist/elliptic.hpp"
#include "qcdist/errors.hpp"
#include "qcdist/modulus.hpp"

namespace qcdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kLog16 = std::log(16.0);
const double kLog2 = std::numbers::ln2;

// Representational slack for strict checks whose analytic margin can sink
// below binary64 resolution (sharp limits, asymptotic sandwiches).
double slack(double a, double b) {
  return 16.0 * kEps * (std::abs(a) + std::abs(b)) + 1e-315;
}

// Log-domain quantities inherit absolute noise of order eps times the
// underlying exponents, not relative noise in the (often tiny) result.
double log_slack(double a, double b) {
  return 16.0 * kEps * (std::abs(a) + std::abs(b)) +
         128.0 * kEps * std::max({1.0, std::abs(a), std::abs(b)});
}

BoundCheck check(const char* name, const char* ref, double k, double t,
                 double lhs, double rhs, bool log_domain, bool strict,
                 double tol) {
  BoundCheck c;
  c.name = name;
  c.paper_ref = ref;
  c.k = k;
  c.t = t;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.log_domain = log_domain;
  c.strict = strict;
  c.noise_tol = tol;
  c.pass = strict ? (c.margin > 0.0 || c.margin >= -tol) : (c.margin >= -tol);
  return c;
}

// Sandwich coefficients as functions of the asymptotic variable y
// (y = pi K for lambda, y = 2 K mu(r') for eta; the formulas coincide).
double c1_of(double y) { return 0.25 + 1.0 / (4.0 * std::exp(-2.0 * y) + 1.0); }

double c2_of(double y) {
  const double q2 = std::exp(-2.0 * y);
  const double q4 = q2 * q2;
  const double q6 = q4 * q2;
  const double num = 5.0 * q4 + 14.0 * q2 + 5.0;
  const double den = q6 + 7.0 * q4 + 7.0 * q2 + 1.0;
  return (1.0 + 4.0 * num / den) / 16.0;
}

// Deviation of log(alpha e^y + beta + gamma e^{-y}) from (y - log 16).
double affine_dev(double y, double alpha, double beta, double gamma) {
  const double w = std::exp(-y);
  return std::log(16.0 * alpha) + std::log1p((beta + gamma * w) * w / alpha);
}

// Sandwich checks at one point.  Linear arithmetic below y = 12, the
// cancellation-free deviation form above it.
BoundCheck sandwich_lower(const char* name, const char* ref, double k,
                          double t, const detail::EtaParts& parts) {
  const double y = parts.y;
  if (y <= 12.0) {
    const double ratio = parts.u.r_prime() / parts.u.r();
    const double value = ratio * ratio;
    const double ey = std::exp(y);
    const double lower = ey / 16.0 - 0.5 + c1_of(y) / ey;
    return check(name, ref, k, t, lower, value, false, true,
                 slack(lower, value));
  }
  const double lo_dev = affine_dev(y, 1.0 / 16.0, -0.5, c1_of(y));
  return check(name, ref, k, t, lo_dev, parts.dev, true, true,
               log_slack(lo_dev, parts.dev));
}

BoundCheck sandwich_upper(const char* name, const char* ref, double k,
                          double t, const detail::EtaParts& parts) {
  const double y = parts.y;
  if (y <= 12.0) {
    const double ratio = parts.u.r_prime() / parts.u.r();
    const double value = ratio * ratio;
    const double ey = std::exp(y);
    const double upper = ey / 16.0 - 0.5 + c2_of(y) / ey;
    return check(name, ref, k, t, value, upper, false, true,
                 slack(value, upper));
  }
  const double hi_dev = affine_dev(y, 1.0 / 16.0, -0.5, c2_of(y));
  return check(name, ref, k, t, parts.dev, hi_dev, true, true,
               log_slack(parts.dev, hi_dev));
}

struct RadiusContext {
  UnitRadius rad;
  double mu_comp;   // mu(r')
  double kk;        // K(r)
  double kkp;       // K'(r)
};

RadiusContext radius_context(double t) {
  RadiusContext ctx{radius_from_parameter(t), 0, 0, 0};
  ctx.mu_comp = mu(ctx.rad.complement());
  ctx.kk = 0.5 * kPi / agm(1.0, ctx.rad.r_prime());
  ctx.kkp = 0.5 * kPi / agm(1.0, ctx.rad.r());
  return ctx;
}

double log_ratio_of(const detail::EtaParts& parts, double k, double t) {
  return parts.log_eta - std::log(t) / k - (k - 1.0 / k) * std::log1p(t);
}

}  // namespace

const PaperConstants& PaperConstants::get() {
  static const PaperConstants pc = [] {
    PaperConstants c;
    const UnitRadius half(std::sqrt(0.5));
    const EllipticValues ev = ellint_all(half);
    const double k2 = ev.k * ev.k;
    c.a = 4.0 / kPi * k2;
    c.b = 0.5 * c.a;
    c.c_taylor = c.a * (4.0 * (c.a - 1.0) * (c.a - 1.0) - c.a * c.a) / 16.0;
    const double a1 = 0.5 * c.a * (c.a - 1.0);
    c.c1_taylor = lambda(Dilatation(2.0)) - 1.0 - c.a - a1;
    const double e2p = std::exp(2.0 * kPi);
    c.c_sandwich = (68.0 + e2p) / (16.0 * (4.0 + e2p));
    const double g = 2.0 / kPi * ev.k;
    c.c_eta17 = g * g * std::exp(-kPi);
    c.c_417 = 0.125 * std::exp(c.b);
    c.k0_317 =
        1.0 + (std::sqrt(a1 * a1 + 4.0 * c.c1_taylor * (5.0 - c.a)) - a1) /
                  (2.0 * c.c1_taylor);
    const double br = ev.e - 0.5 * ev.k;
    c.f1_check = 4.5 * k2 + 6.0 * br * br - 3.0 * kPi;
    c.g5_check = k2 / kPi - k2 * k2 / (2.0 * kPi * kPi) - 0.5 * kLog2;
    return c;
  }();
  return pc;
}

std::vector<BoundCheck> lambda_taylor_bounds(Dilatation k) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("lambda_taylor_bounds: needs K > 1");
  }
  const PaperConstants& pc = PaperConstants::get();
  const double a1 = 0.5 * pc.a * (pc.a - 1.0);
  const double d = kk - 1.0;
  const double lam = lambda(k);
  std::vector<BoundCheck> out;

  const double lower = 1.0 + pc.a * d + a1 * d * d + pc.c_taylor * d * d * d;
  out.push_back(check("lambda_taylor_lower", "(1.12)", kk, kNaN, lower, lam,
                      false, true, slack(lower, lam)));
  if (kk < 2.0) {
    const double upper = 1.0 + pc.a * d + a1 * d * d + pc.c1_taylor * d * d * d;
    out.push_back(check("lambda_taylor_upper", "(1.13)", kk, kNaN, lam, upper,
                        false, true, slack(lam, upper)));
  }
  if (d >= 1e-3) {
    // Cubic-remainder ratio; below d = 1e-3 the subtraction runs out of
    // digits, so the ratio claim is only sampled where it is resolvable.
    const double f = (((lam - 1.0) - pc.a * d) - a1 * d * d) / (d * d * d);
    const double tol = 64.0 * kEps * std::max(lam, 1.0) / (d * d * d);
    out.push_back(check("lambda_taylor_ratio", "Theorem 1.11", kk, kNaN,
                        pc.c_taylor, f, false, true, tol));
  }
  return out;
}

double cor317_k0(double delta) {
  if (!(delta > 0.0)) {
    throw DomainError("cor317_k0: needs delta > 0");
  }
  const PaperConstants& pc = PaperConstants::get();
  const double a1 = 0.5 * pc.a * (pc.a - 1.0);
  return 1.0 + (std::sqrt(a1 * a1 + 4.0 * pc.c1_taylor * delta) - a1) /
                   (2.0 * pc.c1_taylor);
}

BoundCheck cor317_bounds(Dilatation k, double delta) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("cor317_bounds: needs K > 1");
  }
  const double k0 = cor317_k0(delta);
  if (kk > k0) {
    throw DomainError("cor317_bounds: bound not asserted beyond K0(delta)");
  }
  const PaperConstants& pc = PaperConstants::get();
  const double lam = lambda(k);
  const double upper = 1.0 + (pc.a + delta) * (kk - 1.0);
  return check("cor317_linear_upper", "(3.18)", kk, kNaN, lam, upper, false,
               true, slack(lam, upper));
}

std::vector<BoundCheck> lambda_exp_bounds(Dilatation k) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("lambda_exp_bounds: needs K > 1");
  }
  const PaperConstants& pc = PaperConstants::get();
  const double ll = eta_log(k, 1.0);
  const double d = kk - 1.0;
  std::vector<BoundCheck> out;
  const double lo1 = kPi * d;
  const double lo2 = pc.b * (kk - 1.0 / kk);
  const double hi1 = pc.a * d;
  const double hi2 = (kPi + pc.b / kk) * d;
  out.push_back(check("lambda_exp_lower_pi", "(3.8)", kk, kNaN, lo1, ll, true,
                      true, log_slack(lo1, ll)));
  out.push_back(check("lambda_exp_lower_b", "(3.8)", kk, kNaN, lo2, ll, true,
                      true, log_slack(lo2, ll)));
  out.push_back(check("lambda_exp_upper_a", "(3.8)", kk, kNaN, ll, hi1, true,
                      true, log_slack(ll, hi1)));
  out.push_back(check("lambda_exp_upper_pib", "(3.8)", kk, kNaN, ll, hi2, true,
                      true, log_slack(ll, hi2)));
  return out;
}

std::vector<BoundCheck> lambda_sandwich(Dilatation k) {
  const double kk = k.value();
  if (!(kk >= 1.0)) {
    throw DomainError("lambda_sandwich: needs K >= 1");
  }
  const detail::EtaParts parts = detail::eta_parts(kk, 1.0);
  const double y = parts.y;
  std::vector<BoundCheck> out;
  out.push_back(
      sandwich_lower("lambda_sandwich_lower", "(3.22)", kk, kNaN, parts));
  out.push_back(
      sandwich_upper("lambda_sandwich_upper", "(3.22)", kk, kNaN, parts));
  const PaperConstants& pc = PaperConstants::get();
  const double c1 = c1_of(y);
  const double c2 = c2_of(y);
  const double c1_floor = 21.0 / 16.0 - pc.c_sandwich;
  out.push_back(check("lambda_sandwich_c1_floor", "Theorem 3.21", kk, kNaN,
                      c1_floor, c1, false, true, slack(c1_floor, c1)));
  out.push_back(check("lambda_sandwich_c2_ceiling", "Theorem 3.21", kk, kNaN,
                      c2, 21.0 / 16.0, false, true, slack(c2, 21.0 / 16.0)));
  return out;
}

std::vector<BoundCheck> eta_linear_exp_bounds(Dilatation k, double t) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("eta_linear_exp_bounds: needs K > 1");
  }
  const detail::EtaParts parts = detail::eta_parts(kk, t);
  const RadiusContext ctx = radius_context(t);
  const double mu_c = ctx.mu_comp;
  const double log_t = std::log(t);
  const double grow = 2.0 * (kk - 1.0) * mu_c;  // exponent of the slower rate
  std::vector<BoundCheck> out;

  const double lo15 = log_t + grow;
  out.push_back(check("eta_linexp_lower", "(1.15)", kk, t, lo15,
                      parts.log_eta, true, true, log_slack(lo15, parts.log_eta)));
  const double hi15 = log_t + 4.0 / kPi * (kk - 1.0) * ctx.kk * ctx.kkp;
  out.push_back(check("eta_linexp_upper", "(1.15)", kk, t, parts.log_eta, hi15,
                      true, true, log_slack(parts.log_eta, hi15)));

  // t + t C^2 [e^{2(K-1)mu(r')} - 1] < eta, C = (2/pi) K'(r)
  const double cc = 2.0 / kPi * ctx.kkp;
  double lo16;
  if (grow <= 300.0) {
    lo16 = log_t + std::log1p(cc * cc * std::expm1(grow));
  } else {
    lo16 = log_t + 2.0 * std::log(cc) + grow +
           std::log1p((1.0 - cc * cc) * std::exp(-grow) / (cc * cc));
  }
  out.push_back(check("eta_coeff_lower", "(1.16)", kk, t, lo16, parts.log_eta,
                      true, true, log_slack(lo16, parts.log_eta)));

  // eta < t + (1/16) e^{2 mu(r')} [e^{2(K-1)mu(r')} - 1]
  const double e2mu = std::exp(2.0 * mu_c);
  double hi16;
  if (parts.y <= 300.0) {
    hi16 = std::log(t + e2mu / 16.0 * std::expm1(grow));
  } else {
    hi16 = (parts.y - kLog16) + std::log1p((16.0 * t - e2mu) * std::exp(-parts.y));
  }
  out.push_back(check("eta_coeff_upper", "(1.16)", kk, t, parts.log_eta, hi16,
                      true, true, log_slack(parts.log_eta, hi16)));

  if (t == 1.0) {
    const PaperConstants& pc = PaperConstants::get();
    const double y = parts.y;  // = pi K at t = 1
    const double epi = std::exp(kPi);
    if (y <= 30.0) {
      const double lam = std::exp(parts.log_eta);
      const double lo17 = 1.0 + pc.c_eta17 * (std::exp(y) - epi);
      const double hi17 = 1.0 + (std::exp(y) - epi) / 16.0;
      out.push_back(check("lambda_exp_gap_lower", "(1.17)", kk, t, lo17, lam,
                          false, true, slack(lo17, lam)));
      out.push_back(check("lambda_exp_gap_upper", "(1.17)", kk, t, lam, hi17,
                          false, true, slack(lam, hi17)));
    } else {
      const double lo_dev =
          affine_dev(y, pc.c_eta17, 1.0 - pc.c_eta17 * epi, 0.0);
      const double hi_dev = affine_dev(y, 1.0 / 16.0, 1.0 - epi / 16.0, 0.0);
      out.push_back(check("lambda_exp_gap_lower", "(1.17)", kk, t, lo_dev,
                          parts.dev, true, true, log_slack(lo_dev, parts.dev)));
      out.push_back(check("lambda_exp_gap_upper", "(1.17)", kk, t, parts.dev,
                          hi_dev, true, true, log_slack(parts.dev, hi_dev)));
    }
  }
  return out;
}

std::vector<BoundCheck> eta_sandwich(Dilatation k, double t) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("eta_sandwich: needs K > 1");
  }
  const detail::EtaParts parts = detail::eta_parts(kk, t);
  const double y = parts.y;
  std::vector<BoundCheck> out;

  if (y < kLog2) {
    // Below the threshold t = [mu^{-1}(log2/(2K))]^{-2} - 1 (equivalently
    // 2 K mu(r') < log 2): eta is capped by an absolute constant.
    static const double cap = [] {
      const UnitRadius r = mu_inverse(0.5 * kLog2);
      const double q = r.r_prime() / r.r();
      return q * q;
    }();
    const double ratio = parts.u.r_prime() / parts.u.r();
    const double value = ratio * ratio;
    out.push_back(check("eta_small_cap", "(4.8)", kk, t, value, cap, false,
                        true, slack(value, cap)));
    out.push_back(check("eta_small_cap_const", "(4.8)", kk, t, cap, 1.1e-5,
                        false, true, 0.0));
  } else {
    out.push_back(sandwich_lower("eta_sandwich_lower", "(4.9)", kk, t, parts));
    const double c1 = c1_of(y);
    const double mid = 0.25 + 1.0 / (4.0 * std::exp(-2.0 * y / kk) + 1.0);
    out.push_back(check("eta_sandwich_c1_chain", "(4.10)", kk, t, mid, c1,
                        false, true, slack(mid, c1)));
    out.push_back(check("eta_sandwich_c1_floor", "(4.10)", kk, t, 0.45, mid,
                        false, true, slack(0.45, mid)));
  }

  out.push_back(sandwich_upper("eta_sandwich_upper", "(4.11)", kk, t, parts));
  const double c2 = c2_of(y);
  const double mid2 = 5.0 / 16.0 + 1.0 / (4.0 * std::exp(-2.0 * y) + 1.0);
  out.push_back(check("eta_sandwich_c2_chain", "(4.12)", kk, t, c2, mid2,
                      false, true, slack(c2, mid2)));
  out.push_back(check("eta_sandwich_c2_ceiling", "(4.12)", kk, t, mid2,
                      21.0 / 16.0, false, true, slack(mid2, 21.0 / 16.0)));
  return out;
}

PowerBoundConstants power_bound_constants(const UnitRadius& r) {
  if (!(r.r() > 0.0) || !(r.r() < 1.0)) {
    throw DomainError("power_bound_constants: needs 0 < r < 1");
  }
  const double mu_c = mu(r.complement());
  const double kk = 0.5 * kPi / agm(1.0, r.r_prime());
  const double kkp = 0.5 * kPi / agm(1.0, r.r());
  PowerBoundConstants pb;
  pb.log_a = mu_c + std::log(r.r_prime());
  pb.log_b = 2.0 / kPi * kk * kkp - mu_c + std::log(r.r());
  return pb;
}

std::vector<BoundCheck> eta_power_bounds(Dilatation k, double t) {
  const double kk = k.value();
  if (!(kk > 1.0)) {
    throw DomainError("eta_power_bounds: needs K > 1");
  }
  const detail::EtaParts parts = detail::eta_parts(kk, t);
  const RadiusContext ctx = radius_context(t);
  const double lr = log_ratio_of(parts, kk, t);
  const double omk = 1.0 - 1.0 / kk;
  const PaperConstants& pc = PaperConstants::get();
  std::vector<BoundCheck> out;

  const double lo19 = omk * kLog16;
  out.push_back(
      check("eta_power_lower", "(4.19)", kk, t, lo19, lr, true, true,
            log_slack(lo19, lr)));

  if (kk < 2.0) {
    const double bump = (1.0 + ctx.rad.r()) * (1.0 + ctx.rad.r()) - 1.0;
    const double hi20 = omk * kLog16 + std::log1p(bump * (kk - 1.0));
    out.push_back(check("eta_power_interval_upper", "(4.20)", kk, t, lr, hi20,
                        true, true, log_slack(lr, hi20)));
  }

  const PowerBoundConstants pb = power_bound_constants(ctx.rad);
  const double lo21 = 2.0 * kk * pb.log_a - 2.0 / kk * pb.log_b - kLog16;
  const double hi21 = 2.0 * (kk - 1.0) * pb.log_a + 2.0 * omk * pb.log_b;
  const double cap21 = (kk - 1.0) * kLog16 + 2.0 * omk * std::log(pc.c_417);
  out.push_back(check("eta_power_ab_lower", "(4.21)", kk, t, lo21, lr, true,
                      true, log_slack(lo21, lr)));
  out.push_back(check("eta_power_ab_upper", "(4.21)", kk, t, lr, hi21, true,
                      true, log_slack(lr, hi21)));
  out.push_back(check("eta_power_ab_cap", "(4.21)", kk, t, hi21, cap21, true,
                      false, log_slack(hi21, cap21)));

  const double m_term = 2.0 / kPi * ctx.kk * ctx.kkp;
  const double lo28 = std::log(t) + 2.0 * (kk * ctx.mu_comp - m_term);
  const double hi28 = std::log(t) + 2.0 * (kk - 1.0) * m_term;
  out.push_back(check("eta_exp_lower", "(4.28)", kk, t, lo28, parts.log_eta,
                      true, true, log_slack(lo28, parts.log_eta)));
  out.push_back(check("eta_exp_upper", "(4.28)", kk, t, parts.log_eta, hi28,
                      true, true, log_slack(parts.log_eta, hi28)));

  const double mid29 =
      2.0 * omk * (m_term + std::log(ctx.rad.r() * ctx.rad.r_prime()));
  const double hi29 =
      2.0 * (kk - 1.0) * (ctx.mu_comp + std::log(ctx.rad.r_prime())) + mid29;
  out.push_back(check("eta_chain_16", "(4.29)", kk, t, omk * kLog16, mid29,
                      true, true, log_slack(omk * kLog16, mid29)));
  out.push_back(check("eta_chain_lower", "(4.29)", kk, t, mid29, lr, true,
                      true, log_slack(mid29, lr)));
  out.push_back(check("eta_chain_upper", "(4.29)", kk, t, lr, hi29, true, true,
                      log_slack(lr, hi29)));

  if (t == 1.0) {
    const double lo30 = (kk - 1.0) * (kLog2 + (pc.a - kLog2) / kk);
    const double hi30 = (kk - 1.0) * (kPi + (pc.a - kLog2) / kk);
    out.push_back(check("lambda_power_lower", "(4.30)", kk, t, lo30,
                        parts.log_eta, true, true, log_slack(lo30, parts.log_eta)));
    out.push_back(check("lambda_power_upper", "(4.30)", kk, t, parts.log_eta,
                        hi30, true, true, log_slack(parts.log_eta, hi30)));
  }
  return out;
}

std::vector<BoundCheck> log_convexity_check(Dilatation k, Dilatation l,
                                            double t, double p) {
  if (k.value() == l.value()) {
    throw DomainError("log_convexity_check: needs K != L");
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    throw DomainError("log_convexity_check: needs p in (0,1)");
  }
  const double q = 1.0 - p;
  const double m = p * k.value() + q * l.value();
  const detail::EtaParts pk = detail::eta_parts(k.value(), t);
  const detail::EtaParts pl = detail::eta_parts(l.value(), t);
  const detail::EtaParts pm = detail::eta_parts(m, t);
  std::vector<BoundCheck> out;

  const double lo = p * pk.log_eta + q * pl.log_eta;
  out.push_back(check("eta_log_concave", "(4.6)", k.value(), t, lo, pm.log_eta,
                      true, true, log_slack(lo, pm.log_eta)));

  // log(eta+1) = -2 log u, so convexity of log(eta+1) is concavity of log u.
  const double lu =
      p * std::log(pk.u.r()) + q * std::log(pl.u.r());
  const double lm = std::log(pm.u.r());
  out.push_back(
      check("eta_plus_one_log_convex", "(4.6)", k.value(), t, lu, lm, true,
            true, log_slack(lu, lm)));
  return out;
}

std::vector<double> make_points(const Range& r) {
  if (r.count < 1) {
    throw ConfigError("range count must be >= 1");
  }
  if (r.stop < r.start) {
    throw ConfigError("range is inverted");
  }
  if (r.log_spaced && !(r.start > 0.0)) {
    throw ConfigError("log-spaced range needs a positive start");
  }
  std::vector<double> pts;
  pts.reserve(r.count);
  if (r.count == 1) {
    pts.push_back(r.start);
    return pts;
  }
  if (r.log_spaced) {
    const double la = std::log(r.start);
    const double lb = std::log(r.stop);
    for (int i = 0; i < r.count; ++i) {
      pts.push_back(std::exp(la + (lb - la) * i / (r.count - 1)));
    }
  } else {
    for (int i = 0; i < r.count; ++i) {
      pts.push_back(r.start + (r.stop - r.start) * i / (r.count - 1));
    }
  }
  pts.front() = r.start;
  pts.back() = r.stop;
  return pts;
}

namespace {

std::vector<double> geom(double lo, double hi, int n) {
  return make_points({lo, hi, n, true});
}

struct Sink {
  std::vector<BoundCheck> checks;
  std::vector<SkipRecord> skips;
};

using Task = std::function<void(Sink&)>;

bool family_on(const std::vector<std::string>& only, const std::string& name) {
  if (only.empty()) {
    return true;
  }
  return std::find(only.begin(), only.end(), name) != only.end();
}

void skip(Sink& s, const char* family, double k, double t, const char* why) {
  s.skips.push_back({family, k, t, why});
}

// Monotone-family helpers ------------------------------------------------

// Theorem 1.14: f = eta e^{-2K mu(r')} increasing onto [t e^{-2mu'}, 1/16),
// g = (d eta/dK)/eta decreasing onto (2mu', (4/pi)K(r)K'(r)),
// h = f*g increasing onto ((4/pi) t K K' e^{-2mu'}, mu'/8).
struct Thm114Point {
  double log_f;  // dev - log 16
  double g;
  double log_h;
};

Thm114Point thm114_point(double k, double t, const RadiusContext& ctx) {
  const detail::EtaParts parts = detail::eta_parts(k, t);
  Thm114Point p;
  p.log_f = parts.dev - kLog16;
  const double k_prime_s = 0.5 * kPi / agm(1.0, parts.u.r_prime());
  const double mu_r = 0.25 * kPi * kPi / ctx.mu_comp;  // mu(r) mu(r') = pi^2/4
  p.g = 2.0 * k_prime_s * k_prime_s / mu_r;
  p.log_h = p.log_f + std::log(p.g);
  return p;
}

void emit_thm114(Sink& s, double t, const std::vector<double>& ks) {
  const RadiusContext ctx = radius_context(t);
  const double mu_c = ctx.mu_comp;
  const double g_hi = 4.0 / kPi * ctx.kk * ctx.kkp;
  const double log_f_lo = std::log(t) - 2.0 * mu_c;
  const double log_h_lo = std::log(g_hi * t) - 2.0 * mu_c;
  const double log_h_hi = std::log(mu_c / 8.0);
  Thm114Point prev{};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    const Thm114Point cur = thm114_point(k, t, ctx);
    s.checks.push_back(check("thm114_f_range_lower", "Theorem 1.14(1)", k, t,
                             log_f_lo, cur.log_f, true, true,
                             log_slack(log_f_lo, cur.log_f)));
    s.checks.push_back(check("thm114_f_range_upper", "Theorem 1.14(1)", k, t,
                             cur.log_f, -kLog16, true, true,
                             log_slack(cur.log_f, kLog16)));
    s.checks.push_back(check("thm114_g_range_lower", "Theorem 1.14(2)", k, t,
                             2.0 * mu_c, cur.g, false, true,
                             slack(2.0 * mu_c, cur.g)));
    s.checks.push_back(check("thm114_g_range_upper", "Theorem 1.14(2)", k, t,
                             cur.g, g_hi, false, true, slack(cur.g, g_hi)));
    s.checks.push_back(check("thm114_h_range_lower", "Theorem 1.14(3)", k, t,
                             log_h_lo, cur.log_h, true, true,
                             log_slack(log_h_lo, cur.log_h)));
    s.checks.push_back(check("thm114_h_range_upper", "Theorem 1.14(3)", k, t,
                             cur.log_h, log_h_hi, true, true,
                             log_slack(cur.log_h, log_h_hi)));
    if (i > 0) {
      s.checks.push_back(check("thm114_f_increasing", "Theorem 1.14(1)", k, t,
                               prev.log_f, cur.log_f, true, true,
                               log_slack(prev.log_f, cur.log_f)));
      s.checks.push_back(check("thm114_g_decreasing", "Theorem 1.14(2)", k, t,
                               cur.g, prev.g, false, true,
                               slack(cur.g, prev.g)));
      s.checks.push_back(check("thm114_h_increasing", "Theorem 1.14(3)", k, t,
                               prev.log_h, cur.log_h, true, true,
                               log_slack(prev.log_h, cur.log_h)));
    }
    prev = cur;
  }
}

void emit_thm31(Sink& s, const std::vector<double>& ks) {
  const PaperConstants& pc = PaperConstants::get();
  double prev_f = 0, prev_g = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    const double ll = eta_log(Dilatation(k), 1.0);
    const double f = ll / (k - 1.0);
    const double g = (ll + pc.b * (1.0 / k - k)) / (k - 1.0);
    s.checks.push_back(check("thm31_f_range_lower", "Theorem 3.1(1)", k, kNaN,
                             kPi, f, false, true, slack(kPi, f)));
    s.checks.push_back(check("thm31_f_range_upper", "Theorem 3.1(1)", k, kNaN,
                             f, pc.a, false, true, slack(f, pc.a)));
    s.checks.push_back(check("thm31_g_range_lower", "Theorem 3.1(2)", k, kNaN,
                             0.0, g, false, true, slack(0.0, g)));
    s.checks.push_back(check("thm31_g_range_upper", "Theorem 3.1(2)", k, kNaN,
                             g, kPi - pc.b, false, true,
                             slack(g, kPi - pc.b)));
    if (i > 0) {
      s.checks.push_back(check("thm31_f_decreasing", "Theorem 3.1(1)", k, kNaN,
                               f, prev_f, false, true, slack(f, prev_f)));
      s.checks.push_back(check("thm31_g_increasing", "Theorem 3.1(2)", k, kNaN,
                               prev_g, g, false, true, slack(prev_g, g)));
    }
    prev_f = f;
    prev_g = g;
  }
  // Convexity of f on a uniform grid via midpoints.
  const int n = 17;
  for (int i = 0; i + 2 < n; i += 2) {
    const double k1 = 1.05 + (10.0 - 1.05) * i / (n - 1);
    const double k3 = 1.05 + (10.0 - 1.05) * (i + 2) / (n - 1);
    const double k2 = 0.5 * (k1 + k3);
    const double f1 = eta_log(Dilatation(k1), 1.0) / (k1 - 1.0);
    const double f2 = eta_log(Dilatation(k2), 1.0) / (k2 - 1.0);
    const double f3 = eta_log(Dilatation(k3), 1.0) / (k3 - 1.0);
    const double avg = 0.5 * (f1 + f3);
    s.checks.push_back(check("thm31_f_convex", "Theorem 3.1(1)", k2, kNaN, f2,
                             avg, false, true, slack(f2, avg)));
  }
}

void emit_thm418(Sink& s, double t, const std::vector<double>& ks) {
  const UnitRadius rad = radius_from_parameter(t);
  const PowerBoundConstants pb = power_bound_constants(rad);
  double prev = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    const detail::EtaParts parts = detail::eta_parts(k, t);
    const double log_g = -k * pb.log_a + pb.log_b / k +
                         0.5 * log_ratio_of(parts, k, t);
    s.checks.push_back(check("thm418_g_floor", "Theorem 4.18(2)", k, t,
                             -kLog16 / 2.0, log_g, true, true,
                             log_slack(kLog16, log_g)));
    s.checks.push_back(check("thm418_g_start", "Theorem 4.18(2)", k, t, log_g,
                             pb.log_b - pb.log_a, true, true,
                             log_slack(log_g, pb.log_b - pb.log_a)));
    if (i > 0) {
      s.checks.push_back(check("thm418_g_decreasing", "Theorem 4.18(2)", k, t,
                               log_g, prev, true, true, log_slack(log_g, prev)));
    }
    prev = log_g;
  }
}

void emit_thm427(Sink& s, double t, const std::vector<double>& ks) {
  const RadiusContext ctx = radius_context(t);
  const double m_term = 2.0 / kPi * ctx.kk * ctx.kkp;
  const double shift =
      2.0 * (m_term + std::log(ctx.rad.r_prime() / ctx.rad.r()));
  double prev = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    const detail::EtaParts parts = detail::eta_parts(k, t);
    const double log_f = (parts.log_eta + shift) / k;
    s.checks.push_back(check("thm427_f_range_lower", "Theorem 4.27(1)", k, t,
                             2.0 * ctx.mu_comp, log_f, true, true,
                             log_slack(2.0 * ctx.mu_comp, log_f)));
    s.checks.push_back(check("thm427_f_range_upper", "Theorem 4.27(1)", k, t,
                             log_f, 2.0 * m_term, true, true,
                             log_slack(log_f, 2.0 * m_term)));
    if (i > 0) {
      s.checks.push_back(check("thm427_f_decreasing", "Theorem 4.27(1)", k, t,
                               log_f, prev, true, true, log_slack(log_f, prev)));
    }
    prev = log_f;
  }
}

}  // namespace

VerifyReport verify_grid(const GridSpec& spec, int threads) {
  const std::vector<double> ks =
      spec.k_range ? make_points(*spec.k_range)
                   : [] {
                       std::vector<double> v = geom(1e-4, 99.0, 40);
                       for (double& g : v) g += 1.0;
                       return v;
                     }();
  const std::vector<double> ts =
      spec.t_range ? make_points(*spec.t_range) : geom(1e-4, 1e4, 40);
  for (double k : ks) {
    if (!(k > 0.0)) throw ConfigError("grid K values must be positive");
  }
  for (double t : ts) {
    if (!(t > 0.0)) throw ConfigError("grid t values must be positive");
  }

  std::vector<Task> tasks;
  const PaperConstants& pc = PaperConstants::get();

  if (family_on(spec.only, "lambda_taylor")) {
    for (double k : ks) {
      tasks.push_back([k](Sink& s) {
        if (k <= 1.0) {
          skip(s, "lambda_taylor", k, kNaN, "requires K > 1");
          return;
        }
        auto v = lambda_taylor_bounds(Dilatation(k));
        s.checks.insert(s.checks.end(), v.begin(), v.end());
      });
    }
  }
  if (family_on(spec.only, "cor317")) {
    for (double delta : {5.0 - pc.a, 1.0, 0.1}) {
      const double k0 = cor317_k0(delta);
      std::vector<double> pts;
      for (double k : ks) {
        if (k > 1.0 && k <= k0) pts.push_back(k);
      }
      pts.push_back(0.5 * (1.0 + k0));
      pts.push_back(k0 * (1.0 - 1e-9));
      for (double k : pts) {
        tasks.push_back([k, delta](Sink& s) {
          s.checks.push_back(cor317_bounds(Dilatation(k), delta));
        });
      }
    }
  }
  if (family_on(spec.only, "lambda_exp")) {
    for (double k : ks) {
      tasks.push_back([k](Sink& s) {
        if (k <= 1.0) {
          skip(s, "lambda_exp", k, kNaN, "requires K > 1");
          return;
        }
        auto v = lambda_exp_bounds(Dilatation(k));
        s.checks.insert(s.checks.end(), v.begin(), v.end());
      });
    }
  }
  if (family_on(spec.only, "lambda_sandwich")) {
    for (double k : ks) {
      tasks.push_back([k](Sink& s) {
        if (k < 1.0) {
          skip(s, "lambda_sandwich", k, kNaN, "requires K >= 1");
          return;
        }
        auto v = lambda_sandwich(Dilatation(k));
        s.checks.insert(s.checks.end(), v.begin(), v.end());
      });
    }
    // c2(K) increasing toward 21/16.
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
      const double k1 = ks[i], k2 = ks[i + 1];
      if (k1 < 1.0) continue;
      tasks.push_back([k1, k2](Sink& s) {
        const double y1 = detail::eta_parts(k1, 1.0).y;
        const double y2 = detail::eta_parts(k2, 1.0).y;
        const double a = c2_of(y1), b = c2_of(y2);
        s.checks.push_back(check("lambda_sandwich_c2_increasing",
                                 "Theorem 3.21", k2, kNaN, a, b, false, true,
                                 slack(a, b)));
      });
    }
  }
  if (family_on(spec.only, "eta_linear_exp")) {
    for (double k : ks) {
      if (k <= 1.0) {
        tasks.push_back([k](Sink& s) {
          skip(s, "eta_linear_exp", k, kNaN, "requires K > 1");
        });
        continue;
      }
      for (double t : ts) {
        tasks.push_back([k, t](Sink& s) {
          auto v = eta_linear_exp_bounds(Dilatation(k), t);
          s.checks.insert(s.checks.end(), v.begin(), v.end());
        });
      }
      tasks.push_back([k](Sink& s) {
        auto v = eta_linear_exp_bounds(Dilatation(k), 1.0);
        s.checks.insert(s.checks.end(), v.begin(), v.end());
      });
    }
  }
  if (family_on(spec.only, "eta_sandwich")) {
    std::vector<double> ts_plus = ts;
    ts_plus.push_back(1e-13);  // exercises the small-parameter branch
    ts_plus.push_back(1e-8);
    for (double k : ks) {
      if (k <= 1.0) {
        tasks.push_back([k](Sink& s) {
          skip(s, "eta_sandwich", k, kNaN, "requires K > 1");
        });
        continue;
      }
      for (double t : ts_plus) {
        tasks.push_back([k, t](Sink& s) {
          auto v = eta_sandwich(Dilatation(k), t);
          s.checks.insert(s.checks.end(), v.begin(), v.end());
        });
      }
    }
  }
  if (family_on(spec.only, "eta_power")) {
    for (double k : ks) {
      if (k <= 1.0) {
        tasks.push_back([k](Sink& s) {
          skip(s, "eta_power", k, kNaN, "requires K > 1");
        });
        continue;
      }
      for (double t : ts) {
        tasks.push_back([k, t](Sink& s) {
          auto v = eta_power_bounds(Dilatation(k), t);
          s.checks.insert(s.checks.end(), v.begin(), v.end());
        });
      }
      tasks.push_back([k](Sink& s) {
        auto v = eta_power_bounds(Dilatation(k), 1.0);
        s.checks.insert(s.checks.end(), v.begin(), v.end());
      });
    }
  }
  if (family_on(spec.only, "log_convexity")) {
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> uk(std::log(0.2), std::log(5.0));
    std::uniform_real_distribution<double> ut(std::log(0.01), std::log(100.0));
    std::uniform_real_distribution<double> up(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
      const double k = std::exp(uk(rng));
      double l = std::exp(uk(rng));
      if (l == k) l *= 1.5;
      const double t = std::exp(ut(rng));
      const double p = up(rng);
      tasks.push_back([k, l, t, p](Sink& s) {
        auto v = log_convexity_check(Dilatation(k), Dilatation(l), t, p);
        s.checks.insert(s.checks.end(), v.begin(), v.end());
      });
    }
  }

  const std::vector<double> km = [] {
    std::vector<double> v = geom(1e-3, 99.0, 30);
    for (double& g : v) g += 1.0;
    return v;
  }();
  const std::vector<double> tm = geom(1e-3, 1e3, 10);
  if (family_on(spec.only, "thm114_monotone")) {
    for (double t : tm) {
      tasks.push_back([t, km](Sink& s) { emit_thm114(s, t, km); });
    }
  }
  if (family_on(spec.only, "thm31_monotone")) {
    tasks.push_back([km](Sink& s) { emit_thm31(s, km); });
  }
  if (family_on(spec.only, "thm418_monotone")) {
    for (double t : tm) {
      tasks.push_back([t, km](Sink& s) { emit_thm418(s, t, km); });
    }
  }
  if (family_on(spec.only, "thm427_monotone")) {
    for (double t : tm) {
      tasks.push_back([t, km](Sink& s) { emit_thm427(s, t, km); });
    }
  }
  if (family_on(spec.only, "remark426")) {
    for (double k : {1.5, 2.0, 5.0, 10.0}) {
      for (double t : ts) {
        const double r = std::sqrt(t / (1.0 + t));
        if (r <= 0.99) continue;
        tasks.push_back([k, t](Sink& s) {
          const UnitRadius rad = radius_from_parameter(t);
          const PowerBoundConstants pb = power_bound_constants(rad);
          const double lo21 =
              2.0 * k * pb.log_a - 2.0 / k * pb.log_b - kLog16;
          const double base = (1.0 - 1.0 / k) * kLog16;
          s.checks.push_back(check("remark426_comparison", "Remark 4.26", k, t,
                                   base, lo21, true, true, log_slack(base, lo21)));
        });
      }
    }
  }
  if (family_on(spec.only, "ab_bounds")) {
    const double cap = std::log(4.0 * pc.c_417);
    for (double t : ts) {
      tasks.push_back([t, cap](Sink& s) {
        const PowerBoundConstants pb =
            power_bound_constants(radius_from_parameter(t));
        const double lab = pb.log_a + pb.log_b;
        s.checks.push_back(check("ab_product_floor", "(4.29)", kNaN, t,
                                 kLog16 / 2.0, lab, true, true,
                                 log_slack(kLog16, lab)));
        s.checks.push_back(check("ab_product_cap", "Theorem 4.18 proof", kNaN,
                                 t, lab, cap, true, false, log_slack(lab, cap)));
      });
    }
  }
  if (family_on(spec.only, "reference")) {
    for (double k : ks) {
      if (std::abs(k - 2.0) > 1e-9) continue;
      tasks.push_back([](Sink& s) {
        const double closed =
            4.0 * std::sqrt(2.0) * (std::sqrt(2.0) + 1.0) * (std::sqrt(2.0) + 1.0);
        const double lam = lambda(Dilatation(2.0));
        s.checks.push_back(check("lambda_2_closed_form", "Theorem 1.11", 2.0,
                                 kNaN, std::abs(lam - closed), 1e-11 * closed,
                                 false, false, 0.0));
      });
    }
  }

  // Deterministic execution: results land in per-task slots, concatenated in
  // task order no matter how the workers interleave.
  std::vector<Sink> sinks(tasks.size());
  int n = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, 64);
  if (n == 1 || tasks.size() < 2) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      tasks[i](sinks[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < tasks.size();
           i = next.fetch_add(1)) {
        tasks[i](sinks[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  VerifyReport report;
  for (Sink& s : sinks) {
    report.checks.insert(report.checks.end(), s.checks.begin(), s.checks.end());
    report.skips.insert(report.skips.end(), s.skips.begin(), s.skips.end());
  }
  report.total = static_cast<long>(report.checks.size());
  std::map<std::string, std::size_t> index;
  for (const BoundCheck& c : report.checks) {
    if (!c.pass) {
      ++report.failed;
    }
    auto it = index.find(c.name);
    if (it == index.end()) {
      index.emplace(c.name, report.families.size());
      report.families.push_back({c.name, c.paper_ref, 1, c.margin});
    } else {
      FamilyStat& fs = report.families[it->second];
      ++fs.points;
      fs.min_margin = std::min(fs.min_margin, c.margin);
    }
  }
  return report;
}

}  // namespace qcdist
