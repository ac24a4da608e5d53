#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcdist/distortion.hpp"
#include "qcdist/unit_radius.hpp"

namespace qcdist {

/// Constants that the inequality families are sharp against.
struct PaperConstants {
  double a;           ///< (4/pi) K(1/sqrt2)^2
  double b;           ///< a/2
  double c_taylor;    ///< a[4(a-1)^2 - a^2]/16
  double c1_taylor;   ///< lambda(2) - 1 - a - a(a-1)/2
  double c_sandwich;  ///< (68 + e^{2pi}) / [16(4 + e^{2pi})]
  double c_eta17;     ///< ((2/pi) K(1/sqrt2))^2 e^{-pi}
  double c_417;       ///< (1/8) exp(2 K(1/sqrt2)^2 / pi)
  double k0_317;      ///< 1 + (sqrt(a1^2 + 4 c1 (5-a)) - a1)/(2 c1), a1 = a(a-1)/2
  double f1_check;    ///< (9/2) K^2 + 6 [E - K/2]^2 - 3 pi  at 1/sqrt2
  double g5_check;    ///< K^2/pi - K^4/(2 pi^2) - (log 2)/2  at 1/sqrt2

  static const PaperConstants& get();
};

/// One evaluated inequality instance.
struct BoundCheck {
  std::string name;
  std::string paper_ref;
  double k = 0;             ///< dilatation at the evaluation point (NaN if n/a)
  double t = 0;             ///< eta parameter (NaN if n/a)
  double lhs = 0;           ///< smaller side (log-domain value when flagged)
  double rhs = 0;           ///< larger side
  double margin = 0;        ///< rhs - lhs in the check's domain
  bool log_domain = false;  ///< lhs/rhs are logarithms (or log deviations)
  bool strict = true;
  double noise_tol = 0;     ///< representational slack applied to `pass`
  bool pass = false;
};

/// Taylor-type bounds on lambda: lower for K>1, two-sided on (1,2), and the
/// monotone cubic-remainder ratio f(K) > c.
std::vector<BoundCheck> lambda_taylor_bounds(Dilatation k);

/// Near-1 linear bound lambda(K) < 1 + (a+delta)(K-1), valid for
/// K <= K0(delta) = 1 + (sqrt(a1^2 + 4 c1 delta) - a1)/(2 c1).
BoundCheck cor317_bounds(Dilatation k, double delta);
double cor317_k0(double delta);

/// Four exponential bounds: max{e^{pi(K-1)}, e^{b(K-1/K)}} < lambda(K)
/// < min{e^{a(K-1)}, e^{(pi+b/K)(K-1)}}.
std::vector<BoundCheck> lambda_exp_bounds(Dilatation k);

/// Sandwich e^{piK}/16 - 1/2 + c_i(K) e^{-piK} around lambda(K), plus the
/// constant bounds on c1(K), c2(K).  Valid for K >= 1.
std::vector<BoundCheck> lambda_sandwich(Dilatation k);

/// Linear-exponential bounds on eta: the two-sided exponential pair, the
/// two refinements with explicit coefficients, and at t=1 the lambda form
/// with the c_eta17 constant.
std::vector<BoundCheck> eta_linear_exp_bounds(Dilatation k, double t);

/// The eta sandwich: below the parameter threshold the absolute cap,
/// above it the lower sandwich with c1(t,K) > 9/20; the upper sandwich with
/// c2(t,K) < 21/16 holds for all t.
std::vector<BoundCheck> eta_sandwich(Dilatation k, double t);

/// Power-type bounds on eta/[t^{1/K}(1+t)^{K-1/K}]: the 16^{1-1/K} family,
/// the (1,2)-interval refinement, the A(r)/B(r) pair with its c-cap, the
/// plain exponential pair, the three-way chain, and at t=1 the lambda form.
std::vector<BoundCheck> eta_power_bounds(Dilatation k, double t);

/// Midpoint log-concavity/log-convexity pair:
/// eta_K^p eta_L^q < eta_{pK+qL} < (eta_K+1)^p (eta_L+1)^q - 1.
std::vector<BoundCheck> log_convexity_check(Dilatation k, Dilatation l,
                                            double t, double p);

/// log A(r) = mu(r') + log r',  log B(r) = (2/pi)K(r)K'(r) - mu(r') + log r.
struct PowerBoundConstants {
  double log_a;
  double log_b;
};
PowerBoundConstants power_bound_constants(const UnitRadius& r);

struct Range {
  double start = 0;
  double stop = 0;
  int count = 1;
  bool log_spaced = false;
};

struct GridSpec {
  std::optional<Range> k_range;          ///< literal K values; default grid if unset
  std::optional<Range> t_range;          ///< literal t values; default grid if unset
  std::vector<std::string> only;         ///< family filter (empty = all)
};

struct SkipRecord {
  std::string family;
  double k;
  double t;
  std::string reason;
};

struct FamilyStat {
  std::string name;
  std::string paper_ref;
  long points = 0;
  double min_margin = 0;
};

struct VerifyReport {
  std::vector<BoundCheck> checks;
  std::vector<SkipRecord> skips;
  std::vector<FamilyStat> families;
  long total = 0;
  long failed = 0;
};

/// Evaluates every applicable bound family over the grid.  Deterministic
/// output order regardless of `threads` (0 = hardware concurrency).
VerifyReport verify_grid(const GridSpec& spec, int threads = 0);

std::vector<double> make_points(const Range& r);

}  // namespace qcdist
