#pragma once

namespace qcdist {

/// A radius r in [0,1] carried together with its complement sqrt(1-r^2).
///
/// The complement is computed as sqrt((1-r)(1+r)), which keeps full relative
/// accuracy for r near 1, and both fields travel together so that downstream
/// code never has to reconstruct a tiny complement from a rounded radius.
class UnitRadius {
 public:
  /// Validates r in [0,1] and derives the complement.
  explicit UnitRadius(double r);

  /// Builds the radius whose complement is `r_prime`.
  static UnitRadius from_complement(double r_prime);

  /// Trusted constructor for callers that already hold an accurate pair.
  static UnitRadius with_complement(double r, double r_prime);

  double r() const noexcept { return r_; }
  double r_prime() const noexcept { return rp_; }

  UnitRadius complement() const noexcept { return UnitRadius(rp_, r_, 0); }

 private:
  UnitRadius(double r, double rp, int) noexcept : r_(r), rp_(rp) {}

  double r_;
  double rp_;
};

}  // namespace qcdist
