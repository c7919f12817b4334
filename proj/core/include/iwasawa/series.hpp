#pragma once

#include <optional>

#include "iwasawa/polynomial.hpp"

namespace iwasawa {

/// Element of O/p^n[[X]] truncated modulo an optional polynomial modulus
/// (typically omega_m, giving Lambda_n/(omega_m)). Without a modulus it is a
/// plain polynomial. The variable X corresponds to gamma - 1.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// Reduces `coeffs` by `modulus` when one is given; the modulus must have a
  /// unit leading coefficient.
  TruncatedSeries(RingParams params, Poly coeffs, std::optional<Poly> modulus = std::nullopt);

  /// Element of Lambda_n/(omega_level).
  static TruncatedSeries at_level(const RingParams& params, Poly coeffs, int level);

  const RingParams& params() const { return params_; }
  const Poly& coeffs() const { return coeffs_; }
  const std::optional<Poly>& modulus() const { return modulus_; }
  int degree() const { return iwasawa::degree(coeffs_); }
  bool is_zero() const { return coeffs_.empty(); }
  Scalar coefficient(int i) const { return coeff(coeffs_, i); }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(Scalar s) const;
  TruncatedSeries scaled(i64 k) const { return scaled(params_.from_int(k)); }
  /// Same coefficients reduced by a new modulus (or none).
  TruncatedSeries with_modulus(std::optional<Poly> modulus) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.params_ == b.params_ && a.coeffs_ == b.coeffs_ && a.modulus_ == b.modulus_;
  }

 private:
  void check_compatible(const TruncatedSeries& o, const char* op) const;

  RingParams params_;
  Poly coeffs_;
  std::optional<Poly> modulus_;
};

/// q with a = q * b. Without a modulus this is polynomial division (b needs a
/// unit leading coefficient); with a modulus it is a linear solve in the
/// quotient ring returning the canonical solution. Throws NotDivisible when no
/// quotient exists.
TruncatedSeries exact_divide(const TruncatedSeries& a, const TruncatedSeries& b);

/// Evaluation at the trivial character: X -> 0.
Scalar eval_trivial(const TruncatedSeries& f);

}  // namespace iwasawa
