#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "iwasawa/modular.hpp"

namespace iwasawa {

using Rational = mpq_class;

/// Exact element a + b*alpha of Q(alpha), alpha a root of x^2 - a_p x + p.
class QuadraticScalar {
 public:
  QuadraticScalar() = default;
  QuadraticScalar(i64 ap, i64 p, Rational a = 0, Rational b = 0);

  i64 ap() const { return ap_; }
  i64 p() const { return p_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  /// a^2 + a b a_p + b^2 p.
  Rational norm() const;
  /// Image under alpha -> beta = a_p - alpha.
  QuadraticScalar conjugate() const;
  /// Throws NotDivisible for zero.
  QuadraticScalar inverse() const;
  /// (1/2) ord_p(norm); nullopt for zero.
  std::optional<Rational> valuation() const;

  QuadraticScalar operator+(const QuadraticScalar& o) const;
  QuadraticScalar operator-(const QuadraticScalar& o) const;
  QuadraticScalar operator*(const QuadraticScalar& o) const;
  QuadraticScalar operator/(const QuadraticScalar& o) const { return *this * o.inverse(); }
  QuadraticScalar operator-() const;
  QuadraticScalar operator*(const Rational& r) const;
  QuadraticScalar pow(int e) const;

  std::string to_string() const;

  friend bool operator==(const QuadraticScalar& x, const QuadraticScalar& y) {
    return x.ap_ == y.ap_ && x.p_ == y.p_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  void check_same(const QuadraticScalar& o) const;

  i64 ap_ = 0;
  i64 p_ = 3;
  Rational a_;
  Rational b_;
};

/// p-adic valuation of a nonzero rational.
Rational rational_ord_p(const Rational& x, i64 p);

enum class Root { Alpha, Beta };
inline const char* root_name(Root r) { return r == Root::Alpha ? "alpha" : "beta"; }

/// The field generated by the roots of x^2 - a_p x + p.
struct HeckeQuadField {
  i64 ap = 0;
  i64 p = 3;
  i64 discriminant = 0;
  bool within_weil_bound = true;  ///< a_p^2 < 4p
  /// Slopes of the Newton polygon of x^2 - a_p x + p, assigned to alpha then beta.
  Rational valuation_alpha;
  Rational valuation_beta;

  QuadraticScalar scalar(Rational a = 0, Rational b = 0) const { return {ap, p, std::move(a), std::move(b)}; }
  QuadraticScalar alpha() const { return scalar(0, 1); }
  QuadraticScalar beta() const { return scalar(ap, -1); }
  QuadraticScalar root(Root r) const { return r == Root::Alpha ? alpha() : beta(); }
};

/// Throws PreconditionError ("violates Weil bound") unless a_p^2 < 4p, and
/// for p not prime. With enforce_weil = false any a_p is accepted as long as
/// the polynomial stays irreducible and p | a_p, which keeps the roots
/// conjugate of valuation 1/2 (used for a_p = p = 5).
HeckeQuadField quad_field(i64 ap, i64 p, bool enforce_weil = true);

}  // namespace iwasawa
