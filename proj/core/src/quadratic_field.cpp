#include "iwasawa/quadratic_field.hpp"

#include <algorithm>
#include <cmath>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

int ord_p_mpz(mpz_class x, i64 p) {
  int v = 0;
  const mpz_class P(static_cast<long>(p));
  while (x != 0 && x % P == 0) {
    x /= P;
    ++v;
  }
  return v;
}

}  // namespace

QuadraticScalar::QuadraticScalar(i64 ap, i64 p, Rational a, Rational b)
    : ap_(ap), p_(p), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

void QuadraticScalar::check_same(const QuadraticScalar& o) const {
  if (ap_ != o.ap_ || p_ != o.p_) throw ParameterMismatch("quadratic scalars from different fields");
}

Rational QuadraticScalar::norm() const {
  return a_ * a_ + a_ * b_ * Rational(static_cast<long>(ap_)) + b_ * b_ * Rational(static_cast<long>(p_));
}

QuadraticScalar QuadraticScalar::conjugate() const {
  return {ap_, p_, a_ + b_ * Rational(static_cast<long>(ap_)), -b_};
}

QuadraticScalar QuadraticScalar::inverse() const {
  if (is_zero()) throw NotDivisible("inverse of zero in Q(alpha)");
  const Rational N = norm();
  QuadraticScalar c = conjugate();
  return {ap_, p_, c.a_ / N, c.b_ / N};
}

std::optional<Rational> QuadraticScalar::valuation() const {
  if (is_zero()) return std::nullopt;
  return rational_ord_p(norm(), p_) / 2;
}

QuadraticScalar QuadraticScalar::operator+(const QuadraticScalar& o) const {
  check_same(o);
  return {ap_, p_, a_ + o.a_, b_ + o.b_};
}

QuadraticScalar QuadraticScalar::operator-(const QuadraticScalar& o) const {
  check_same(o);
  return {ap_, p_, a_ - o.a_, b_ - o.b_};
}

QuadraticScalar QuadraticScalar::operator*(const QuadraticScalar& o) const {
  check_same(o);
  // alpha^2 = a_p alpha - p
  const Rational bd = b_ * o.b_;
  return {ap_, p_, a_ * o.a_ - bd * Rational(static_cast<long>(p_)),
          a_ * o.b_ + b_ * o.a_ + bd * Rational(static_cast<long>(ap_))};
}

QuadraticScalar QuadraticScalar::operator-() const { return {ap_, p_, -a_, -b_}; }

QuadraticScalar QuadraticScalar::operator*(const Rational& r) const { return {ap_, p_, a_ * r, b_ * r}; }

QuadraticScalar QuadraticScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  QuadraticScalar result(ap_, p_, 1, 0), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string QuadraticScalar::to_string() const { return a_.get_str() + " + (" + b_.get_str() + ")*alpha"; }

Rational rational_ord_p(const Rational& x, i64 p) {
  if (x == 0) throw PreconditionError("valuation of zero");
  return ord_p_mpz(x.get_num(), p) - ord_p_mpz(x.get_den(), p);
}

HeckeQuadField quad_field(i64 ap, i64 p, bool enforce_weil) {
  if (!is_prime(p)) throw PreconditionError("quad_field: p must be prime");
  const bool weil = ap * ap < 4 * p;
  if (!weil && !enforce_weil) {
    const i64 disc = ap * ap - 4 * p;
    const i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(disc))));
    bool square = false;
    for (i64 s = std::max<i64>(0, r - 1); s <= r + 1; ++s) square = square || s * s == disc;
    if (square) throw PreconditionError("quad_field: x^2 - a_p x + p is reducible");
    if (ap % p != 0) throw PreconditionError("quad_field: beyond the Weil bound only p | a_p is supported");
  }
  if (!weil && enforce_weil) throw PreconditionError("a_p = " + std::to_string(ap) + " violates Weil bound for p = " +
                                                std::to_string(p));
  HeckeQuadField F;
  F.ap = ap;
  F.p = p;
  F.discriminant = ap * ap - 4 * p;
  F.within_weil_bound = weil;
  if (ap % p == 0) {
    F.valuation_alpha = Rational(1, 2);
    F.valuation_beta = Rational(1, 2);
  } else {
    // Ordinary: one unit root and one root of valuation 1.
    F.valuation_alpha = 0;
    F.valuation_beta = 1;
  }
  return F;
}

}  // namespace iwasawa
