#include "iwasawa/series.hpp"

#include <utility>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"

namespace iwasawa {

TruncatedSeries::TruncatedSeries(RingParams params, Poly coeffs, std::optional<Poly> modulus)
    : params_(params), modulus_(std::move(modulus)) {
  for (auto& c : coeffs) c = params_.make(c.re, c.im);
  if (modulus_) {
    trim(*modulus_);
    if (modulus_->empty()) throw PreconditionError("TruncatedSeries: zero modulus");
    coeffs_ = poly_mod(params_, coeffs, *modulus_);
  } else {
    coeffs_ = trimmed(std::move(coeffs));
  }
}

TruncatedSeries TruncatedSeries::at_level(const RingParams& params, Poly coeffs, int level) {
  return TruncatedSeries(params, std::move(coeffs), omega_poly(params, level));
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o, const char* op) const {
  require_same(params_, o.params_, op);
  if (modulus_ != o.modulus_) throw ParameterMismatch(std::string(op) + ": moduli differ");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o, "add");
  TruncatedSeries r = *this;
  r.coeffs_ = poly_add(params_, coeffs_, o.coeffs_);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o, "sub");
  TruncatedSeries r = *this;
  r.coeffs_ = poly_sub(params_, coeffs_, o.coeffs_);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o, "mul");
  return TruncatedSeries(params_, poly_mul(params_, coeffs_, o.coeffs_), modulus_);
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  r.coeffs_ = poly_neg(params_, coeffs_);
  return r;
}

TruncatedSeries TruncatedSeries::scaled(Scalar s) const {
  TruncatedSeries r = *this;
  r.coeffs_ = poly_scale(params_, coeffs_, s);
  return r;
}

TruncatedSeries TruncatedSeries::with_modulus(std::optional<Poly> modulus) const {
  return TruncatedSeries(params_, coeffs_, std::move(modulus));
}

TruncatedSeries exact_divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same(a.params(), b.params(), "exact_divide");
  if (a.modulus() != b.modulus()) throw ParameterMismatch("exact_divide: moduli differ");
  const RingParams& R = a.params();
  if (!a.modulus()) return TruncatedSeries(R, poly_exact_div(R, a.coeffs(), b.coeffs()));
  const Poly& mod = *a.modulus();
  QuotientSolve s = solve_multiple(R, b.coeffs(), a.coeffs(), mod, degree(mod));
  if (!s.solution) throw NotDivisible("exact_divide: no quotient exists in the truncated ring");
  return TruncatedSeries(R, *s.solution, mod);
}

Scalar eval_trivial(const TruncatedSeries& f) { return f.coefficient(0); }

}  // namespace iwasawa
