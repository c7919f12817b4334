#include "iwasawa/modular.hpp"

#include <algorithm>
#include <numeric>

#include "iwasawa/errors.hpp"

namespace iwasawa {

i64 mod_reduce(i64 x, i64 q) {
  i64 r = x % q;
  return r < 0 ? r + q : r;
}

i64 add_mod(i64 a, i64 b, i64 q) {
  i64 s = a + b;
  return s >= q ? s - q : s;
}

i64 sub_mod(i64 a, i64 b, i64 q) {
  i64 s = a - b;
  return s < 0 ? s + q : s;
}

i64 mul_mod(i64 a, i64 b, i64 q) {
  if (q < (i64{1} << 31)) return static_cast<i64>(static_cast<u64>(a) * static_cast<u64>(b) % static_cast<u64>(q));
  return static_cast<i64>(static_cast<i128>(a) * b % q);
}

i64 pow_mod(i64 base, u64 exp, i64 q) {
  i64 result = 1 % q;
  base = mod_reduce(base, q);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1U;
  }
  return result;
}

i64 inv_mod(i64 a, i64 q) {
  i64 old_r = mod_reduce(a, q), r = q;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 quot = old_r / r;
    i64 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw NotDivisible("element is not invertible modulo " + std::to_string(q));
  return mod_reduce(old_s, q);
}

int valuation(i64 x, i64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (v < cap && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int ord_p(i64 x, i64 p) {
  if (x == 0) throw PreconditionError("ord_p of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (i64 d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

int legendre(i64 a, i64 p) {
  a = mod_reduce(a, p);
  if (a == 0) return 0;
  return pow_mod(a, static_cast<u64>((p - 1) / 2), p) == 1 ? 1 : -1;
}

i64 least_nonresidue(i64 p) {
  for (i64 c = 2; c < p; ++c) {
    if (legendre(c, p) == -1) return c;
  }
  throw PreconditionError("no quadratic non-residue modulo " + std::to_string(p));
}

RingParams::RingParams(int p, int n, int ext) : p_(p), n_(n), ext_(ext) {
  if (p < 3 || !is_prime(p)) throw PreconditionError("p must be an odd prime, got " + std::to_string(p));
  if (n < 1) throw PreconditionError("precision n must be >= 1");
  if (ext != 1 && ext != 2) throw PreconditionError("extension degree must be 1 or 2");
  i64 q = 1;
  for (int i = 0; i < n; ++i) {
    if (q > (i64{1} << 61) / p) throw PreconditionError("p^n too large");
    q *= p;
  }
  q_ = q;
  c_ = ext == 2 ? least_nonresidue(p) : 0;
}

Scalar RingParams::make(i64 re, i64 im) const {
  Scalar s{mod_reduce(re, q_), mod_reduce(im, q_)};
  if (ext_ == 1 && s.im != 0) throw PreconditionError("extension coordinate given for ext = 1");
  return s;
}

Scalar RingParams::add(Scalar a, Scalar b) const { return {add_mod(a.re, b.re, q_), add_mod(a.im, b.im, q_)}; }

Scalar RingParams::sub(Scalar a, Scalar b) const { return {sub_mod(a.re, b.re, q_), sub_mod(a.im, b.im, q_)}; }

Scalar RingParams::neg(Scalar a) const { return {sub_mod(0, a.re, q_), sub_mod(0, a.im, q_)}; }

Scalar RingParams::mul(Scalar a, Scalar b) const {
  if (ext_ == 1) return {mul_mod(a.re, b.re, q_), 0};
  // (a + a'y)(b + b'y) = ab + c a'b' + (ab' + a'b) y
  i64 re = add_mod(mul_mod(a.re, b.re, q_), mul_mod(c_, mul_mod(a.im, b.im, q_), q_), q_);
  i64 im = add_mod(mul_mod(a.re, b.im, q_), mul_mod(a.im, b.re, q_), q_);
  return {re, im};
}

Scalar RingParams::mul_int(Scalar a, i64 k) const {
  i64 kk = mod_reduce(k, q_);
  return {mul_mod(a.re, kk, q_), mul_mod(a.im, kk, q_)};
}

int RingParams::valuation(Scalar a) const {
  return std::min(iwasawa::valuation(a.re, p_, n_), iwasawa::valuation(a.im, p_, n_));
}

Scalar RingParams::inverse(Scalar a) const {
  if (ext_ == 1) return {inv_mod(a.re, q_), 0};
  // (a + by)^{-1} = (a - by) / (a^2 - c b^2)
  i64 norm = sub_mod(mul_mod(a.re, a.re, q_), mul_mod(c_, mul_mod(a.im, a.im, q_), q_), q_);
  i64 ninv = inv_mod(norm, q_);
  return {mul_mod(a.re, ninv, q_), mul_mod(sub_mod(0, a.im, q_), ninv, q_)};
}

std::string RingParams::to_string() const {
  return "(p=" + std::to_string(p_) + ", n=" + std::to_string(n_) + ", ext=" + std::to_string(ext_) + ")";
}

void require_same(const RingParams& a, const RingParams& b, const char* what) {
  if (!(a == b)) throw ParameterMismatch(std::string(what) + ": ring parameters differ " + a.to_string() + " vs " + b.to_string());
}

}  // namespace iwasawa
