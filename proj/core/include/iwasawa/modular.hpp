#pragma once

#include <cstdint>
#include <string>

namespace iwasawa {

using i64 = std::int64_t;
using u64 = std::uint64_t;
__extension__ typedef __int128 i128;

// Integer helpers modulo q. Inputs are expected in [0, q).
i64 mod_reduce(i64 x, i64 q);
i64 add_mod(i64 a, i64 b, i64 q);
i64 sub_mod(i64 a, i64 b, i64 q);
i64 mul_mod(i64 a, i64 b, i64 q);
i64 pow_mod(i64 base, u64 exp, i64 q);
/// Inverse of a modulo q; throws NotDivisible when gcd(a, q) != 1.
i64 inv_mod(i64 a, i64 q);
/// p-adic valuation of x, capped at `cap` (x == 0 gives cap).
int valuation(i64 x, i64 p, int cap);
/// p-adic valuation of a nonzero integer (uncapped).
int ord_p(i64 x, i64 p);
i64 ipow(i64 base, int exp);
bool is_prime(i64 n);
/// Legendre symbol (a | p) for an odd prime p.
int legendre(i64 a, i64 p);
/// Least positive quadratic non-residue modulo an odd prime p.
i64 least_nonresidue(i64 p);

/// Element of O/p^n, where O is Z_p (ext == 1) or Z_p[y]/(y^2 - c) (ext == 2).
/// For ext == 1 the `im` part is always zero.
struct Scalar {
  i64 re = 0;
  i64 im = 0;
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

/// The coefficient ring O/p^n together with its defining data.
class RingParams {
 public:
  RingParams() = default;
  /// Throws PreconditionError unless p is an odd prime, n >= 1, ext in {1, 2}
  /// and p^n fits comfortably in 62 bits.
  RingParams(int p, int n, int ext = 1);

  int p() const { return p_; }
  int n() const { return n_; }
  int ext() const { return ext_; }
  i64 modulus() const { return q_; }
  /// The non-residue c with y^2 = c (0 when ext == 1).
  i64 nonresidue() const { return c_; }

  RingParams with_ext(int ext) const { return RingParams(p_, n_, ext); }

  Scalar zero() const { return {}; }
  Scalar one() const { return {1 % q_, 0}; }
  Scalar from_int(i64 v) const { return {mod_reduce(v, q_), 0}; }
  /// Builds re + im*y; throws PreconditionError if ext == 1 and im != 0 mod q.
  Scalar make(i64 re, i64 im) const;

  Scalar add(Scalar a, Scalar b) const;
  Scalar sub(Scalar a, Scalar b) const;
  Scalar neg(Scalar a) const;
  Scalar mul(Scalar a, Scalar b) const;
  Scalar mul_int(Scalar a, i64 k) const;
  bool is_zero(Scalar a) const { return a.re == 0 && a.im == 0; }
  /// min(v(re), v(im)); n for zero. The extension is unramified so this is
  /// the valuation of O/p^n.
  int valuation(Scalar a) const;
  bool is_unit(Scalar a) const { return valuation(a) == 0; }
  /// Throws NotDivisible for non-units.
  Scalar inverse(Scalar a) const;

  std::string to_string() const;

  friend bool operator==(const RingParams& a, const RingParams& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.ext_ == b.ext_;
  }

 private:
  int p_ = 3;
  int n_ = 1;
  int ext_ = 1;
  i64 q_ = 3;
  i64 c_ = 0;
};

/// Throws ParameterMismatch with `what` if the two parameter sets differ.
void require_same(const RingParams& a, const RingParams& b, const char* what);

}  // namespace iwasawa
