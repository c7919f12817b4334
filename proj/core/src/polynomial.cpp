#include "iwasawa/polynomial.hpp"

#include <algorithm>

#include "iwasawa/errors.hpp"

namespace iwasawa {

void trim(Poly& f) {
  while (!f.empty() && f.back().re == 0 && f.back().im == 0) f.pop_back();
}

Poly trimmed(Poly f) {
  trim(f);
  return f;
}

int degree(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i].re != 0 || f[i].im != 0) return i;
  }
  return -1;
}

Scalar coeff(const Poly& f, int i) { return i >= 0 && i < static_cast<int>(f.size()) ? f[i] : Scalar{}; }

Poly poly_constant(const RingParams& R, i64 c) { return trimmed(Poly{R.from_int(c)}); }

Poly poly_monomial(const RingParams& R, int k, i64 c) {
  Poly f(static_cast<std::size_t>(k) + 1);
  f[k] = R.from_int(c);
  return trimmed(std::move(f));
}

Poly poly_from_ints(const RingParams& R, const std::vector<i64>& c) {
  Poly f;
  f.reserve(c.size());
  for (i64 v : c) f.push_back(R.from_int(v));
  return trimmed(std::move(f));
}

Poly poly_add(const RingParams& R, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = R.add(i < a.size() ? a[i] : Scalar{}, i < b.size() ? b[i] : Scalar{});
  return trimmed(std::move(r));
}

Poly poly_sub(const RingParams& R, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = R.sub(i < a.size() ? a[i] : Scalar{}, i < b.size() ? b[i] : Scalar{});
  return trimmed(std::move(r));
}

Poly poly_neg(const RingParams& R, const Poly& a) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = R.neg(a[i]);
  return trimmed(std::move(r));
}

Poly poly_scale(const RingParams& R, const Poly& a, Scalar s) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = R.mul(a[i], s);
  return trimmed(std::move(r));
}

Poly poly_mul(const RingParams& R, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (R.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (R.is_zero(b[j])) continue;
      r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
    }
  }
  return trimmed(std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const RingParams& R, const Poly& a, const Poly& b) {
  const int db = degree(b);
  if (db < 0) throw NotDivisible("division by the zero polynomial");
  if (!R.is_unit(b[db])) throw NotDivisible("divisor leading coefficient is not a unit");
  const Scalar lead_inv = R.inverse(b[db]);
  Poly rem = trimmed(a);
  const int da = degree(rem);
  if (da < db) return {Poly{}, rem};
  Poly quot(static_cast<std::size_t>(da - db) + 1);
  for (int i = da; i >= db; --i) {
    const Scalar c = rem[i];
    if (R.is_zero(c)) continue;
    const Scalar t = R.mul(c, lead_inv);
    quot[i - db] = t;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = R.sub(rem[i - db + j], R.mul(t, b[j]));
  }
  trim(quot);
  trim(rem);
  return {std::move(quot), std::move(rem)};
}

Poly poly_mod(const RingParams& R, const Poly& a, const Poly& b) {
  if (degree(a) < degree(b)) return trimmed(a);
  return poly_divmod(R, a, b).second;
}

Poly poly_exact_div(const RingParams& R, const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(R, a, b);
  if (!r.empty()) throw NotDivisible("polynomial is not divisible by the given divisor");
  return q;
}

Poly one_plus_x_pow(const RingParams& R, i64 e) {
  // Binomial row C(e, k) mod p^n, tracking the p-part separately so that only
  // units are ever inverted.
  const i64 q = R.modulus();
  const i64 p = R.p();
  Poly f(static_cast<std::size_t>(e) + 1);
  i64 unit = 1;
  int pexp = 0;
  f[0] = R.one();
  for (i64 k = 1; k <= e; ++k) {
    i64 num = e - k + 1;
    i64 den = k;
    while (num % p == 0) {
      num /= p;
      ++pexp;
    }
    while (den % p == 0) {
      den /= p;
      --pexp;
    }
    unit = mul_mod(unit, mod_reduce(num, q), q);
    unit = mul_mod(unit, inv_mod(den, q), q);
    f[k] = pexp >= R.n() ? Scalar{} : Scalar{mul_mod(unit, ipow(p, pexp), q), 0};
  }
  return trimmed(std::move(f));
}

bool poly_is_zero(const Poly& f) { return degree(f) < 0; }

}  // namespace iwasawa

namespace iwasawa {

ZVector poly_coords(const RingParams& R, const Poly& f, int terms) {
  const int e = R.ext();
  ZVector v(static_cast<std::size_t>(terms) * e, 0);
  for (int i = 0; i < terms && i < static_cast<int>(f.size()); ++i) {
    v[static_cast<std::size_t>(i) * e] = f[i].re;
    if (e == 2) v[static_cast<std::size_t>(i) * e + 1] = f[i].im;
  }
  return v;
}

Poly poly_from_coords(const RingParams& R, const ZVector& v) {
  const int e = R.ext();
  Poly f(v.size() / e);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i].re = mod_reduce(v[i * e], R.modulus());
    if (e == 2) f[i].im = mod_reduce(v[i * e + 1], R.modulus());
  }
  return trimmed(std::move(f));
}

LinearSystem multiplication_system(const RingParams& R, const Poly& b, const Poly& modulus, int unknown_degree) {
  const int N = degree(modulus);
  if (N < 0) throw NotDivisible("multiplication_system: zero modulus");
  std::vector<ZVector> columns;
  columns.reserve(static_cast<std::size_t>(unknown_degree) * R.ext());
  for (int j = 0; j < unknown_degree; ++j) {
    for (int e = 0; e < R.ext(); ++e) {
      Poly basis(static_cast<std::size_t>(j) + 1);
      basis[j] = e == 0 ? Scalar{1, 0} : Scalar{0, 1};
      columns.push_back(poly_coords(R, poly_mod(R, poly_mul(R, b, basis), modulus), N));
    }
  }
  return LinearSystem(columns, N * R.ext(), R.p(), R.n());
}

QuotientSolve solve_multiple(const RingParams& R, const Poly& b, const Poly& a, const Poly& modulus,
                             int unknown_degree) {
  const LinearSystem sys = multiplication_system(R, b, modulus, unknown_degree);
  QuotientSolve out;
  out.kernel = sys.kernel();
  const int N = degree(modulus);
  if (auto x = sys.solve(poly_coords(R, poly_mod(R, a, modulus), N))) out.solution = poly_from_coords(R, *x);
  return out;
}

}  // namespace iwasawa
