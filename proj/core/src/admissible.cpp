#include "iwasawa/admissible.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "iwasawa/errors.hpp"
#include "iwasawa/parallel.hpp"
#include "iwasawa/random.hpp"

namespace iwasawa {

namespace {

i64 isqrt(i64 x) {
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

struct Invariants {
  mpz_class b2, b4, b6, b8, disc, c4, c6;
};

Invariants invariants(const std::array<i64, 5>& a) {
  const mpz_class a1(static_cast<long>(a[0])), a2(static_cast<long>(a[1])), a3(static_cast<long>(a[2])),
      a4(static_cast<long>(a[3])), a6(static_cast<long>(a[4]));
  Invariants I;
  I.b2 = a1 * a1 + 4 * a2;
  I.b4 = 2 * a4 + a1 * a3;
  I.b6 = a3 * a3 + 4 * a6;
  I.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
  I.c4 = I.b2 * I.b2 - 24 * I.b4;
  I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
  return I;
}

i64 mpz_mod(const mpz_class& x, i64 m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return static_cast<i64>(r.get_si());
}

i64 sqrt_mod(i64 a, i64 p) {
  // Tonelli-Shanks; a must be a square mod p.
  a = mod_reduce(a, p);
  if (a == 0) return 0;
  if (p % 4 == 3) return pow_mod(a, static_cast<u64>((p + 1) / 4), p);
  i64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  i64 z = 2;
  while (legendre(z, p) != -1) ++z;
  i64 m = s, c = pow_mod(z, static_cast<u64>(q), p), t = pow_mod(a, static_cast<u64>(q), p),
      r = pow_mod(a, static_cast<u64>((q + 1) / 2), p);
  while (t != 1) {
    i64 i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

// Short Weierstrass curve y^2 = x^3 + A x + B over F_l.
struct ShortCurve {
  i64 l, A, B;
};

struct Pt {
  i64 x = 0, y = 0;
  bool inf = true;
  friend bool operator==(const Pt&, const Pt&) = default;
};

Pt pt_neg(const ShortCurve& E, Pt P) {
  if (!P.inf) P.y = mod_reduce(-P.y, E.l);
  return P;
}

Pt pt_add(const ShortCurve& E, const Pt& P, const Pt& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  const i64 l = E.l;
  i64 lambda;
  if (P.x == Q.x) {
    if (add_mod(P.y, Q.y, l) == 0) return {};
    lambda = mul_mod(add_mod(mul_mod(3, mul_mod(P.x, P.x, l), l), E.A, l), inv_mod(mul_mod(2, P.y, l), l), l);
  } else {
    lambda = mul_mod(sub_mod(Q.y, P.y, l), inv_mod(sub_mod(Q.x, P.x, l), l), l);
  }
  const i64 x = sub_mod(sub_mod(mul_mod(lambda, lambda, l), P.x, l), Q.x, l);
  const i64 y = sub_mod(mul_mod(lambda, sub_mod(P.x, x, l), l), P.y, l);
  return {x, y, false};
}

Pt pt_mul(const ShortCurve& E, i64 k, Pt P) {
  Pt R;
  if (k < 0) {
    k = -k;
    P = pt_neg(E, P);
  }
  while (k > 0) {
    if (k & 1) R = pt_add(E, R, P);
    P = pt_add(E, P, P);
    k >>= 1;
  }
  return R;
}

Pt random_point(const ShortCurve& E, SplitMix64& rng) {
  for (;;) {
    const i64 x = rng.below(E.l);
    const i64 f = add_mod(add_mod(mul_mod(mul_mod(x, x, E.l), x, E.l), mul_mod(E.A, x, E.l), E.l), E.B, E.l);
    if (f == 0) return {x, 0, false};
    if (legendre(f, E.l) == 1) return {x, sqrt_mod(f, E.l), false};
  }
}

// All M in [lo, hi] with M P = O.
std::vector<i64> bsgs_orders(const ShortCurve& E, const Pt& P, i64 lo, i64 hi) {
  const i64 width = hi - lo + 1;
  const i64 s = isqrt(width - 1) + 1;
  auto key = [&](const Pt& Q) { return Q.inf ? -1 : Q.x * E.l + Q.y; };
  std::unordered_multimap<i64, i64> baby;
  baby.reserve(static_cast<std::size_t>(s));
  Pt Q;
  for (i64 j = 0; j < s; ++j) {
    baby.emplace(key(Q), j);
    Q = pt_add(E, Q, P);
  }
  const Pt S = Q;  // s P
  std::vector<i64> out;
  Pt R = pt_mul(E, lo, P);
  for (i64 i = 0; lo + i * s <= hi; ++i) {
    auto [b, e] = baby.equal_range(key(pt_neg(E, R)));
    for (auto it = b; it != e; ++it) {
      const i64 M = lo + i * s + it->second;
      if (M <= hi) out.push_back(M);
    }
    R = pt_add(E, R, S);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CurveData CurveData::make(std::array<i64, 5> a, i64 conductor, std::vector<std::pair<i64, int>> factors) {
  if (invariants(a).disc == 0) throw PreconditionError("curve is singular (discriminant 0)");
  CurveData c;
  c.a = a;
  c.conductor = conductor;
  c.conductor_factors = std::move(factors);
  return c;
}

i64 CurveData::discriminant_mod(i64 m) const { return mpz_mod(invariants(a).disc, m); }

i64 a_ell_naive(const CurveData& curve, i64 ell) {
  if (!is_prime(ell)) throw PreconditionError("a_ell: ell must be prime");
  if (!curve.good_reduction_at(ell)) throw PreconditionError("a_ell: bad reduction at " + std::to_string(ell));
  std::array<i64, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = mod_reduce(curve.a[i], ell);
  const i64 a1 = c[0], a2 = c[1], a3 = c[2], a4 = c[3], a6 = c[4];
  i64 points = 1;
  if (ell == 2) {
    for (i64 x = 0; x < 2; ++x)
      for (i64 y = 0; y < 2; ++y) {
        const i64 lhs = (y * y + a1 * x * y + a3 * y) % 2;
        const i64 rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
        if (lhs == rhs) ++points;
      }
    return ell + 1 - points;
  }
  std::vector<char> square(static_cast<std::size_t>(ell), 0);
  for (i64 y = 0; y < ell; ++y) square[static_cast<std::size_t>(mul_mod(y, y, ell))] = 1;
  for (i64 x = 0; x < ell; ++x) {
    // (2y + a1 x + a3)^2 = 4 (x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
    const i64 cubic = add_mod(mul_mod(add_mod(mul_mod(add_mod(x, a2, ell), x, ell), a4, ell), x, ell), a6, ell);
    const i64 lin = add_mod(mul_mod(a1, x, ell), a3, ell);
    const i64 f = add_mod(mul_mod(4, cubic, ell), mul_mod(lin, lin, ell), ell);
    if (f == 0)
      points += 1;
    else if (square[static_cast<std::size_t>(f)])
      points += 2;
  }
  return ell + 1 - points;
}

i64 a_ell_bsgs(const CurveData& curve, i64 ell) {
  if (!is_prime(ell) || ell <= 3) throw PreconditionError("a_ell_bsgs: ell must be a prime > 3");
  if (!curve.good_reduction_at(ell)) throw PreconditionError("a_ell: bad reduction at " + std::to_string(ell));
  const Invariants I = invariants(curve.a);
  const ShortCurve E{ell, mod_reduce(-27 * mpz_mod(I.c4, ell), ell), mod_reduce(-54 * mpz_mod(I.c6, ell), ell)};
  const i64 d = least_nonresidue(ell);
  const ShortCurve T{ell, mul_mod(E.A, mul_mod(d, d, ell), ell),
                     mul_mod(E.B, mul_mod(mul_mod(d, d, ell), d, ell), ell)};
  const i64 r = isqrt(4 * ell);
  const i64 lo = ell + 1 - r - 1, hi = ell + 1 + r + 1;
  std::vector<i64> candidates;
  bool first = true;
  SplitMix64 rng(derive_seed(static_cast<u64>(ell), 0xA11));
  for (int trial = 0; trial < 256; ++trial) {
    const bool twist = trial % 2 == 1;
    const ShortCurve& C = twist ? T : E;
    std::vector<i64> orders = bsgs_orders(C, random_point(C, rng), lo, hi);
    if (twist)
      for (auto& M : orders) M = 2 * ell + 2 - M;
    std::sort(orders.begin(), orders.end());
    if (first) {
      candidates = orders;
      first = false;
    } else {
      std::vector<i64> both;
      std::set_intersection(candidates.begin(), candidates.end(), orders.begin(), orders.end(),
                            std::back_inserter(both));
      candidates = std::move(both);
    }
    if (candidates.empty()) throw InternalError("a_ell_bsgs: no group order is consistent");
    if (candidates.size() == 1) return ell + 1 - candidates.front();
  }
  throw InternalError("a_ell_bsgs: group order not determined at " + std::to_string(ell));
}

i64 a_ell(const CurveData& curve, i64 ell) {
  if (ell >= kPointCountCap) throw PreconditionError("a_ell: ell exceeds the cap 2^24");
  const i64 a = ell < kNaiveCountLimit || ell <= 3 ? a_ell_naive(curve, ell) : a_ell_bsgs(curve, ell);
  if (a * a > 4 * ell) throw InternalError("a_ell violates the Weil bound at " + std::to_string(ell));
  return a;
}

int kronecker(i64 a, i64 n) {
  if (n <= 0) throw PreconditionError("kronecker: n must be positive");
  int t = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    const i64 r = mod_reduce(a, 8);
    if (r == 3 || r == 5) t = -t;
  }
  a = mod_reduce(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

const char* splitting_name(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

Splitting splitting(i64 ell, i64 D) {
  const int k = kronecker(D, ell);
  return k == 0 ? Splitting::Ramified : (k == 1 ? Splitting::Split : Splitting::Inert);
}

bool is_inert(i64 ell, i64 D) { return splitting(ell, D) == Splitting::Inert; }

namespace {

bool squarefree(i64 m) {
  m = m < 0 ? -m : m;
  for (i64 q = 2; q * q <= m; ++q) {
    if (m % (q * q) == 0) return false;
  }
  return true;
}

std::vector<std::pair<i64, int>> factor(i64 m) {
  std::vector<std::pair<i64, int>> f;
  for (i64 q = 2; q * q <= m; ++q) {
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    if (e) f.emplace_back(q, e);
  }
  if (m > 1) f.emplace_back(m, 1);
  return f;
}

}  // namespace

bool is_fundamental_discriminant(i64 D) {
  if (D == 0 || D == 1) return false;
  const i64 r = mod_reduce(D, 4);
  if (r == 1) return squarefree(D);
  if (r != 0) return false;
  const i64 m = D / 4;
  const i64 rm = mod_reduce(m, 4);
  return (rm == 2 || rm == 3) && squarefree(m);
}

i64 class_number(i64 D) {
  if (D >= 0 || mod_reduce(D, 4) > 1) throw PreconditionError("class_number: D must be a negative discriminant");
  const i64 absD = -D;
  i64 h = 0;
  for (i64 a = 1; 3 * a * a <= absD; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      const i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

QuadFieldData QuadFieldData::make(i64 D, const CurveData& curve) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw PreconditionError("D = " + std::to_string(D) + " is not a negative fundamental discriminant");
  QuadFieldData K;
  K.D = D;
  auto factors = curve.conductor_factors;
  if (factors.empty() && curve.conductor > 1) factors = factor(curve.conductor);
  for (const auto& [q, e] : factors) {
    switch (splitting(q, D)) {
      case Splitting::Ramified:
        throw PreconditionError("gcd(D, N_0) != 1: " + std::to_string(q) + " ramifies");
      case Splitting::Split:
        K.n_plus *= ipow(q, e);
        break;
      case Splitting::Inert:
        if (e != 1) throw PreconditionError("N^- is not squarefree at " + std::to_string(q));
        K.n_minus *= q;
        K.n_minus_primes.push_back(q);
        break;
    }
  }
  if (K.n_minus_primes.size() % 2 != 0)
    throw PreconditionError("N^- has an odd number of prime factors");
  if (-D < kClassNumberTableBound) K.class_number = iwasawa::class_number(D);
  return K;
}

const char* reason_code(AdmissibilityReason r) {
  switch (r) {
    case AdmissibilityReason::DividesPN: return "i:divides_pN";
    case AdmissibilityReason::NotInert: return "ii:split";
    case AdmissibilityReason::Ramified: return "ii:ramified";
    case AdmissibilityReason::PDividesEllSquaredMinusOne: return "iii:p_divides_l2_minus_1";
    case AdmissibilityReason::PowerDoesNotDivide: return "iv:pn_does_not_divide";
  }
  return "?";
}

namespace {

void check_p_n(int p, int n) {
  if (p < 5 || !is_prime(p)) throw PreconditionError("admissibility needs a prime p >= 5");
  if (n < 1) throw PreconditionError("admissibility needs n >= 1");
}

bool condition_iv(i64 ell, i64 a, int p, int n) {
  const i128 v = static_cast<i128>(ell + 1) * (ell + 1) - static_cast<i128>(a) * a;
  return v % ipow(p, n) == 0;
}

}  // namespace

AdmissibilityDecision is_n_admissible(i64 ell, const CurveData& curve, const QuadFieldData& K, int p, int n) {
  check_p_n(p, n);
  if (!is_prime(ell)) throw PreconditionError("is_n_admissible: ell must be prime");
  AdmissibilityDecision d;
  d.ell = ell;
  const bool divides = ell == p || (curve.conductor != 0 && curve.conductor % ell == 0);
  if (divides) d.reasons.push_back(AdmissibilityReason::DividesPN);
  d.splitting = splitting(ell, K.D);
  if (d.splitting == Splitting::Split) d.reasons.push_back(AdmissibilityReason::NotInert);
  if (d.splitting == Splitting::Ramified) d.reasons.push_back(AdmissibilityReason::Ramified);
  const i64 r = ell % p;
  if (r * r % p == 1) d.reasons.push_back(AdmissibilityReason::PDividesEllSquaredMinusOne);
  if (d.reasons.empty()) {
    d.a_ell = a_ell(curve, ell);
    if (!condition_iv(ell, *d.a_ell, p, n)) d.reasons.push_back(AdmissibilityReason::PowerDoesNotDivide);
  }
  d.admissible = d.reasons.empty();
  if (p == 5) d.warnings.emplace_back("the large-image hypothesis on the mod p representation is not checked for p = 5");
  if (!K.class_number)
    d.warnings.emplace_back("class number of K not tabulated; (cp) left to the caller");
  else if (*K.class_number % p == 0)
    d.warnings.emplace_back("p divides the class number of K; (cp) fails");
  return d;
}

EpsilonSign epsilon_from_trace(i64 ell, i64 a, int p, int n) {
  const i64 q = ipow(p, n);
  const bool plus = mod_reduce(ell + 1 - a, q) == 0;
  const bool minus = mod_reduce(ell + 1 + a, q) == 0;
  if (plus && minus) return {1, true};
  if (plus) return {1, false};
  if (minus) return {-1, false};
  throw InternalError("epsilon: neither sign works at " + std::to_string(ell) + " (not admissible)");
}

EpsilonSign epsilon_sign(i64 ell, const CurveData& curve, int p, int n) {
  return epsilon_from_trace(ell, a_ell(curve, ell), p, n);
}

std::vector<i64> primes_below(i64 bound) {
  std::vector<i64> out;
  if (bound <= 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(bound), 0);
  for (i64 i = 2; i < bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (i64 j = i * i; j < bound; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return out;
}

namespace {

constexpr std::size_t kBlock = 2048;

template <class PerPrime>
auto over_prime_blocks(const std::vector<i64>& primes, int jobs, PerPrime f) {
  const std::size_t blocks = (primes.size() + kBlock - 1) / kBlock;
  return parallel_map(blocks, jobs, [&](std::size_t b) {
    std::vector<decltype(f(i64{}))> out;
    for (std::size_t i = b * kBlock; i < std::min(primes.size(), (b + 1) * kBlock); ++i) out.push_back(f(primes[i]));
    return out;
  });
}

}  // namespace

TraceTable::TraceTable(const CurveData& curve, i64 bound, int jobs) : bound_(bound), primes_(primes_below(bound)) {
  if (bound > kPointCountCap) throw PreconditionError("TraceTable: bound exceeds 2^24");
  auto blocks = over_prime_blocks(primes_, jobs, [&](i64 ell) -> std::pair<i64, char> {
    if (!curve.good_reduction_at(ell)) return {0, 0};
    return {a_ell(curve, ell), 1};
  });
  for (auto& b : blocks) {
    for (auto& [a, g] : b) {
      traces_.push_back(a);
      good_.push_back(g);
    }
  }
}

bool TraceTable::contains(i64 ell) const { return std::binary_search(primes_.begin(), primes_.end(), ell); }

i64 TraceTable::at(i64 ell) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), ell);
  if (it == primes_.end() || *it != ell) throw PreconditionError("TraceTable: " + std::to_string(ell) + " not tabulated");
  const auto i = static_cast<std::size_t>(it - primes_.begin());
  if (!good_[i]) throw PreconditionError("TraceTable: bad reduction at " + std::to_string(ell));
  return traces_[i];
}

std::vector<AdmissiblePrime> scan_admissible(const CurveData& curve, const QuadFieldData& K, int p, int n, i64 bound,
                                             int jobs, const TraceTable* cache) {
  check_p_n(p, n);
  if (bound > kPointCountCap) throw PreconditionError("scan_admissible: bound exceeds 2^24");
  const std::vector<i64> primes = primes_below(bound);
  auto blocks = over_prime_blocks(primes, jobs, [&](i64 ell) -> std::optional<AdmissiblePrime> {
    if (ell == p || (curve.conductor != 0 && curve.conductor % ell == 0)) return std::nullopt;
    if (!is_inert(ell, K.D)) return std::nullopt;
    if ((ell % p) * (ell % p) % p == 1) return std::nullopt;
    const i64 a = cache && cache->contains(ell) ? cache->at(ell) : a_ell(curve, ell);
    if (!condition_iv(ell, a, p, n)) return std::nullopt;
    const EpsilonSign e = epsilon_from_trace(ell, a, p, n);
    if (e.degenerate) throw InternalError("epsilon is not unique at admissible prime " + std::to_string(ell));
    return AdmissiblePrime{ell, e.sign, e.degenerate};
  });
  std::vector<AdmissiblePrime> out;
  for (auto& b : blocks)
    for (auto& e : b)
      if (e) out.push_back(*e);
  return out;
}

const char* parity_name(ParityClass c) { return c == ParityClass::Definite ? "DEFINITE" : "INDEFINITE"; }

ParityClass classify_S(const std::vector<i64>& S, const QuadFieldData& K) {
  std::set<i64> seen;
  int eps_S = 1;
  for (i64 q : S) {
    if (!seen.insert(q).second) throw PreconditionError("classify_S: repeated prime " + std::to_string(q));
    if (!is_inert(q, K.D)) throw PreconditionError("classify_S: " + std::to_string(q) + " is not inert in K");
    eps_S *= kronecker(K.D, q);
  }
  int eps_SN = eps_S;
  for (i64 q : K.n_minus_primes) eps_SN *= kronecker(K.D, q);
  return eps_S == -1 && eps_SN == -1 ? ParityClass::Definite : ParityClass::Indefinite;
}

AdmissibleProduct make_product(std::vector<i64> primes, int n, const QuadFieldData& K) {
  std::sort(primes.begin(), primes.end());
  AdmissibleProduct S;
  S.parity = classify_S(primes, K);
  S.primes = std::move(primes);
  S.n = n;
  return S;
}

}  // namespace iwasawa
