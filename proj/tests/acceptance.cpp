#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iwasawa/admissible.hpp"
#include "iwasawa/bipartite.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/ideals.hpp"
#include "iwasawa/local_points.hpp"
#include "iwasawa/random.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/signed_decomposition.hpp"
#include "iwasawa/stabilization.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace iwasawa;
using testing_util::ints;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> body;
};

// Collects failures without stopping at the first one.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += !ok;
  }
  Outcome outcome(std::string extra = {}) const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failed_) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    if (!extra.empty()) s << "; " << extra;
    return {failed_ == 0, s.str()};
  }

 private:
  long checks_ = 0;
  long failed_ = 0;
  std::vector<std::string> failures_;
};

std::string where(int p, int n, int m) {
  return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " m=" + std::to_string(m);
}

TruncatedSeries plain(const RingParams& R, int terms, SplitMix64& rng) { return {R, random_poly(R, terms, rng)}; }

int signed_terms(const RingParams& R, int M) { return degree(omega_poly(R, M)); }

// ---------------------------------------------------------------------------

Outcome omega_factorization() {
  Tally t;
  for (int p : {3, 5, 7}) {
    for (int n = 1; n <= 3; ++n) {
      const RingParams R(p, n);
      const i64 q = R.modulus();
      for (int m = 0; m <= 4; ++m) {
        const Poly w = omega_poly(R, m);
        const Poly tp = omega_tilde_poly(R, m, Sign::Plus), tm = omega_tilde_poly(R, m, Sign::Minus);
        t.check(ints(w) == oracle::omega(p, m, q), "omega oracle " + where(p, n, m));
        t.check(ints(tp) == oracle::tilde(p, m, 0, q), "tilde+ oracle " + where(p, n, m));
        t.check(ints(tm) == oracle::tilde(p, m, 1, q), "tilde- oracle " + where(p, n, m));
        t.check(poly_mul(R, poly_monomial(R, 1), poly_mul(R, tp, tm)) == w, "X w~+ w~- " + where(p, n, m));
        for (Sign s : {Sign::Plus, Sign::Minus}) {
          const auto [quo, rem] = poly_divmod(R, w, omega_tilde_poly(R, m, opposite(s)));
          t.check(rem.empty() && quo == omega_signed_poly(R, m, s), "w^s " + where(p, n, m));
        }
      }
    }
  }
  return t.outcome();
}

Outcome transition_law() {
  Tally t;
  SplitMix64 rng(derive_seed(42, 2));
  for (int p : {3, 5, 7}) {
    for (int n = 1; n <= 3; ++n) {
      const RingParams R(p, n);
      for (int m = 0; m <= 4; ++m) {
        for (int k = 0; k < 200; ++k) {
          const GroupRingElement x = random_group_element(R, m, rng);
          t.check(project(norm_xi(x)) == x.scaled(R.from_int(p)), where(p, n, m));
        }
      }
    }
  }
  return t.outcome();
}

Outcome pm_round_trip() {
  Tally t;
  SplitMix64 rng(derive_seed(42, 3));
  for (int p : {3, 5}) {
    for (int n = 1; n <= 2; ++n) {
      const RingParams R(p, n);
      for (int M = 1; M <= 3; ++M) {
        for (int k = 0; k < 50; ++k) {
          const auto a = plain(R, signed_terms(R, M) + 3, rng), b = plain(R, signed_terms(R, M) + 3, rng);
          const ThetaFamily fam = pm_synthesize(a, b, R, M);
          t.check(check_norm_relation(fam).passed, "relation " + where(p, n, M));
          t.check(check_norm_relation_ap_zero(fam).passed, "a_p = 0 relation " + where(p, n, M));
          t.check(annihilator_check(fam).passed, "annihilation " + where(p, n, M));
          const SignedPair pair = pm_extract(fam);
          t.check(pair.first.at(0) == a.with_modulus(omega_signed_poly(R, M, Sign::Plus)), "plus " + where(p, n, M));
          t.check(pair.second.at(0) == b.with_modulus(omega_signed_poly(R, M, Sign::Minus)), "minus " + where(p, n, M));
        }
      }
    }
  }
  return t.outcome();
}

Outcome sprung_round_trip() {
  Tally t;
  SplitMix64 rng(derive_seed(42, 4));
  long kernel_dims = 0;
  for (int p : {3, 5}) {
    for (i64 ap : {i64{0}, i64{p}}) {
      for (int n = 1; n <= 2; ++n) {
        const RingParams R(p, n);
        for (int M = 1; M <= 3; ++M) {
          const SprungDecomposer dec(R, ap, M);
          for (int k = 0; k < 20; ++k) {
            const auto a = plain(R, signed_terms(R, M), rng), b = plain(R, signed_terms(R, M), rng);
            const ThetaFamily fam = sprung_synthesize(a, b, R, ap, M);
            t.check(check_norm_relation(fam).passed, "relation ap=" + std::to_string(ap) + " " + where(p, n, M));
            const SignedPair pair = dec.decompose(fam);
            kernel_dims += static_cast<long>(pair.kernel_basis.size());
            t.check(coset_contains(pair, 0, a, b), "coset ap=" + std::to_string(ap) + " " + where(p, n, M));
          }
        }
      }
    }
  }
  return t.outcome("total kernel generators " + std::to_string(kernel_dims));
}

ThetaFamily random_family(const RingParams& R, i64 ap, int M, SplitMix64& rng) {
  const auto a = plain(R, signed_terms(R, M), rng), b = plain(R, signed_terms(R, M), rng);
  return ap == 0 && rng.below(i64{2}) == 0 ? pm_synthesize(a, b, R, M) : sprung_synthesize(a, b, R, ap, M);
}

Outcome stabilization_identities() {
  Tally t;
  SplitMix64 rng(derive_seed(42, 5));
  for (auto [ap, p] : std::vector<std::pair<i64, int>>{{0, 5}, {0, 7}, {5, 5}}) {
    const HeckeQuadField F = quad_field(ap, p, ap * ap < 4 * p);
    const auto a = F.alpha(), b = F.beta();
    const std::string cfg = "(" + std::to_string(ap) + "," + std::to_string(p) + ")";
    for (int k = 0; k < 20; ++k) {
      const RingParams R(p, 1 + k % 2);
      const ThetaFamily fam = random_family(R, ap, 2, rng);
      const auto l1 = QuadGroupElement::lift(F, fam.at(1)), l0 = QuadGroupElement::lift(F, fam.at(0));
      t.check(stabilize(fam, F, Root::Alpha, 1) * (a * a) - stabilize(fam, F, Root::Beta, 1) * (b * b) == l1 * (a - b),
              "level 1 " + cfg);
      t.check(stabilize(fam, F, Root::Alpha, 0) * a - stabilize(fam, F, Root::Beta, 0) * b == l0 * (a - b),
              "level 0 " + cfg);
    }
    const i64 inert_expected = ap * ap - p - 1, split_expected = 1 - 2 * ap + ap * ap - p;
    for (const IdentityReport& rep : {leading_identity_inert(F), leading_identity_split(F)}) {
      const i64 expected = rep.variant == "inert" ? inert_expected : split_expected;
      t.check(rep.passed, rep.variant + " identity " + cfg);
      t.check(rep.unit_factor_expected == expected, rep.variant + " expected factor " + cfg);
      t.check(rep.unit_factor == F.scalar(Rational(static_cast<long>(expected))), rep.variant + " factor " + cfg);
      if (ap % p == 0) {
        t.check(rep.unit_factor_is_unit, rep.variant + " unit " + cfg);
        t.check(rep.unit_factor_valuation && *rep.unit_factor_valuation == 0, rep.variant + " valuation " + cfg);
      }
    }
  }
  return t.outcome();
}

Outcome plus_vanishing() {
  Tally t;
  SplitMix64 rng(derive_seed(42, 6));
  int built = 0;
  for (int k = 0; k < 50; ++k) {
    const int p = k % 2 == 0 ? 3 : 5;
    const RingParams R(p, 1 + (k / 2) % 2);
    const int M = 1 + k % 3;
    ThetaFamily fam;
    if (k % 2 == 0) {
      const Poly plus = poly_mul(R, poly_monomial(R, 1), random_poly(R, signed_terms(R, M), rng));
      fam = pm_synthesize(TruncatedSeries(R, plus), plain(R, signed_terms(R, M), rng), R, M);
    } else {
      // a_p = 0 families built through the sharp/flat synthesis, kept when lambda_0(1) = 0
      do {
        fam = sprung_synthesize(plain(R, signed_terms(R, M), rng), plain(R, signed_terms(R, M), rng), R, 0, M);
      } while (!R.is_zero(eval_trivial(fam.at(0))));
    }
    ++built;
    const auto rep = plus_vanishing_check(fam);
    const std::string w = "instance " + std::to_string(k);
    t.check(rep.premise, w + " premise");
    t.check(rep.plus_vanishes && R.is_zero(rep.plus_trivial), w + " plus");
    t.check(rep.minus_matches && rep.minus_trivial == R.neg(rep.lambda1_trivial), w + " minus");
    t.check(rep.passed, w);
  }
  return t.outcome(std::to_string(built) + " instances");
}

Outcome local_points() {
  Tally t;
  int literal_failures = 0;
  for (int n = 1; n <= 2; ++n) {
    const RingParams R(5, n, 2);
    for (int M = 1; M <= 3; ++M) {
      const u64 seed = derive_seed(42, static_cast<u64>(70 + 10 * n + M));
      const auto sys = generate_system(R, M, 2, seed);
      const auto inv = verify_invariants(sys);
      t.check(inv.passed && inv.pairing_perfect && inv.trace_relations && inv.base_relation && inv.unit_condition,
              "invariants n=" + std::to_string(n) + " M=" + std::to_string(M));
      for (int m = 0; m <= M; ++m) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
          const std::string w = where(5, n, m) + " M=" + std::to_string(M) + " " + sign_name(s);
          const auto c = check_image_containment(sys, m, s, 100, derive_seed(seed, static_cast<u64>(2 * m + (s == Sign::Minus))));
          t.check(c.passed && c.failures == 0 && c.trials == 100, "containment " + w);
          const auto k = kernel_probe(sys, m, s);
          t.check(k.equal && k.rank_nullity && k.orthogonal, "kernel " + w);
          if (M == 3 && n == 1)
            literal_failures += !check_image_containment(sys, m, s, 100, seed, ContainmentConvention::Literal).passed;
        }
      }
    }
  }
  // negative control: corrupt d_2 of a valid system
  const RingParams R(5, 1, 2);
  auto sys = generate_system(R, 2, 2, derive_seed(42, 79));
  sys.points[2][0] = sys.points[2][0] + GroupRingElement::identity(R, 2);
  t.check(!verify_invariants(sys).passed, "corrupted system rejected by invariants");
  t.check(!check_image_containment(sys, 2, Sign::Plus, 100, 7).passed, "corrupted system fails containment");
  return t.outcome("literal-sign convention fails at " + std::to_string(literal_failures) + " of 8 (m, sign) at M=3");
}

Outcome admissibility() {
  Tally t;
  const std::array<i64, 5> a{0, 0, 1, -1, 0};
  const auto E = CurveData::make(a, 37, {{37, 1}});
  const auto K = QuadFieldData::make(-3, E);
  const int p = 5, n = 1;
  const i64 bound = 10000;

  const TraceTable table(E, bound, 8);
  std::vector<AdmissiblePrime> fast, plain_scan;
  bool uniqueness_fired = false;
  try {
    fast = scan_admissible(E, K, p, n, bound, 8, &table);
    plain_scan = scan_admissible(E, K, p, n, bound, 1);
  } catch (const InternalError& e) {
    uniqueness_fired = true;
    t.check(false, std::string("scan threw: ") + e.what());
  }
  t.check(!uniqueness_fired, "epsilon uniqueness");
  t.check(fast == plain_scan, "cached parallel scan equals plain scan");

  // From scratch: independent point counts and Kronecker symbols.
  std::vector<AdmissiblePrime> scratch;
  for (i64 ell = 2; ell < bound; ++ell) {
    if (!oracle::is_prime(ell) || ell == p || 37 % ell == 0) continue;
    if (oracle::kronecker(-3, ell) != -1) continue;
    if ((ell * ell - 1) % p == 0) continue;
    const i64 tr = oracle::trace(a, ell);
    if (((ell + 1) * (ell + 1) - tr * tr) % p != 0) continue;
    const bool plus = (ell + 1 - tr) % p == 0, minus = (ell + 1 + tr) % p == 0;
    scratch.push_back({ell, plus ? 1 : -1, plus && minus});
  }
  t.check(fast == scratch, "scan equals from-scratch recomputation (" + std::to_string(scratch.size()) + " primes)");

  bool has2 = false;
  for (const auto& ap : fast) has2 = has2 || (ap.ell == 2 && ap.eps == 1);
  t.check(has2, "ell = 2 with eps = +1");

  t.check(classify_S({}, K) == ParityClass::Indefinite, "S = 1 indefinite");
  const int nminus = 0;  // 37 splits in Q(sqrt(-3))
  t.check(oracle::kronecker(-3, 37) == 1, "37 split");
  const std::size_t first = std::min<std::size_t>(4, fast.size());
  t.check(first == 4, "at least four admissible primes");
  for (unsigned mask = 0; mask < (1u << first); ++mask) {
    std::vector<i64> S;
    for (std::size_t i = 0; i < first; ++i)
      if (mask & (1u << i)) S.push_back(fast[i].ell);
    const bool definite = (static_cast<int>(S.size()) + nminus) % 2 == 1;
    t.check(classify_S(S, K) == (definite ? ParityClass::Definite : ParityClass::Indefinite),
            "parity mask " + std::to_string(mask));
  }
  std::ostringstream s;
  s << fast.size() << " admissible primes below " << bound << ", first:";
  for (std::size_t i = 0; i < first; ++i) s << " " << fast[i].ell << "(" << (fast[i].eps > 0 ? "+" : "-") << ")";
  return t.outcome(s.str());
}

Outcome ideals() {
  Tally t;
  SplitMix64 rng(derive_seed(42, 9));
  for (int p : {3, 5}) {
    for (int n = 1; n <= 2; ++n) {
      for (int M = 0; M <= 2; ++M) {
        const RingParams R(p, n);
        const Poly mod = omega_poly(R, M);
        const std::string w = where(p, n, M);
        for (int size = 1; size <= 3; ++size) {
          std::vector<std::vector<TruncatedSeries>> m(size, std::vector<TruncatedSeries>(size, TruncatedSeries(R, {}, mod)));
          TruncatedSeries prod(R, poly_constant(R, 1), mod);
          for (int i = 0; i < size; ++i) {
            m[i][i] = random_series(R, mod, rng);
            prod = prod * m[i][i];
          }
          t.check(fitting_ideal(PresentationMatrix::make(m)) == FiniteIdeal::principal(prod), "diag " + w);
        }
        const auto x = random_series(R, mod, rng), y = random_series(R, mod, rng), z = random_series(R, mod, rng);
        const auto I = FiniteIdeal::principal(x), J = FiniteIdeal::principal(x * y), L = FiniteIdeal::principal(x * y * z);
        t.check(ideal_contains(I, I) && ideal_contains(J, J), "reflexive " + w);
        t.check(ideal_contains(I, J) && ideal_contains(J, L) && ideal_contains(I, L), "transitive " + w);
        const TruncatedSeries P(R, poly_constant(R, p), mod), X(R, poly_monomial(R, 1), mod);
        const FiniteIdeal PX(R, mod, {P, X});
        t.check(ideal_square(PX) == FiniteIdeal(R, mod, {P * P, P * X, X * X}), "(p,X)^2 " + w);
        const FiniteIdeal normal(R, mod, PX.normalized_generators());
        t.check(ideal_square(normal) == ideal_square(PX), "(p,X)^2 after normalization " + w);
      }
    }
  }
  const RingParams R(3, 2);
  const Poly mod = omega_poly(R, 2);
  for (int k = 0; k < 20; ++k) {
    std::vector<std::vector<TruncatedSeries>> m(3, std::vector<TruncatedSeries>(2));
    for (auto& row : m)
      for (auto& e : row) e = random_series(R, mod, rng);
    const FiniteIdeal before = fitting_ideal(PresentationMatrix::make(m));
    const auto c = random_series(R, mod, rng), d = random_series(R, mod, rng);
    const TruncatedSeries u = TruncatedSeries(R, Poly{random_unit(R, rng)}, mod) +
                              TruncatedSeries(R, poly_monomial(R, 1), mod) * random_series(R, mod, rng);
    for (int j = 0; j < 2; ++j) m[0][j] = m[0][j] + c * m[2][j];
    for (auto& row : m) row[1] = row[1] * u;
    for (auto& row : m) row[0] = row[0] + d * row[1];
    std::swap(m[0], m[1]);
    t.check(fitting_ideal(PresentationMatrix::make(m)) == before, "unit transform " + std::to_string(k));
  }
  return t.outcome();
}

Outcome bipartite() {
  Tally t;
  const auto E = CurveData::make({0, 0, 1, -1, 0}, 37, {{37, 1}});
  const auto K = QuadFieldData::make(-3, E);
  const auto adm = scan_admissible(E, K, 5, 1, 2000);
  std::vector<i64> primes;
  for (std::size_t i = 0; i < 3 && i < adm.size(); ++i) primes.push_back(adm[i].ell);
  t.check(primes.size() == 3, "three admissible primes");
  const RingParams R(5, 1);
  for (u64 s = 0; s < 5; ++s) {
    auto sys = construct_bipartite(R, 2, 2, primes, derive_seed(42, 100 + s));
    for (const auto& [S, parity] : sys.vertices) t.check(parity == classify_S(S, K), "vertex parity");
    const auto rep = verify_bipartite(sys);
    t.check(rep.passed && rep.edges.size() == 12, "constructed system seed " + std::to_string(s));
    // perturb lambda at a definite vertex
    auto& lam = sys.lambda.at({primes[0]});
    lam = lam + TruncatedSeries(R, poly_constant(R, 1), sys.modulus());
    const auto bad = verify_bipartite(sys);
    int failing = 0;
    for (const auto& e : bad.edges) failing += !e.passed;
    t.check(!bad.passed && failing >= 1, "perturbation detected seed " + std::to_string(s));
  }
  SplitMix64 rng(derive_seed(42, 10));
  for (int k = 0; k < 10; ++k) {
    const RingParams S(k % 2 ? 5 : 3, 1 + k % 2);
    const int M = 3;
    std::vector<TruncatedSeries> plus, minus;
    for (int c = 0; c < 2; ++c) {
      plus.push_back(plain(S, signed_terms(S, M), rng));
      minus.push_back(plain(S, signed_terms(S, M), rng));
    }
    ThetaFamily fam = pm_synthesize(plus, minus, S, M);
    t.check(fam.rank == 2 && check_class_trace(fam).passed, "class trace " + std::to_string(k));
    auto c = fam.at(2, 1).coeffs();
    c[0] = S.add(c[0], S.one());
    fam.at(2, 1) = GroupRingElement(S, 2, c);
    t.check(!check_class_trace(fam).passed, "class trace perturbation " + std::to_string(k));
  }
  return t.outcome();
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome determinism() {
  Tally t;
  const std::string base = std::string("\"") + IWASAWA_CLI_PATH + "\" selftest-all --seed 42 --jobs ";
  std::vector<std::string> outs;
  for (const char* jobs : {"1", "1", "8", "8"}) {
    int status = 0;
    outs.push_back(run_capture(base + jobs, status));
    t.check(status == 0, std::string("exit status jobs=") + jobs);
  }
  t.check(!outs[0].empty(), "non-empty output");
  t.check(outs[0] == outs[1], "two runs, jobs=1");
  t.check(outs[2] == outs[3], "two runs, jobs=8");
  t.check(outs[0] == outs[2], "jobs=1 vs jobs=8");
  return t.outcome(std::to_string(outs[0].size()) + " bytes");
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto suite_start = Clock::now();
  const double suite_limit = 300.0;

  std::vector<Criterion> criteria = {
      {1, "omega factorization", 5, omega_factorization},
      {2, "transition maps", 5, transition_law},
      {3, "plus/minus round trip", 30, pm_round_trip},
      {4, "sharp/flat round trip", 60, sprung_round_trip},
      {5, "stabilization identities", 10, stabilization_identities},
      {6, "plus vanishing", 10, plus_vanishing},
      {7, "local points", 60, local_points},
      {8, "admissible primes", 120, admissibility},
      {9, "ideals", 10, ideals},
      {10, "bipartite harness", 10, bipartite},
      {11, "determinism", suite_limit, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    double limit = c.limit_seconds;
    bool in_time = secs <= limit;
    if (c.id == 11) {
      const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
      in_time = total <= suite_limit;
      o.detail += "; whole suite " + std::to_string(total) + " s";
    }
    const bool ok = o.passed && in_time;
    failed += !ok;
    std::printf("%s criterion %d (%s): %.2f s, limit %.0f s; %s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, limit,
                o.detail.c_str(), in_time ? "" : "; TIME LIMIT EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
