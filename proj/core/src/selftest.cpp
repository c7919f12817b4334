#include "iwasawa/selftest.hpp"

#include <functional>

#include "iwasawa/parallel.hpp"
#include "iwasawa/sampling.hpp"

namespace iwasawa {

namespace {

struct Tally {
  Json checks = Json::object();
  bool passed = true;

  void record(const std::string& name, bool ok) {
    auto& slot = checks[name];
    if (slot.is_null()) slot = {{"passed", 0}, {"failed", 0}};
    slot[ok ? "passed" : "failed"] = slot[ok ? "passed" : "failed"].get<int>() + 1;
    passed = passed && ok;
  }
  Json finish(const std::string& name) const { return {{"name", name}, {"passed", passed}, {"checks", checks}}; }
};

Json rings_suite(u64 seed, int) {
  Tally t;
  SplitMix64 rng(seed);
  for (int p : {3, 5, 7}) {
    for (int n = 1; n <= 2; ++n) {
      const RingParams R(p, n);
      for (int m = 0; m <= 3; ++m) {
        const Poly omega = omega_poly(R, m);
        const Poly tp = omega_tilde_poly(R, m, Sign::Plus);
        const Poly tm = omega_tilde_poly(R, m, Sign::Minus);
        t.record("omega_factorization", poly_mul(R, poly_monomial(R, 1), poly_mul(R, tp, tm)) == omega);
        t.record("omega_signed", poly_mul(R, omega_signed_poly(R, m, Sign::Plus), tm) == omega &&
                                     poly_mul(R, omega_signed_poly(R, m, Sign::Minus), tp) == omega);
        if (m == 0) continue;
        for (int k = 0; k < 10; ++k) {
          const GroupRingElement x = random_group_element(R, m - 1, rng);
          t.record("project_norm_xi", project(norm_xi(x)) == x.scaled(i64{p}));
        }
      }
    }
  }
  return t.finish("iwasawa_rings");
}

Json pm_suite(u64 seed, int) {
  Tally t;
  SplitMix64 rng(seed);
  for (int p : {3, 5}) {
    for (int n = 1; n <= 2; ++n) {
      const RingParams R(p, n);
      for (int M = 1; M <= 3; ++M) {
        for (int k = 0; k < 3; ++k) {
          const TruncatedSeries plus(R, random_poly(R, degree(omega_poly(R, M)), rng));
          const TruncatedSeries minus(R, random_poly(R, degree(omega_poly(R, M)), rng));
          const ThetaFamily fam = pm_synthesize(plus, minus, R, M);
          t.record("norm_relation", check_norm_relation(fam).passed);
          t.record("annihilation", annihilator_check(fam).passed);
          t.record("round_trip", coset_contains(pm_extract(fam), 0, plus, minus));
        }
      }
    }
  }
  return t.finish("signed_pm");
}

Json sprung_suite(u64 seed, int) {
  Tally t;
  SplitMix64 rng(seed);
  for (int p : {3, 5}) {
    const RingParams R(p, 1);
    for (i64 ap : {i64{0}, i64{p}}) {
      for (int M = 1; M <= 2; ++M) {
        const SprungDecomposer dec(R, ap, M);
        t.record("determinant", sprung_determinant_matches(sprung_matrices(R, ap, M)));
        for (int k = 0; k < 3; ++k) {
          const int terms = degree(omega_poly(R, M));
          const TruncatedSeries sharp(R, random_poly(R, terms, rng));
          const TruncatedSeries flat(R, random_poly(R, terms, rng));
          const ThetaFamily fam = sprung_synthesize(sharp, flat, R, ap, M);
          t.record("norm_relation", check_norm_relation(fam).passed);
          t.record("round_trip", coset_contains(dec.decompose(fam), 0, sharp, flat));
        }
      }
    }
  }
  return t.finish("signed_sprung");
}

ThetaFamily random_family(const RingParams& R, i64 ap, int M, SplitMix64& rng, bool plus_vanishes_at_one = false) {
  const int terms = degree(omega_poly(R, M));
  Poly a = random_poly(R, terms, rng);
  const Poly b = random_poly(R, terms, rng);
  if (plus_vanishes_at_one && !a.empty()) a[0] = R.zero();
  const TruncatedSeries f(R, trimmed(a)), g(R, b);
  return ap == 0 ? pm_synthesize(f, g, R, M) : sprung_synthesize(f, g, R, ap, M);
}

Json stabilization_suite(u64 seed, int) {
  Tally t;
  SplitMix64 rng(seed);
  const std::array<std::pair<i64, i64>, 3> configs{{{0, 5}, {0, 7}, {5, 5}}};
  for (const auto& [ap, p] : configs) {
    const HeckeQuadField F = quad_field(ap, p, ap * ap < 4 * p);
    const auto inert = leading_identity_inert(F);
    const auto split = leading_identity_split(F);
    t.record("identity_inert", inert.passed);
    t.record("identity_split", split.passed);
    const RingParams R(static_cast<int>(p), 1);
    const QuadraticScalar a = F.alpha(), b = F.beta();
    for (int k = 0; k < 3; ++k) {
      const ThetaFamily fam = random_family(R, ap, 2, rng);
      const auto l1 = QuadGroupElement::lift(F, fam.at(1));
      const auto l0 = QuadGroupElement::lift(F, fam.at(0));
      const auto s1 = stabilize(fam, F, Root::Alpha, 1) * (a * a) - stabilize(fam, F, Root::Beta, 1) * (b * b);
      const auto s0 = stabilize(fam, F, Root::Alpha, 0) * a - stabilize(fam, F, Root::Beta, 0) * b;
      t.record("relation_level_1", s1 == l1 * (a - b));
      t.record("relation_level_0", s0 == l0 * (a - b));
      t.record("projection_alpha", check_projection_compat(fam, F, Root::Alpha, 1).passed);
      t.record("projection_beta", check_projection_compat(fam, F, Root::Beta, 1).passed);
    }
  }
  for (int p : {3, 5}) {
    const RingParams R(p, 2);
    for (int k = 0; k < 4; ++k) t.record("plus_vanishing", plus_vanishing_check(random_family(R, 0, 2, rng, true)).passed);
  }
  return t.finish("stabilization");
}

Json local_suite(u64 seed, int) {
  Tally t;
  const Json cert = local_selftest(RingParams(5, 1, 2), 2, 2, seed, 10);
  t.record("invariants", cert["invariants"]["passed"].get<bool>());
  for (const auto& c : cert["containment"]) t.record("containment", c["passed"].get<bool>());
  for (const auto& k : cert["kernels"]) t.record("kernel", k["equal"].get<bool>() && k["orthogonal"].get<bool>());
  return t.finish("local_points_coleman");
}

Json admissible_suite(u64, int jobs) {
  Tally t;
  const CurveData E = CurveData::make({0, 0, 1, -1, 0}, 37);
  const QuadFieldData K = QuadFieldData::make(-3, E);
  const i64 bound = 3000;
  const TraceTable table(E, bound, jobs);
  const auto fast = scan_admissible(E, K, 5, 1, bound, jobs, &table);
  std::vector<AdmissiblePrime> slow;
  for (i64 ell : primes_below(bound)) {
    const auto d = is_n_admissible(ell, E, K, 5, 1);
    if (!d.admissible) continue;
    const auto e = epsilon_sign(ell, E, 5, 1);
    slow.push_back({ell, e.sign, e.degenerate});
  }
  t.record("fast_equals_recomputed", fast == slow);
  t.record("contains_2_plus", !fast.empty() && fast[0] == AdmissiblePrime{2, 1, false});
  t.record("no_degenerate_sign", std::none_of(fast.begin(), fast.end(), [](const auto& q) { return q.degenerate; }));
  const std::size_t count = std::min<std::size_t>(fast.size(), 3);
  for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
    std::vector<i64> S;
    for (std::size_t i = 0; i < count; ++i)
      if (mask >> i & 1) S.push_back(fast[i].ell);
    const ParityClass expected = S.size() % 2 == 1 ? ParityClass::Definite : ParityClass::Indefinite;
    t.record("parity_rule", classify_S(S, K) == expected);
  }
  return t.finish("admissible_arithmetic");
}

Json ideals_suite(u64 seed, int jobs) {
  Tally t;
  SplitMix64 rng(seed);
  for (int p : {3, 5}) {
    const RingParams R(p, 2);
    const Poly modulus = omega_poly(R, 2);
    auto S = [&](std::vector<i64> c) { return TruncatedSeries(R, poly_from_ints(R, c), modulus); };
    const auto zero = S({});
    for (int k = 0; k < 3; ++k) {
      std::vector<TruncatedSeries> diag;
      for (int i = 0; i < 3; ++i) diag.push_back(random_series(R, modulus, rng));
      std::vector<std::vector<TruncatedSeries>> rows(3, std::vector<TruncatedSeries>(3, zero));
      for (int i = 0; i < 3; ++i) rows[i][i] = diag[i];
      const FiniteIdeal fit = fitting_ideal(PresentationMatrix::make(rows), jobs);
      t.record("fitting_diagonal", fit == FiniteIdeal::principal(diag[0] * diag[1] * diag[2]));
      t.record("containment_reflexive", ideal_contains(fit, fit));
    }
    const FiniteIdeal I(R, modulus, {S({p}), S({0, 1})});
    t.record("square_p_X", ideal_square(I) == FiniteIdeal(R, modulus, {S({p * p}), S({0, p}), S({0, 0, 1})}));
    t.record("contains_pX", ideal_contains(FiniteIdeal::principal(S({p})), FiniteIdeal::principal(S({0, p}))));
    t.record("excludes_p", !ideal_contains(FiniteIdeal::principal(S({0, 1})), FiniteIdeal::principal(S({p}))));
  }
  return t.finish("ideals");
}

Json bipartite_suite(u64 seed, int) {
  Tally t;
  const RingParams R(5, 1);
  BipartiteSystem sys = construct_bipartite(R, 1, 2, {2, 13}, seed);
  t.record("constructed_passes", verify_bipartite(sys).passed);
  auto& target = sys.lambda.at(PrimeSet{2});
  target = target + TruncatedSeries(R, poly_constant(R, 1), sys.modulus());
  t.record("perturbation_detected", !verify_bipartite(sys).passed);
  SplitMix64 rng(derive_seed(seed, 1));
  const ThetaFamily fam =
      pm_synthesize({TruncatedSeries(R, random_poly(R, 5, rng)), TruncatedSeries(R, random_poly(R, 5, rng))},
                    {TruncatedSeries(R, random_poly(R, 5, rng)), TruncatedSeries(R, random_poly(R, 5, rng))}, R, 3);
  t.record("class_trace", check_class_trace(fam).passed);
  return t.finish("ideals_and_harness");
}

}  // namespace

Json local_selftest(const RingParams& params, int depth, int rank, u64 seed, int trials) {
  const LocalPointSystem sys = generate_system(params, depth, rank, seed);
  const InvariantReport inv = verify_invariants(sys);
  Json containment = Json::array();
  Json kernels = Json::array();
  bool passed = inv.passed;
  for (int m = 0; m <= depth; ++m) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      const auto c = check_image_containment(sys, m, s, trials, derive_seed(seed, static_cast<u64>(2 * m + (s == Sign::Minus))));
      const auto k = kernel_probe(sys, m, s);
      passed = passed && c.passed && k.equal && k.orthogonal && k.rank_nullity;
      containment.push_back(to_json(c));
      Json kj = to_json(k);
      kj.erase("kernel");
      kernels.push_back(kj);
    }
  }
  return {{"passed", passed},
          {"system", to_json(sys)},
          {"invariants", to_json(inv)},
          {"containment", containment},
          {"kernels", kernels}};
}

Json run_selftests(u64 seed, int jobs) {
  using Suite = std::function<Json(u64, int)>;
  const std::vector<Suite> suites{rings_suite,     pm_suite,         sprung_suite, stabilization_suite,
                                  local_suite,     admissible_suite, ideals_suite, bipartite_suite};
  const auto results = parallel_map(suites.size(), jobs, [&](std::size_t i) {
    return suites[i](derive_seed(seed, i), jobs);
  });
  bool passed = true;
  Json out = Json::array();
  for (const auto& r : results) {
    passed = passed && r["passed"].get<bool>();
    out.push_back(r);
  }
  return {{"seed", std::to_string(seed)}, {"passed", passed}, {"suites", out}};
}

}  // namespace iwasawa
