#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "iwasawa/bipartite.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/ideals.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/signed_decomposition.hpp"
#include "test_util.hpp"

using namespace iwasawa;

namespace {

struct Ring {
  RingParams R;
  Poly modulus;
  Ring(int p, int n, int M) : R(p, n), modulus(omega_poly(R, M)) {}
  TruncatedSeries s(std::vector<i64> c) const { return TruncatedSeries(R, poly_from_ints(R, c), modulus); }
  FiniteIdeal ideal(std::vector<std::vector<i64>> gens) const {
    std::vector<TruncatedSeries> g;
    for (auto& c : gens) g.push_back(s(c));
    return FiniteIdeal(R, modulus, g);
  }
};

// Leibniz expansion over all permutations.
TruncatedSeries leibniz(const std::vector<std::vector<TruncatedSeries>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  TruncatedSeries acc = m[0][0].scaled(i64{0});
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    TruncatedSeries term = m[0][perm[0]];
    for (int i = 1; i < n; ++i) term = term * m[i][perm[i]];
    acc = inversions % 2 == 0 ? acc + term : acc - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

TEST_CASE("Fitting ideal examples") {
  const Ring A(3, 3, 2);
  const FiniteIdeal w1 = fitting_ideal(PresentationMatrix::make({{TruncatedSeries(A.R, omega_poly(A.R, 1), A.modulus)}}));
  CHECK(w1 == FiniteIdeal::principal(TruncatedSeries(A.R, omega_poly(A.R, 1), A.modulus)));
  CHECK(fitting_ideal(PresentationMatrix::make({{A.s({3}), A.s({})}, {A.s({}), A.s({0, 1})}})) == A.ideal({{0, 3}}));
  CHECK(fitting_ideal(PresentationMatrix::make({{A.s({3}), A.s({0, 1})}, {A.s({}), A.s({3})}})) == A.ideal({{9}}));
  CHECK(fitting_ideal(PresentationMatrix::make({{A.s({3}), A.s({0, 1})}})) == FiniteIdeal::zero(A.R, A.modulus));
  CHECK(fitting_ideal(PresentationMatrix::make({{A.s({3})}, {A.s({0, 1})}})) == A.ideal({{3}, {0, 1}}));
  const Ring B(3, 3, 1);
  CHECK_THROWS_AS(PresentationMatrix::make({{A.s({1}), B.s({1})}}), ParameterMismatch);
}

TEST_CASE("Fitting ideal of diagonal presentations is principal") {
  SplitMix64 rng(41);
  for (int p : {3, 5}) {
    for (int n = 1; n <= 2; ++n) {
      for (int M = 0; M <= 2; ++M) {
        const Ring A(p, n, M);
        for (int size = 1; size <= 3; ++size) {
          std::vector<std::vector<TruncatedSeries>> m(size, std::vector<TruncatedSeries>(size, A.s({})));
          TruncatedSeries prod = A.s({1});
          for (int i = 0; i < size; ++i) {
            m[i][i] = random_series(A.R, A.modulus, rng);
            prod = prod * m[i][i];
          }
          CHECK(fitting_ideal(PresentationMatrix::make(m)) == FiniteIdeal::principal(prod));
        }
      }
    }
  }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  SplitMix64 rng(42);
  const Ring A(5, 1, 1);
  for (int size = 1; size <= 5; ++size) {
    std::vector<std::vector<TruncatedSeries>> m(size, std::vector<TruncatedSeries>(size));
    for (auto& row : m)
      for (auto& e : row) e = random_series(A.R, A.modulus, rng);
    CHECK(determinant(m) == leibniz(m));
  }
}

TEST_CASE("Fitting ideal is invariant under unit row and column operations") {
  SplitMix64 rng(43);
  const Ring A(3, 2, 2);
  for (int t = 0; t < 20; ++t) {
    const int rows = 2 + static_cast<int>(rng.below(i64{2})), cols = 2;
    std::vector<std::vector<TruncatedSeries>> m(rows, std::vector<TruncatedSeries>(cols));
    for (auto& row : m)
      for (auto& e : row) e = random_series(A.R, A.modulus, rng);
    const FiniteIdeal before = fitting_ideal(PresentationMatrix::make(m));
    auto unit = [&] { return TruncatedSeries(A.R, Poly{random_unit(A.R, rng)}, A.modulus) + A.s({0, 1}) * random_series(A.R, A.modulus, rng); };
    auto t2 = m;
    const int i = static_cast<int>(rng.below(i64{rows})), j = (i + 1) % rows;
    const auto c = random_series(A.R, A.modulus, rng);
    for (int k = 0; k < cols; ++k) t2[i][k] = t2[i][k] + c * t2[j][k];
    const auto u = unit();
    for (int k = 0; k < rows; ++k) t2[k][1] = t2[k][1] * u;
    const auto d = random_series(A.R, A.modulus, rng);
    for (int k = 0; k < rows; ++k) t2[k][0] = t2[k][0] + d * t2[k][1];
    std::swap(t2[0], t2[rows - 1]);
    CHECK(fitting_ideal(PresentationMatrix::make(t2)) == before);
  }
}

TEST_CASE("Fitting ideal is the same for every job count") {
  SplitMix64 rng(44);
  const Ring A(3, 1, 2);
  std::vector<std::vector<TruncatedSeries>> m(7, std::vector<TruncatedSeries>(5));
  for (auto& row : m)
    for (auto& e : row) e = random_series(A.R, A.modulus, rng);
  const auto P = PresentationMatrix::make(m);
  CHECK(fitting_ideal(P, 1) == fitting_ideal(P, 8));
}

TEST_CASE("ideal containment") {
  const Ring A(3, 2, 2);
  CHECK(ideal_contains(A.ideal({{3}}), A.ideal({{0, 3}})));
  CHECK_FALSE(ideal_contains(A.ideal({{0, 1}}), A.ideal({{3}})));
  CHECK(ideal_contains(A.ideal({{3}, {0, 1}}), A.ideal({{9, -3}})));
  CHECK(A.ideal({{3}, {0, 1}}).contains(A.s({9, -3})));
  CHECK_FALSE(A.ideal({{3}, {0, 1}}).contains(A.s({1})));
  SplitMix64 rng(45);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_series(A.R, A.modulus, rng), b = random_series(A.R, A.modulus, rng);
    const auto I = FiniteIdeal::principal(a);
    const auto J = FiniteIdeal::principal(a * b);
    const auto K = FiniteIdeal::principal(a * b * random_series(A.R, A.modulus, rng));
    CHECK(ideal_contains(I, I));
    CHECK(ideal_contains(I, J));
    CHECK(ideal_contains(J, K));
    CHECK(ideal_contains(I, K));
    const FiniteIdeal normal(A.R, A.modulus, I.normalized_generators());
    CHECK(normal == I);
    CHECK(ideal_contains(normal, J) == ideal_contains(I, J));
  }
}

TEST_CASE("ideal squares") {
  for (int p : {3, 5}) {
    const Ring A(p, 2, 2);
    CHECK(ideal_square(A.ideal({{p}})) == A.ideal({{p * p}}));
    const auto I = A.ideal({{p}, {0, 1}});
    CHECK(ideal_square(I) == A.ideal({{p * p}, {0, p}, {0, 0, 1}}));
    const FiniteIdeal normal(A.R, A.modulus, I.normalized_generators());
    CHECK(ideal_square(normal) == ideal_square(I));
    CHECK(ideal_product(I, I) == ideal_square(I));
  }
}

TEST_CASE("bipartite systems") {
  const RingParams R(5, 1);
  // Only S = 1: vacuous.
  const auto trivial = construct_bipartite(R, 1, 2, {}, 1);
  CHECK(trivial.vertices.size() == 1);
  CHECK(verify_bipartite(trivial).passed);
  CHECK(verify_bipartite(trivial).edges.empty());

  auto two = construct_bipartite(R, 1, 2, {2}, 2);
  CHECK(two.vertices.at({}) == ParityClass::Indefinite);
  CHECK(two.vertices.at({2}) == ParityClass::Definite);
  const auto& maps = two.maps.at(2);
  CHECK(two.lambda.at({2}) == maps.second(two.kappa.at({})));
  auto rep = verify_bipartite(two);
  CHECK(rep.passed);
  REQUIRE(rep.edges.size() == 1);
  two.lambda.at({2}) = two.lambda.at({2}) + TruncatedSeries(R, poly_constant(R, 1), two.modulus());
  rep = verify_bipartite(two);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.edges[0].passed);

  for (u64 seed = 0; seed < 5; ++seed) {
    auto sys = construct_bipartite(R, 2, 2, {2, 13, 53}, seed);
    CHECK(verify_bipartite(sys).passed);
    CHECK(verify_bipartite(sys).edges.size() == 12);
    // one perturbed class breaks exactly the edges at that vertex
    auto& k = sys.kappa.at({2, 13});
    k[0] = k[0] + TruncatedSeries(R, poly_constant(R, 1), sys.modulus());
    const auto bad = verify_bipartite(sys);
    int failing = 0;
    for (const auto& e : bad.edges) failing += !e.passed;
    CHECK(failing >= 1);
    CHECK(failing <= 3);
  }
}

TEST_CASE("bipartite well-formedness") {
  const RingParams R(5, 1);
  auto sys = construct_bipartite(R, 1, 1, {2, 13}, 3);
  auto parity = sys;
  parity.vertices.at({2}) = ParityClass::Indefinite;
  parity.kappa[{2}] = parity.kappa.at({});
  CHECK_THROWS_AS(verify_bipartite(parity), PreconditionError);
  auto nonunit = sys;
  nonunit.maps.at(2).u = TruncatedSeries(R, poly_from_ints(R, {5, 1}), sys.modulus());
  CHECK_THROWS_AS(verify_bipartite(nonunit), PreconditionError);
  auto missing = sys;
  missing.lambda.erase({2});
  CHECK_THROWS_AS(verify_bipartite(missing), PreconditionError);
}

TEST_CASE("class trace relation") {
  const RingParams R(5, 1);
  CHECK(check_class_trace(ThetaFamily::zero(R, 0, 3, 2)).passed);
  SplitMix64 rng(46);
  auto rnd = [&] { return TruncatedSeries(R, random_poly(R, 25, rng)); };
  ThetaFamily fam = pm_synthesize({rnd(), rnd()}, {rnd(), rnd()}, R, 3);
  CHECK(fam.rank == 2);
  CHECK(check_class_trace(fam).passed);
  auto c = fam.at(2, 1).coeffs();
  c[3] = R.add(c[3], R.one());
  fam.at(2, 1) = GroupRingElement(R, 2, c);
  const auto rep = check_class_trace(fam);
  CHECK_FALSE(rep.passed);
  bool witness = false;
  for (const auto& lc : rep.checks) witness = witness || (!lc.passed && lc.component == 1 && !lc.witness.is_zero());
  CHECK(witness);
  CHECK_THROWS_AS(check_class_trace(ThetaFamily::zero(R, 1, 2, 2)), PreconditionError);
}
