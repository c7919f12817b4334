#include "doctest.h"
#include "iwasawa/errors.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/stabilization.hpp"
#include "test_util.hpp"

using namespace iwasawa;

namespace {

ThetaFamily random_family(const RingParams& R, i64 ap, int M, SplitMix64& rng) {
  const int terms = degree(omega_poly(R, M));
  const TruncatedSeries a(R, random_poly(R, terms, rng)), b(R, random_poly(R, terms, rng));
  return ap == 0 && rng.below(i64{2}) == 0 ? pm_synthesize(a, b, R, M) : sprung_synthesize(a, b, R, ap, M);
}

}  // namespace

TEST_CASE("quadratic field construction") {
  const auto F = quad_field(0, 5);
  CHECK(F.alpha() + F.beta() == F.scalar(0));
  CHECK(F.alpha() * F.beta() == F.scalar(5));
  CHECK(F.valuation_alpha == Rational(1, 2));
  CHECK(F.valuation_beta == Rational(1, 2));
  CHECK_THROWS_AS(quad_field(5, 3), PreconditionError);
  CHECK_THROWS_AS(quad_field(5, 5), PreconditionError);
  const auto G = quad_field(5, 5, false);
  CHECK(G.alpha() + G.beta() == G.scalar(5));
  CHECK(G.alpha() * G.beta() == G.scalar(5));
  CHECK(G.discriminant == 5);
  CHECK(G.valuation_alpha == Rational(1, 2));
  CHECK_FALSE(G.within_weil_bound);
  const auto H = quad_field(1, 5);
  CHECK(H.valuation_alpha + H.valuation_beta == 1);
}

TEST_CASE("norm multiplicativity and valuations") {
  SplitMix64 rng(21);
  for (auto [ap, p] : std::vector<std::pair<i64, i64>>{{0, 5}, {0, 7}, {1, 3}, {2, 5}}) {
    const auto F = quad_field(ap, p);
    for (int t = 0; t < 50; ++t) {
      auto r = [&] { return Rational(static_cast<long>(rng.below(i64{61})) - 30, 1 + static_cast<long>(rng.below(i64{20}))); };
      const auto z = F.scalar(r(), r()), w = F.scalar(r(), r());
      CHECK((z * w).norm() == z.norm() * w.norm());
      if (z.is_zero() || w.is_zero()) continue;
      CHECK(*(z * w).valuation() == *z.valuation() + *w.valuation());
      CHECK(z * z.inverse() == F.scalar(1));
      CHECK((z / w) * w == z);
    }
  }
  CHECK_THROWS_AS(quad_field(0, 5).scalar(0).inverse(), NotDivisible);
  CHECK(rational_ord_p(Rational(50, 3), 5) == 2);
  CHECK(quad_field(0, 5).alpha().pow(-2) * quad_field(0, 5).alpha().pow(2) == quad_field(0, 5).scalar(1));
}

TEST_CASE("stabilize: zero family and the a_p = 0 level-0 formula") {
  const RingParams R(5, 1);
  const auto F = quad_field(0, 5);
  CHECK(stabilize(ThetaFamily::zero(R, 0, 2), F, Root::Alpha, 1).is_zero());
  SplitMix64 rng(22);
  const ThetaFamily fam = random_family(R, 0, 2, rng);
  const auto expected = QuadGroupElement::lift(F, fam.at(0)) + project(QuadGroupElement::lift(F, fam.at(1)), 5) * F.alpha().inverse();
  CHECK(stabilize(fam, F, Root::Alpha, 0) == expected);
}

TEST_CASE("the two linear stabilization relations hold exactly") {
  SplitMix64 rng(23);
  for (int p : {3, 5}) {
    for (i64 ap : {i64{0}, i64{p}}) {
      const auto F = quad_field(ap, p, ap * ap < 4 * p);
      const auto a = F.alpha(), b = F.beta();
      for (int n = 1; n <= 2; ++n) {
        const RingParams R(p, n);
        for (int t = 0; t < 5; ++t) {
          const ThetaFamily fam = random_family(R, ap, 2, rng);
          const auto l1 = QuadGroupElement::lift(F, fam.at(1)), l0 = QuadGroupElement::lift(F, fam.at(0));
          CHECK(stabilize(fam, F, Root::Alpha, 1) * (a * a) - stabilize(fam, F, Root::Beta, 1) * (b * b) == l1 * (a - b));
          CHECK(stabilize(fam, F, Root::Alpha, 0) * a - stabilize(fam, F, Root::Beta, 0) * b == l0 * (a - b));
        }
      }
    }
  }
}

TEST_CASE("projection compatibility") {
  SplitMix64 rng(24);
  const RingParams R(3, 1);
  const auto F = quad_field(0, 3);
  const ThetaFamily fam = sprung_synthesize(TruncatedSeries(R, random_poly(R, 9, rng)), TruncatedSeries(R, random_poly(R, 9, rng)), R, 0, 2);
  for (Root root : {Root::Alpha, Root::Beta}) {
    const auto rep = check_projection_compat(fam, F, root, 1);
    CHECK(rep.passed);
    CHECK(rep.checks.size() == 2);
    CHECK(rep.checks[0].exact);
    CHECK(stabilize(fam, F, root, 1).eval_trivial() == stabilize(fam, F, root, 0).eval_trivial());
  }
  CHECK(check_projection_compat(ThetaFamily::zero(R, 0, 2), F, Root::Alpha, 1).passed);

  ThetaFamily broken = fam;
  auto c = broken.at(0).coeffs();
  c[0] = R.add(c[0], R.one());
  broken.at(0) = GroupRingElement(R, 0, c);
  const auto bad = check_projection_compat(broken, F, Root::Alpha, 1);
  CHECK_FALSE(bad.passed);
  CHECK(bad.checks[0].passed);
  CHECK_FALSE(bad.checks[1].passed);
}

TEST_CASE("leading identities") {
  for (auto [ap, p] : std::vector<std::pair<i64, i64>>{{0, 5}, {0, 7}, {5, 5}}) {
    const auto F = quad_field(ap, p, ap * ap < 4 * p);
    const auto inert = leading_identity_inert(F);
    const auto split = leading_identity_split(F);
    CHECK(inert.passed);
    CHECK(split.passed);
    CHECK(inert.unit_factor == F.scalar(ap * ap - p - 1));
    CHECK(split.unit_factor == F.scalar(1 - 2 * ap + ap * ap - p));
    CHECK(*inert.unit_factor_valuation == 0);
    CHECK(*split.unit_factor_valuation == 0);
    CHECK(inert.unit_factor_is_unit);
    CHECK(split.unit_factor_is_unit);
  }
  CHECK(leading_identity_inert(quad_field(0, 5)).unit_factor == quad_field(0, 5).scalar(-6));
  CHECK(leading_identity_split(quad_field(5, 5, false)).unit_factor == quad_field(5, 5, false).scalar(11));

  // Degenerate instance u = v = 0 with vanishing L-values.
  const auto F = quad_field(0, 7);
  const auto zero = F.scalar(0);
  const auto rep = leading_identity_inert(F, IdentityInstance{zero, zero, zero});
  CHECK(rep.passed);
}

TEST_CASE("formal polynomials") {
  const auto F = quad_field(0, 5);
  const auto x = FormalPoly::variable(F, FormalPoly::VA);
  const auto u = FormalPoly::variable(F, FormalPoly::U);
  const auto sq = (x * x * x).substitute_square(FormalPoly::VA, u);
  CHECK(sq == u * x);
  CHECK((x - x).is_zero());
  std::array<QuadraticScalar, 5> vals{F.scalar(1), F.scalar(2), F.scalar(3), F.scalar(4), F.scalar(5)};
  CHECK(sq.evaluate(vals) == F.scalar(12));
}

TEST_CASE("plus vanishing") {
  SplitMix64 rng(25);
  for (int p : {3, 5}) {
    const RingParams R(p, 2);
    for (int t = 0; t < 10; ++t) {
      Poly h = random_poly(R, 8, rng);
      const Poly plus = poly_mul(R, poly_monomial(R, 1), h);
      const ThetaFamily fam = pm_synthesize(TruncatedSeries(R, plus), TruncatedSeries(R, random_poly(R, 9, rng)), R, 2);
      const auto rep = plus_vanishing_check(fam);
      CHECK(rep.passed);
      CHECK(rep.premise);
      CHECK(rep.plus_vanishes);
      CHECK(R.is_zero(rep.plus_trivial));
      CHECK(rep.minus_trivial == R.neg(rep.lambda1_trivial));
    }
    const auto z = plus_vanishing_check(ThetaFamily::zero(R, 0, 2));
    CHECK(z.passed);
    CHECK(R.is_zero(z.plus_trivial));
    CHECK(R.is_zero(z.minus_trivial));
  }
  CHECK_THROWS_AS(plus_vanishing_check(ThetaFamily::zero(RingParams(5, 1), 1, 2)), PreconditionError);
}
