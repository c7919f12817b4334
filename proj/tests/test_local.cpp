#include "doctest.h"
#include "iwasawa/errors.hpp"
#include "iwasawa/local_points.hpp"
#include "iwasawa/sampling.hpp"
#include "test_util.hpp"

using namespace iwasawa;

namespace {

ModuleElement random_module(const RingParams& R, int rank, int level, SplitMix64& rng) {
  ModuleElement z;
  for (int k = 0; k < rank; ++k) z.push_back(random_group_element(R, level, rng));
  return z;
}

}  // namespace

TEST_CASE("generated systems satisfy the structural invariants") {
  const RingParams R(5, 1, 2);
  const auto sys = generate_system(R, 2, 2, 42);
  const auto inv = verify_invariants(sys);
  CHECK(inv.passed);
  CHECK(inv.pairing_perfect);
  CHECK(inv.trace_relations);
  CHECK(inv.base_relation);
  CHECK(inv.unit_condition);
  CHECK(module_add(trace_down(sys.points[1]), sys.points[0]) == module_zero(R, 2, 0));
  CHECK(module_is_zero(module_add(trace_down(sys.points[2]), restrict_up(sys.points[0]))));
  for (u64 seed = 0; seed < 10; ++seed) {
    for (int n = 1; n <= 2; ++n) {
      const auto s = generate_system(RingParams(5, n, 2), 3, 2 + static_cast<int>(seed % 2), seed);
      CHECK(verify_invariants(s).passed);
      CHECK(s.attempts >= 1);
      CHECK(s.attempts <= 64);
    }
  }
  CHECK_THROWS_AS(generate_system(R, 2, 1, 0), PreconditionError);
  CHECK_THROWS_AS(generate_system(RingParams(5, 1), 2, 2, 0), PreconditionError);
}

TEST_CASE("pairing tables") {
  const RingParams R(5, 1, 2);
  CHECK(PairingTable::hyperbolic(R, 2).is_perfect(R));
  CHECK(PairingTable::hyperbolic(R, 3).is_perfect(R));
  CHECK(PairingTable::identity(R, 4).is_perfect(R));
  PairingTable degenerate{2, {R.one(), R.one(), R.one(), R.one()}};
  CHECK_FALSE(degenerate.is_perfect(R));
  CHECK_THROWS_AS(generate_system(R, 1, 2, 0, degenerate), PreconditionError);
}

TEST_CASE("Coleman maps are linear and equivariant") {
  const RingParams R(5, 1, 2);
  const auto sys = generate_system(R, 2, 2, 7);
  SplitMix64 rng(31);
  for (int m = 0; m <= 2; ++m) {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      CHECK(coleman_map(sys, module_zero(R, 2, m), m, s).is_zero());
      for (int t = 0; t < 5; ++t) {
        const auto x = random_module(R, 2, m, rng), y = random_module(R, 2, m, rng);
        CHECK(coleman_map(sys, module_add(x, y), m, s) == coleman_map(sys, x, m, s) + coleman_map(sys, y, m, s));
        const i64 g = rng.below(oracle::ipow(5, m));
        CHECK(coleman_map(sys, module_shift(x, g), m, s) == coleman_map(sys, x, m, s).shifted(g));
      }
    }
  }
  CHECK_THROWS_AS(coleman_map(sys, module_zero(R, 2, 1), 2, Sign::Plus), Error);
}

TEST_CASE("Coleman map matches the twisted-sum definition") {
  const RingParams R(5, 1, 2);
  const auto sys = generate_system(R, 1, 2, 9);
  SplitMix64 rng(32);
  const auto z = random_module(R, 2, 1, rng);
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const auto d = signed_point(sys, 1, s);
    const auto col = coleman_map(sys, z, 1, s);
    for (i64 k = 0; k < 5; ++k) CHECK(col[static_cast<std::size_t>(k)] == pairing(sys, module_shift(z, -k), d));
  }
}

TEST_CASE("signed points") {
  const RingParams R(5, 1, 2);
  const auto sys = generate_system(R, 3, 2, 3);
  CHECK(signed_point(sys, 0, Sign::Plus) == sys.points[0]);
  CHECK(signed_point(sys, 2, Sign::Plus) == sys.points[2]);
  CHECK(signed_point(sys, 1, Sign::Minus) == sys.points[1]);
  CHECK(signed_point(sys, 1, Sign::Plus) == restrict_up(sys.points[0]));
  CHECK(signed_point(sys, 2, Sign::Minus) == restrict_up(sys.points[1]));
  CHECK(signed_point(sys, 3, Sign::Plus) == restrict_up(sys.points[2]));
}

TEST_CASE("image containment under both conventions") {
  const RingParams R(5, 1, 2);
  const auto sys = generate_system(R, 3, 2, 11);
  for (int m = 0; m <= 3; ++m)
    for (Sign s : {Sign::Plus, Sign::Minus}) CHECK(check_image_containment(sys, m, s, 30, 5).passed);
  CHECK(check_image_containment(sys, 0, Sign::Plus, 10, 5, ContainmentConvention::Literal).passed);
  CHECK_FALSE(check_image_containment(sys, 1, Sign::Minus, 30, 5, ContainmentConvention::Literal).passed);
  CHECK_FALSE(check_image_containment(sys, 2, Sign::Plus, 30, 5, ContainmentConvention::Literal).passed);
  CHECK(containment_factor(Sign::Plus, ContainmentConvention::Opposite) == Sign::Minus);
  CHECK(containment_factor(Sign::Plus, ContainmentConvention::Literal) == Sign::Plus);
}

TEST_CASE("a corrupted system fails containment") {
  const RingParams R(5, 1, 2);
  auto sys = generate_system(R, 2, 2, 12);
  sys.points[2][0] = sys.points[2][0] + GroupRingElement::identity(R, 2);
  CHECK_FALSE(verify_invariants(sys).passed);
  CHECK_FALSE(check_image_containment(sys, 2, Sign::Plus, 50, 6).passed);
}

TEST_CASE("kernel equals the orthogonal complement") {
  for (int n = 1; n <= 2; ++n) {
    const RingParams R(5, n, 2);
    const auto sys = generate_system(R, 2, 2, 13);
    for (int m = 0; m <= 2; ++m) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const auto k = kernel_probe(sys, m, s);
        CHECK(k.equal);
        CHECK(k.orthogonal);
        CHECK(k.rank_nullity);
        CHECK(k.ambient_length == 2 * oracle::ipow(5, m) * 2 * n);
        const auto d = signed_point(sys, m, s);
        if (R.is_unit(pairing(sys, d, d))) CHECK_FALSE(k.kernel.contains(module_coords(d)));
      }
    }
  }
}

TEST_CASE("a point with unit self-pairing is outside the kernel") {
  const RingParams R(5, 1, 2);
  int found = 0;
  for (u64 seed = 0; seed < 20 && found < 3; ++seed) {
    const auto sys = generate_system(R, 1, 2, seed, PairingTable::identity(R, 2));
    const auto d = signed_point(sys, 1, Sign::Minus);
    if (!R.is_unit(pairing(sys, d, d))) continue;
    ++found;
    CHECK_FALSE(kernel_probe(sys, 1, Sign::Minus).kernel.contains(module_coords(d)));
  }
  CHECK(found > 0);
}
