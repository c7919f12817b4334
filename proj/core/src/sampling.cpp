#include "iwasawa/sampling.hpp"

namespace iwasawa {

Scalar random_scalar(const RingParams& R, SplitMix64& rng) {
  const i64 re = rng.below(R.modulus());
  const i64 im = R.ext() == 2 ? rng.below(R.modulus()) : 0;
  return R.ext() == 2 ? R.make(re, im) : R.from_int(re);
}

Scalar random_unit(const RingParams& R, SplitMix64& rng) {
  for (;;) {
    const Scalar s = random_scalar(R, rng);
    if (R.is_unit(s)) return s;
  }
}

Poly random_poly(const RingParams& R, int terms, SplitMix64& rng) {
  Poly f;
  for (int i = 0; i < terms; ++i) f.push_back(random_scalar(R, rng));
  return trimmed(std::move(f));
}

TruncatedSeries random_series(const RingParams& R, const Poly& modulus, SplitMix64& rng) {
  return TruncatedSeries(R, random_poly(R, degree(modulus), rng), modulus);
}

GroupRingElement random_group_element(const RingParams& R, int level, SplitMix64& rng) {
  std::vector<Scalar> c;
  const i64 order = ipow(R.p(), level);
  for (i64 i = 0; i < order; ++i) c.push_back(random_scalar(R, rng));
  return GroupRingElement(R, level, std::move(c));
}

}  // namespace iwasawa
