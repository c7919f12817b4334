#pragma once

#include "iwasawa/group_ring.hpp"
#include "iwasawa/random.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa {

Scalar random_scalar(const RingParams& R, SplitMix64& rng);
Scalar random_unit(const RingParams& R, SplitMix64& rng);
/// Uniform polynomial with `terms` coefficients (degree < terms).
Poly random_poly(const RingParams& R, int terms, SplitMix64& rng);
/// Uniform element of Lambda_n/(modulus).
TruncatedSeries random_series(const RingParams& R, const Poly& modulus, SplitMix64& rng);
GroupRingElement random_group_element(const RingParams& R, int level, SplitMix64& rng);

}  // namespace iwasawa
