#pragma once

#include <cstdint>

#include "iwasawa/modular.hpp"

namespace iwasawa {

/// SplitMix64. Every random stream in the library is a SplitMix64 whose
/// state is derived from a root seed and a stream index with `derive_seed`,
/// so results never depend on scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(u64 seed = 0) : state_(seed) {}

  u64 next() {
    u64 z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection.
  u64 below(u64 bound) {
    const u64 limit = ~u64{0} - (~u64{0} % bound);
    u64 x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  i64 below(i64 bound) { return static_cast<i64>(below(static_cast<u64>(bound))); }

 private:
  u64 state_;
};

inline u64 derive_seed(u64 root, u64 stream) {
  SplitMix64 g(root ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  g.next();
  return g.next();
}

}  // namespace iwasawa
