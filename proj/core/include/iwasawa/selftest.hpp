#pragma once

#include "iwasawa/serialization.hpp"

namespace iwasawa {

/// Runs a reduced property suite for every module and returns a
/// certificate {"seed", "passed", "suites":[{"name","passed","checks":{...}}]}.
/// The result depends only on `seed`; `jobs` only changes the wall time.
Json run_selftests(u64 seed, int jobs = 1);

/// The local-point suite on its own: generate a system, check the
/// invariants, image containment for every (m, sign) and the kernel probes.
Json local_selftest(const RingParams& params, int depth, int rank, u64 seed, int trials);

}  // namespace iwasawa
