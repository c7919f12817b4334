#pragma once

#include <optional>
#include <vector>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/zmod_linalg.hpp"

namespace iwasawa {

/// Element of the free module of rank rho over O/p^n[G_m] (ext == 2), one
/// group ring element per basis vector.
using ModuleElement = std::vector<GroupRingElement>;

/// Pairing table J on the basis: <e_k sigma, e_l tau> = J_kl [sigma = tau].
struct PairingTable {
  int rank = 0;
  std::vector<Scalar> entries;  ///< row-major rank x rank

  /// Hyperbolic planes on (0,1), (2,3), ...; a trailing 1 when rank is odd.
  static PairingTable hyperbolic(const RingParams& R, int rank);
  static PairingTable identity(const RingParams& R, int rank);

  Scalar at(int k, int l) const { return entries.at(static_cast<std::size_t>(k * rank + l)); }
  /// Determinant is a unit of O/p^n.
  bool is_perfect(const RingParams& R) const;
};

/// Synthetic system of local points d_0, ..., d_M with d_m in H_m.
struct LocalPointSystem {
  RingParams params;  ///< ext == 2
  int depth = 0;
  int rank = 2;
  PairingTable pairing;
  std::vector<ModuleElement> points;  ///< points[m] = d_m
  u64 seed = 0;
  int attempts = 0;  ///< generation attempts used
};

/// Builds the tower from signed generators D^+ and D^- (rank-many series with
/// D^-(0) = D^+(0)) through the plus/minus synthesis formulas. Throws
/// PreconditionError if the pairing is not perfect or shapes disagree.
LocalPointSystem build_system(const RingParams& params, int depth, const PairingTable& pairing,
                              const std::vector<Poly>& plus, const std::vector<Poly>& minus);

/// Random system, retried (at most 64 attempts) until d_0 is not in p H_0 and
/// every invariant holds. Throws InternalError when the retries run out.
LocalPointSystem generate_system(const RingParams& params, int depth, int rank, u64 seed,
                                 std::optional<PairingTable> pairing = std::nullopt);

ModuleElement module_zero(const RingParams& R, int rank, int level);
ModuleElement module_add(const ModuleElement& a, const ModuleElement& b);
ModuleElement module_neg(const ModuleElement& a);
ModuleElement module_scale(const ModuleElement& a, Scalar s);
/// sigma-action: gamma^k z.
ModuleElement module_shift(const ModuleElement& a, i64 k);
bool module_is_zero(const ModuleElement& a);
/// Trace to the level below (pi on each coordinate).
ModuleElement trace_down(const ModuleElement& z);
/// Inclusion into the level above (xi on each coordinate).
ModuleElement restrict_up(const ModuleElement& z);
/// Z/p^n coordinates (coordinate k, group index i, ext part).
ZVector module_coords(const ModuleElement& z);
ModuleElement module_from_coords(const RingParams& R, int rank, int level, const ZVector& v);

/// d_m^+ = d_m (m even) or d_{m-1}; d_m^- = d_{m-1} (m >= 2 even) or d_m,
/// lower points included into H_m.
ModuleElement signed_point(const LocalPointSystem& sys, int m, Sign sign);

/// sum_{k,l} J_kl sum_sigma z_k(sigma) w_l(sigma).
Scalar pairing(const LocalPointSystem& sys, const ModuleElement& z, const ModuleElement& w);

struct InvariantReport {
  bool passed = false;
  bool pairing_perfect = false;
  bool trace_relations = false;  ///< Tr d_m = -d_{m-2}, m >= 2
  bool base_relation = false;    ///< Tr d_1 = -d_0
  bool unit_condition = false;   ///< d_0 not in p H_0
  std::vector<int> failing_levels;
};

InvariantReport verify_invariants(const LocalPointSystem& sys);

/// Col^{sign}_{m,n}(z) = sum_sigma <z^{sigma^{-1}}, d_m^{sign}> sigma.
GroupRingElement coleman_map(const LocalPointSystem& sys, const ModuleElement& z, int m, Sign sign);

/// Which cyclotomic factor the image of Col^{sign} is tested against.
enum class ContainmentConvention {
  Opposite,  ///< omega~_m^{-sign}, the factor forced by the trace relations
  Literal,   ///< omega~_m^{sign}
};

/// The divisor omega~_m^{+-} tested for Col^{sign} under a convention.
Sign containment_factor(Sign sign, ContainmentConvention convention);

struct ContainmentReport {
  int m = 0;
  Sign sign = Sign::Plus;
  ContainmentConvention convention = ContainmentConvention::Opposite;
  int trials = 0;
  int failures = 0;
  bool passed = false;
  int image_length = 0;    ///< log_p of the size of the span of the sampled values
  int target_length = 0;   ///< log_p of the size of omega~ r_{m,n}
};

ContainmentReport check_image_containment(const LocalPointSystem& sys, int m, Sign sign, int trials, u64 seed,
                                          ContainmentConvention convention = ContainmentConvention::Opposite);

struct KernelReport {
  int m = 0;
  Sign sign = Sign::Plus;
  HowellForm kernel;      ///< {z : Col(z) = 0}
  HowellForm complement;  ///< orthogonal complement of the r-span of d_m^{sign}
  bool equal = false;
  int ambient_length = 0;
  int kernel_length = 0;
  int image_length = 0;
  bool rank_nullity = false;  ///< kernel_length + image_length = ambient_length
  bool orthogonal = false;    ///< each kernel row pairs to 0 with every gamma^k d
};

KernelReport kernel_probe(const LocalPointSystem& sys, int m, Sign sign);

}  // namespace iwasawa
