#pragma once

#include <string>
#include <vector>

#include "iwasawa/group_ring.hpp"

namespace iwasawa {

/// A norm-compatible tower {lambda_m}, 0 <= m <= depth, of rank-r vectors of
/// group ring elements (rank 1 for theta elements, r > 1 for class-valued
/// families). Coefficients live in Z/p^n (ext == 1).
struct ThetaFamily {
  RingParams params;
  i64 ap = 0;  ///< integer representative of a_p
  int depth = 0;
  int rank = 1;
  std::vector<std::vector<GroupRingElement>> levels;  ///< levels[m][component]

  static ThetaFamily zero(const RingParams& params, i64 ap, int depth, int rank = 1);

  Scalar ap_scalar() const { return params.from_int(ap); }
  const GroupRingElement& at(int m, int component = 0) const { return levels.at(m).at(component); }
  GroupRingElement& at(int m, int component = 0) { return levels.at(m).at(component); }
  /// Throws PreconditionError if the shape invariants fail.
  void validate() const;
};

/// One checked identity at a given level and component. `witness` is the
/// difference of the two sides (zero when the check passes).
struct LevelCheck {
  int m = 0;
  int component = 0;
  bool passed = true;
  GroupRingElement witness;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<LevelCheck> checks;
  std::vector<int> failing_levels() const;
};

/// project(lambda_{m+1}) = a_p lambda_m - norm_xi(lambda_{m-1}) for 1 <= m <= depth - 1.
CheckReport check_norm_relation(const ThetaFamily& fam);
/// The a_p = 0 relation project(lambda_{m+1}) = -norm_xi(lambda_{m-1}), evaluated
/// on its own code path. Throws PreconditionError if a_p != 0 mod p^n.
CheckReport check_norm_relation_ap_zero(const ThetaFamily& fam);
/// omega_m^eps lambda_m = 0 in Lambda_{m,n}, eps the sign of (-1)^m.
/// Throws PreconditionError if a_p != 0 mod p^n.
CheckReport annihilator_check(const ThetaFamily& fam);

}  // namespace iwasawa
