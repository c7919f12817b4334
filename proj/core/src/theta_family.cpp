#include "iwasawa/theta_family.hpp"

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"

namespace iwasawa {

ThetaFamily ThetaFamily::zero(const RingParams& params, i64 ap, int depth, int rank) {
  ThetaFamily f;
  f.params = params;
  f.ap = ap;
  f.depth = depth;
  f.rank = rank;
  for (int m = 0; m <= depth; ++m) f.levels.emplace_back(static_cast<std::size_t>(rank), GroupRingElement::zero(params, m));
  return f;
}

void ThetaFamily::validate() const {
  if (params.ext() != 1) throw PreconditionError("theta families have Z/p^n coefficients (ext = 1)");
  if (depth < 0 || rank < 1) throw PreconditionError("theta family needs depth >= 0 and rank >= 1");
  if (static_cast<int>(levels.size()) != depth + 1) throw PreconditionError("theta family needs depth + 1 levels");
  for (int m = 0; m <= depth; ++m) {
    if (static_cast<int>(levels[m].size()) != rank) throw PreconditionError("theta family level has the wrong rank");
    for (const auto& x : levels[m]) {
      if (x.level() != m) throw PreconditionError("theta family element at the wrong level");
      require_same(params, x.params(), "theta family");
    }
  }
}

std::vector<int> CheckReport::failing_levels() const {
  std::vector<int> out;
  for (const auto& c : checks) {
    if (!c.passed && (out.empty() || out.back() != c.m)) out.push_back(c.m);
  }
  return out;
}

CheckReport check_norm_relation(const ThetaFamily& fam) {
  fam.validate();
  if (fam.depth < 1) throw PreconditionError("check_norm_relation needs depth >= 1");
  CheckReport rep{"norm_relation", true, {}};
  const Scalar ap = fam.ap_scalar();
  for (int m = 1; m + 1 <= fam.depth; ++m) {
    for (int k = 0; k < fam.rank; ++k) {
      GroupRingElement lhs = project(fam.at(m + 1, k));
      GroupRingElement rhs = fam.at(m, k).scaled(ap) - norm_xi(fam.at(m - 1, k));
      GroupRingElement diff = lhs - rhs;
      const bool ok = diff.is_zero();
      rep.passed = rep.passed && ok;
      rep.checks.push_back({m, k, ok, std::move(diff)});
    }
  }
  return rep;
}

namespace {

void require_ap_zero(const ThetaFamily& fam, const char* what) {
  if (!fam.params.is_zero(fam.ap_scalar()))
    throw PreconditionError(std::string(what) + " requires a_p = 0 mod p^n");
}

}  // namespace

CheckReport check_norm_relation_ap_zero(const ThetaFamily& fam) {
  fam.validate();
  require_ap_zero(fam, "check_norm_relation_ap_zero");
  if (fam.depth < 1) throw PreconditionError("check_norm_relation needs depth >= 1");
  CheckReport rep{"norm_relation_ap_zero", true, {}};
  for (int m = 1; m + 1 <= fam.depth; ++m) {
    for (int k = 0; k < fam.rank; ++k) {
      GroupRingElement sum = project(fam.at(m + 1, k)) + norm_xi(fam.at(m - 1, k));
      const bool ok = sum.is_zero();
      rep.passed = rep.passed && ok;
      rep.checks.push_back({m, k, ok, std::move(sum)});
    }
  }
  return rep;
}

CheckReport annihilator_check(const ThetaFamily& fam) {
  fam.validate();
  require_ap_zero(fam, "annihilator_check");
  CheckReport rep{"annihilator", true, {}};
  const RingParams& R = fam.params;
  for (int m = 0; m <= fam.depth; ++m) {
    const Poly modulus = omega_poly(R, m);
    const TruncatedSeries ann(R, omega_signed_poly(R, m, parity_sign(m)), modulus);
    for (int k = 0; k < fam.rank; ++k) {
      GroupRingElement prod = GroupRingElement::from_series(ann * fam.at(m, k).to_series(), m);
      const bool ok = prod.is_zero();
      rep.passed = rep.passed && ok;
      rep.checks.push_back({m, k, ok, std::move(prod)});
    }
  }
  return rep;
}

}  // namespace iwasawa
