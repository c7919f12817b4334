#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/quadratic_field.hpp"
#include "iwasawa/signed_decomposition.hpp"
#include "iwasawa/theta_family.hpp"

namespace iwasawa {

/// Group ring element over Q(alpha) at level m, coefficient i on gamma^i.
struct QuadGroupElement {
  int level = 0;
  std::vector<QuadraticScalar> coeffs;

  static QuadGroupElement zero(const HeckeQuadField& F, int p, int level);
  /// Integer lift of x with representatives in [0, p^n).
  static QuadGroupElement lift(const HeckeQuadField& F, const GroupRingElement& x);

  QuadGroupElement operator+(const QuadGroupElement& o) const;
  QuadGroupElement operator-(const QuadGroupElement& o) const;
  QuadGroupElement operator*(const QuadraticScalar& s) const;
  bool is_zero() const;
  QuadraticScalar eval_trivial() const;

  friend bool operator==(const QuadGroupElement&, const QuadGroupElement&) = default;
};

QuadGroupElement project(const QuadGroupElement& x, int p);
QuadGroupElement norm_xi(const QuadGroupElement& x, int p);

/// lambda_{root,m}: lambda_m / root^m - xi(lambda_{m-1}) / root^{m+1} for m >= 1,
/// lambda_0 - (a_p lambda_0 - pi(lambda_1)) / root for m = 0, computed on
/// the integer lifts of the family.
QuadGroupElement stabilize(const ThetaFamily& fam, const HeckeQuadField& F, Root root, int m, int component = 0);

struct ProjectionCheck {
  int m = 0;
  bool passed = false;
  /// pi(lambda_{root,m+1}) - lambda_{root,m} is exactly zero.
  bool exact = false;
  /// root^{m+1} times the difference; integral and divisible by p^n on success.
  QuadGroupElement scaled_residual;
};

struct ProjectionReport {
  Root root = Root::Alpha;
  bool passed = true;
  std::vector<ProjectionCheck> checks;
};

/// pi(lambda_{root,m+1}) = lambda_{root,m} for 0 <= m <= up_to. On integer
/// lifts the m = 0 case holds exactly and the m >= 1 cases hold up to the
/// lift of the norm relation, so those are accepted when the scaled residual
/// is an integral vector divisible by p^n.
ProjectionReport check_projection_compat(const ThetaFamily& fam, const HeckeQuadField& F, Root root, int up_to);

/// Polynomial in the indeterminates (L1, L0, u, v_alpha, v_beta) with
/// coefficients in Q(alpha).
class FormalPoly {
 public:
  enum Var { L1 = 0, L0 = 1, U = 2, VA = 3, VB = 4 };
  using Monomial = std::array<int, 5>;

  explicit FormalPoly(const HeckeQuadField& F) : field_(F) {}
  static FormalPoly constant(const HeckeQuadField& F, const QuadraticScalar& c);
  static FormalPoly variable(const HeckeQuadField& F, Var v);

  FormalPoly operator+(const FormalPoly& o) const;
  FormalPoly operator-(const FormalPoly& o) const;
  FormalPoly operator*(const FormalPoly& o) const;
  FormalPoly operator*(const QuadraticScalar& c) const;
  /// Rewrites every v^2 as replacement * (remaining factors).
  FormalPoly substitute_square(Var v, const FormalPoly& replacement) const;
  QuadraticScalar evaluate(const std::array<QuadraticScalar, 5>& values) const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, QuadraticScalar>& terms() const { return terms_; }

  friend bool operator==(const FormalPoly& a, const FormalPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const QuadraticScalar& c);

  HeckeQuadField field_;
  std::map<Monomial, QuadraticScalar> terms_;
};

/// Numeric values for the trivial-character evaluations and the L-value
/// indeterminate u.
struct IdentityInstance {
  QuadraticScalar lambda0;
  QuadraticScalar lambda1;
  QuadraticScalar u;
};

struct IdentityStep {
  std::string name;
  bool passed = false;
};

struct IdentityReport {
  std::string variant;  ///< "inert" or "split"
  i64 ap = 0;
  i64 p = 0;
  bool passed = false;
  std::vector<IdentityStep> steps;
  QuadraticScalar unit_factor;
  i64 unit_factor_expected = 0;
  std::optional<Rational> unit_factor_valuation;
  /// Whether the unit factor has valuation 0; only asserted when p | a_p.
  bool unit_factor_is_unit = false;
};

/// Derives both premises from the stabilization relations at the trivial
/// character and v_root^2 = (1 - root^{-2}) u, checks them against the
/// stated forms, eliminates v_alpha v_beta and compares with
/// L1^2 - alpha beta L0^2 = ((alpha^3 - beta^3)/(alpha - beta) - 1) u.
IdentityReport leading_identity_inert(const HeckeQuadField& F, const std::optional<IdentityInstance>& instance = {});
/// Same with v_root^2 = (1 - root^{-1})^2 u and the conclusion
/// L1^2 - alpha beta L0^2 = (1 - 2(alpha + beta) + alpha^2 + alpha beta + beta^2) u.
IdentityReport leading_identity_split(const HeckeQuadField& F, const std::optional<IdentityInstance>& instance = {});

struct PlusVanishingReport {
  bool passed = false;
  Scalar lambda0_trivial;
  Scalar lambda1_trivial;
  Scalar plus_trivial;
  Scalar minus_trivial;
  bool premise = false;         ///< lambda_0(1) = 0
  bool plus_vanishes = false;   ///< lambda^+(1) = 0 (checked only under the premise)
  bool minus_matches = false;   ///< lambda^-(1) = -lambda_1(1)
};

/// Requires a_p = 0 and depth >= 1; runs pm_extract (component 0).
PlusVanishingReport plus_vanishing_check(const ThetaFamily& fam, int component = 0);

}  // namespace iwasawa
