#pragma once

#include <vector>

#include "iwasawa/series.hpp"
#include "iwasawa/zmod_linalg.hpp"

namespace iwasawa {

/// Ideal of O/p^n[X]/(modulus). The normalized basis is the Howell form of
/// the Z/p^n-lattice spanned by X^j g for all generators g and
/// 0 <= j < deg(modulus) (and y X^j g when ext == 2).
class FiniteIdeal {
 public:
  FiniteIdeal() = default;
  FiniteIdeal(const RingParams& params, Poly modulus, std::vector<TruncatedSeries> generators);

  static FiniteIdeal zero(const RingParams& params, const Poly& modulus);
  static FiniteIdeal principal(const TruncatedSeries& g);

  const RingParams& params() const { return params_; }
  const Poly& modulus() const { return modulus_; }
  const std::vector<TruncatedSeries>& generators() const { return generators_; }
  const HowellForm& basis() const { return basis_; }
  /// The normalized basis rows as series.
  std::vector<TruncatedSeries> normalized_generators() const;
  /// log_p of the number of elements.
  int length() const { return basis_.length(); }

  bool contains(const TruncatedSeries& f) const;

  friend bool operator==(const FiniteIdeal& a, const FiniteIdeal& b) { return a.basis_ == b.basis_; }

 private:
  RingParams params_;
  Poly modulus_;
  std::vector<TruncatedSeries> generators_;
  HowellForm basis_;
};

/// J is contained in I.
bool ideal_contains(const FiniteIdeal& I, const FiniteIdeal& J);
FiniteIdeal ideal_square(const FiniteIdeal& I);
FiniteIdeal ideal_product(const FiniteIdeal& I, const FiniteIdeal& J);

/// Matrix over O/p^n[X]/(modulus); rows are relations, columns generators.
struct PresentationMatrix {
  RingParams params;
  Poly modulus;
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<TruncatedSeries>> entries;  ///< entries[row][col]

  /// Throws ParameterMismatch unless all entries share params and modulus.
  static PresentationMatrix make(std::vector<std::vector<TruncatedSeries>> entries);
};

/// Determinant by division-free Laplace expansion.
TruncatedSeries determinant(const std::vector<std::vector<TruncatedSeries>>& m);

/// 0th Fitting ideal: the ideal of all cols x cols minors, zero when
/// rows < cols. Minors are spread over `jobs` threads.
FiniteIdeal fitting_ideal(const PresentationMatrix& P, int jobs = 1);

}  // namespace iwasawa
