#pragma once

#include <array>
#include <utility>
#include <vector>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/theta_family.hpp"
#include "iwasawa/zmod_linalg.hpp"

namespace iwasawa {

enum class SignedMode { PlusMinus, SharpFlat };

/// Signed components of a family as rank-r vectors of series.
///
/// PlusMinus: first = lambda^+ mod omega_M^+, second = lambda^- mod omega_M^-;
/// the representatives are unique and kernel_basis is empty.
/// SharpFlat: first = lambda^sharp, second = lambda^flat, both mod omega_M.
/// At finite depth the solution is a coset; the representatives are the
/// canonical ones and kernel_basis spans the ambiguity of each component.
struct SignedPair {
  SignedMode mode = SignedMode::PlusMinus;
  RingParams params;
  i64 ap = 0;
  int depth = 0;
  std::vector<TruncatedSeries> first;
  std::vector<TruncatedSeries> second;
  std::vector<std::pair<TruncatedSeries, TruncatedSeries>> kernel_basis;

  int rank() const { return static_cast<int>(first.size()); }
};

/// Whether (a, b) represents the same signed component as entry `component`
/// of the pair: equality modulo the working moduli, plus the kernel span in
/// SharpFlat mode.
bool coset_contains(const SignedPair& pair, int component, const TruncatedSeries& a, const TruncatedSeries& b);

// ---- plus/minus (a_p = 0) ----

/// Builds lambda_m = (-1)^{m/2} omega~_m^- (lambda^+ mod omega_m^+) for even m and
/// lambda_m = (-1)^{(m+1)/2} omega~_m^+ (lambda^- mod omega_m^-) for odd m.
ThetaFamily pm_synthesize(const std::vector<TruncatedSeries>& plus, const std::vector<TruncatedSeries>& minus,
                          const RingParams& params, int depth);
ThetaFamily pm_synthesize(const TruncatedSeries& plus, const TruncatedSeries& minus, const RingParams& params,
                          int depth);

/// Recovers (lambda^+, lambda^-) from a family with a_p = 0. Throws
/// PreconditionError if the norm relation or annihilation fails and
/// DecompositionError if a division has no unique solution or the signed
/// levels are not compatible.
SignedPair pm_extract(const ThetaFamily& fam);

// ---- sharp/flat (general a_p) ----

using SeriesMatrix2 = std::array<std::array<TruncatedSeries, 2>, 2>;

/// C_m = [[a_p, 1], [-Phi_m, 0]] and H_m = C_m ... C_1 for 1 <= m <= depth,
/// entries in Lambda_n/(omega_depth). Index 0 holds m = 1.
struct SprungMatrices {
  RingParams params;
  i64 ap = 0;
  int depth = 0;
  std::vector<SeriesMatrix2> C;
  std::vector<SeriesMatrix2> H;
};

/// Throws InternalError if det(C_m) != Phi_m.
SprungMatrices sprung_matrices(const RingParams& params, i64 ap, int depth);
/// det(H_depth) computed from the polynomial entries, compared with
/// prod_{m<=depth} Phi_m = omega_depth / X.
bool sprung_determinant_matches(const SprungMatrices& mats);

/// Reusable solver for the stacked congruences
///   (lambda_m, -xi(lambda_{m-1})) = H_m (sharp, flat) mod omega_m,  1 <= m <= depth.
/// Unknown coefficients are ordered by descending degree (sharp and flat
/// interleaved), so canonical representatives concentrate on low degrees.
class SprungDecomposer {
 public:
  SprungDecomposer(const RingParams& params, i64 ap, int depth);

  /// Throws PreconditionError if the norm relation fails and
  /// DecompositionError if the stacked system is inconsistent.
  SignedPair decompose(const ThetaFamily& fam) const;

  const LinearSystem& system() const { return system_; }

 private:
  ZVector pack_rhs(const ThetaFamily& fam, int component) const;
  std::pair<Poly, Poly> unpack(const ZVector& x) const;

  RingParams params_;
  i64 ap_;
  int depth_;
  int degree_bound_;
  SprungMatrices mats_;
  std::vector<Poly> omegas_;  ///< omega_m for 0 <= m <= depth
  LinearSystem system_;
};

SignedPair sprung_decompose(const ThetaFamily& fam, int depth);

/// Forward construction: lambda_m = first entry of H_m (sharp, flat) mod omega_m,
/// lambda_0 from Phi_1 lambda_0 = -(second entry of H_1 (sharp, flat)) mod omega_1.
ThetaFamily sprung_synthesize(const std::vector<TruncatedSeries>& sharp, const std::vector<TruncatedSeries>& flat,
                              const RingParams& params, i64 ap, int depth);
ThetaFamily sprung_synthesize(const TruncatedSeries& sharp, const TruncatedSeries& flat, const RingParams& params,
                              i64 ap, int depth);

}  // namespace iwasawa
