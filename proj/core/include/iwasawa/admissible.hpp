#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/modular.hpp"

namespace iwasawa {

/// Elliptic curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
struct CurveData {
  std::array<i64, 5> a{};  ///< a1, a2, a3, a4, a6
  i64 conductor = 0;       ///< N_0; only used for divisibility screens
  std::vector<std::pair<i64, int>> conductor_factors;  ///< (prime, exponent), optional

  /// Throws PreconditionError for a singular curve.
  static CurveData make(std::array<i64, 5> a, i64 conductor = 0, std::vector<std::pair<i64, int>> factors = {});
  /// Discriminant modulo m (m >= 2).
  i64 discriminant_mod(i64 m) const;
  bool good_reduction_at(i64 ell) const { return discriminant_mod(ell) != 0; }
};

constexpr i64 kNaiveCountLimit = i64{1} << 16;
constexpr i64 kPointCountCap = i64{1} << 24;

/// a_ell = ell + 1 - #E(F_ell): enumeration below 2^16, baby-step giant-step
/// from 2^16 up to the cap 2^24. Throws PreconditionError for bad reduction,
/// ell over the cap or ell not prime; InternalError if |a_ell| > 2 sqrt(ell).
i64 a_ell(const CurveData& curve, i64 ell);
/// The two methods on their own (BSGS needs ell > 3).
i64 a_ell_naive(const CurveData& curve, i64 ell);
i64 a_ell_bsgs(const CurveData& curve, i64 ell);

/// Kronecker symbol (a | n) for n >= 1.
int kronecker(i64 a, i64 n);

enum class Splitting { Split, Inert, Ramified };
const char* splitting_name(Splitting s);

/// Behaviour of the prime ell in Q(sqrt(D)).
Splitting splitting(i64 ell, i64 D);
/// (D | ell) = -1; false (ramified) when ell | D.
bool is_inert(i64 ell, i64 D);

bool is_fundamental_discriminant(i64 D);
/// Class number of the imaginary quadratic order of discriminant D < 0 by
/// counting reduced forms.
i64 class_number(i64 D);
constexpr i64 kClassNumberTableBound = 10000;

/// Imaginary quadratic field with the factorisation N_0 = N^+ N^- induced by
/// the splitting of the primes of N_0.
struct QuadFieldData {
  i64 D = 0;
  i64 n_plus = 1;
  i64 n_minus = 1;
  std::vector<i64> n_minus_primes;
  std::optional<i64> class_number;  ///< present for |D| < 10^4

  /// Throws PreconditionError if D is not a negative fundamental discriminant,
  /// gcd(D, N_0) != 1, or N^- is not a squarefree product of an even number
  /// of primes. Needs the conductor factorisation when N_0 > 1.
  static QuadFieldData make(i64 D, const CurveData& curve);
};

enum class AdmissibilityReason {
  DividesPN,          ///< i)   ell | p N_0
  NotInert,           ///< ii)  ell split in K
  Ramified,           ///< ii)  ell ramified in K
  PDividesEllSquaredMinusOne,  ///< iii) p | ell^2 - 1
  PowerDoesNotDivide,          ///< iv)  p^n does not divide (ell+1)^2 - a_ell^2
};
const char* reason_code(AdmissibilityReason r);

struct AdmissibilityDecision {
  i64 ell = 0;
  bool admissible = false;
  std::vector<AdmissibilityReason> reasons;
  std::optional<i64> a_ell;  ///< computed when conditions i)-iii) hold
  Splitting splitting = Splitting::Split;
  std::vector<std::string> warnings;
};

/// Conditions i)-iv) for ell. Requires p >= 5 prime and n >= 1.
AdmissibilityDecision is_n_admissible(i64 ell, const CurveData& curve, const QuadFieldData& K, int p, int n);

struct EpsilonSign {
  int sign = 1;
  bool degenerate = false;  ///< both signs work; +1 returned by convention
};

/// The sign eps with p^n | ell + 1 - eps a_ell. Throws InternalError when
/// neither sign works.
EpsilonSign epsilon_from_trace(i64 ell, i64 a_ell, int p, int n);
EpsilonSign epsilon_sign(i64 ell, const CurveData& curve, int p, int n);

struct AdmissiblePrime {
  i64 ell = 0;
  int eps = 1;
  bool degenerate = false;
  friend bool operator==(const AdmissiblePrime&, const AdmissiblePrime&) = default;
};

/// Primes below `bound`.
std::vector<i64> primes_below(i64 bound);

/// a_ell for every prime below `bound` (0 at primes of bad reduction),
/// computed in parallel blocks. This is the cached fast path of the scan.
class TraceTable {
 public:
  TraceTable(const CurveData& curve, i64 bound, int jobs = 1);
  i64 bound() const { return bound_; }
  /// Throws PreconditionError when ell is outside the table or of bad reduction.
  i64 at(i64 ell) const;
  bool contains(i64 ell) const;

 private:
  i64 bound_;
  std::vector<i64> primes_;
  std::vector<i64> traces_;
  std::vector<char> good_;
};

/// n-admissible primes below `bound`, ascending. Identical for every `jobs`.
/// Conditions i)-iii) are screened before any point count; a_ell is read
/// from `cache` when it covers the prime. Throws InternalError if some
/// admissible prime has a non-unique sign.
std::vector<AdmissiblePrime> scan_admissible(const CurveData& curve, const QuadFieldData& K, int p, int n, i64 bound,
                                             int jobs = 1, const TraceTable* cache = nullptr);

enum class ParityClass { Definite, Indefinite };
const char* parity_name(ParityClass c);

/// Squarefree product of admissible primes (empty = 1).
struct AdmissibleProduct {
  std::vector<i64> primes;
  int n = 1;
  ParityClass parity = ParityClass::Indefinite;
  std::optional<bool> core;  ///< user-supplied, never checked
};

/// eps_K(S) = eps_K(S N^-) = -1 gives DEFINITE. Throws PreconditionError if
/// a prime of S is not inert in K or S has repeated primes.
ParityClass classify_S(const std::vector<i64>& S, const QuadFieldData& K);
AdmissibleProduct make_product(std::vector<i64> primes, int n, const QuadFieldData& K);

}  // namespace iwasawa
