#pragma once

#include "iwasawa/series.hpp"

namespace iwasawa {

enum class Sign { Plus, Minus };

inline Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
/// Sign of (-1)^m.
inline Sign parity_sign(int m) { return m % 2 == 0 ? Sign::Plus : Sign::Minus; }
inline const char* sign_name(Sign s) { return s == Sign::Plus ? "+" : "-"; }

// Raw polynomial versions, coefficients mod p^n.

/// omega_m = (1+X)^{p^m} - 1.
Poly omega_poly(const RingParams& R, int m);
/// Phi_{p^m}(1+X) = omega_m / omega_{m-1}, m >= 1.
Poly phi_polynomial(const RingParams& R, int m);
/// omega~_m^+ = prod_{2<=r<=m, r even} Phi_r, omega~_m^- = prod_{1<=r<=m, r odd} Phi_r.
Poly omega_tilde_poly(const RingParams& R, int m, Sign s);
/// omega_m^{+-} = omega_m / omega~_m^{-+}.
Poly omega_signed_poly(const RingParams& R, int m, Sign s);

/// Phi_{p^m}(1+X) as a series without modulus. Throws PreconditionError for m = 0.
TruncatedSeries phi_poly(const RingParams& R, int m);

/// All cyclotomic factors at level m.
struct CyclotomicFactors {
  int m = 0;
  std::optional<TruncatedSeries> phi;  ///< absent for m = 0
  TruncatedSeries omega;
  TruncatedSeries omega_plus;
  TruncatedSeries omega_minus;
  TruncatedSeries omega_tilde_plus;
  TruncatedSeries omega_tilde_minus;
};

CyclotomicFactors omega_factors(const RingParams& R, int m);

}  // namespace iwasawa
