#include "iwasawa/cyclotomic.hpp"

#include "iwasawa/errors.hpp"

namespace iwasawa {

Poly omega_poly(const RingParams& R, int m) {
  if (m < 0) throw PreconditionError("omega: negative level");
  Poly f = one_plus_x_pow(R, ipow(R.p(), m));
  f[0] = R.sub(f[0], R.one());
  return trimmed(std::move(f));
}

Poly phi_polynomial(const RingParams& R, int m) {
  if (m < 1) throw PreconditionError("Phi_m(1+X) is defined for m >= 1 (omega_0 = X is produced by omega_factors)");
  return poly_exact_div(R, omega_poly(R, m), omega_poly(R, m - 1));
}

Poly omega_tilde_poly(const RingParams& R, int m, Sign s) {
  Poly f = poly_constant(R, 1);
  for (int r = (s == Sign::Plus ? 2 : 1); r <= m; r += 2) f = poly_mul(R, f, phi_polynomial(R, r));
  return f;
}

Poly omega_signed_poly(const RingParams& R, int m, Sign s) {
  return poly_exact_div(R, omega_poly(R, m), omega_tilde_poly(R, m, opposite(s)));
}

TruncatedSeries phi_poly(const RingParams& R, int m) { return TruncatedSeries(R, phi_polynomial(R, m)); }

CyclotomicFactors omega_factors(const RingParams& R, int m) {
  if (m < 0) throw PreconditionError("omega_factors: negative level");
  CyclotomicFactors f;
  f.m = m;
  if (m >= 1) f.phi = phi_poly(R, m);
  const Poly omega = omega_poly(R, m);
  const Poly tp = omega_tilde_poly(R, m, Sign::Plus);
  const Poly tm = omega_tilde_poly(R, m, Sign::Minus);
  f.omega = TruncatedSeries(R, omega);
  f.omega_tilde_plus = TruncatedSeries(R, tp);
  f.omega_tilde_minus = TruncatedSeries(R, tm);
  f.omega_plus = TruncatedSeries(R, poly_exact_div(R, omega, tm));
  f.omega_minus = TruncatedSeries(R, poly_exact_div(R, omega, tp));
  return f;
}

}  // namespace iwasawa
