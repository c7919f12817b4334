#pragma once

#include <utility>
#include <vector>

#include "iwasawa/modular.hpp"

namespace iwasawa {

/// Dense polynomial over O/p^n in ascending degree. Functions below return
/// trimmed polynomials (no trailing zeros); the zero polynomial is empty.
using Poly = std::vector<Scalar>;

void trim(Poly& f);
Poly trimmed(Poly f);
/// Degree of f, -1 for the zero polynomial.
int degree(const Poly& f);
Scalar coeff(const Poly& f, int i);

Poly poly_constant(const RingParams& R, i64 c);
/// X^k.
Poly poly_monomial(const RingParams& R, int k, i64 c = 1);
/// Polynomial with the given integer coefficients (ascending), reduced mod p^n.
Poly poly_from_ints(const RingParams& R, const std::vector<i64>& c);

Poly poly_add(const RingParams& R, const Poly& a, const Poly& b);
Poly poly_sub(const RingParams& R, const Poly& a, const Poly& b);
Poly poly_neg(const RingParams& R, const Poly& a);
Poly poly_scale(const RingParams& R, const Poly& a, Scalar s);
Poly poly_mul(const RingParams& R, const Poly& a, const Poly& b);
/// Quotient and remainder for a divisor with unit leading coefficient.
/// Throws NotDivisible if the leading coefficient is not a unit.
std::pair<Poly, Poly> poly_divmod(const RingParams& R, const Poly& a, const Poly& b);
Poly poly_mod(const RingParams& R, const Poly& a, const Poly& b);
/// Quotient a / b; throws NotDivisible if the remainder is nonzero.
Poly poly_exact_div(const RingParams& R, const Poly& a, const Poly& b);
/// (1 + X)^e.
Poly one_plus_x_pow(const RingParams& R, i64 e);

bool poly_is_zero(const Poly& f);

}  // namespace iwasawa

#include "iwasawa/zmod_linalg.hpp"

namespace iwasawa {

/// Z/p^n coordinates of f truncated to `terms` coefficients
/// (ext coordinates interleaved: re_0, im_0, re_1, ... when ext == 2).
ZVector poly_coords(const RingParams& R, const Poly& f, int terms);
Poly poly_from_coords(const RingParams& R, const ZVector& v);

/// Result of solving b * x = a in O/p^n[X]/(modulus).
struct QuotientSolve {
  std::optional<Poly> solution;  ///< canonical solution, if any
  HowellForm kernel;             ///< coordinates of {x : b x = 0}, deg x < unknown_degree
};

/// Multiplication by b on polynomials of degree < unknown_degree, reduced
/// modulo `modulus`, as a linear system over Z/p^n. Unknowns are ordered by
/// degree with ext coordinates interleaved.
LinearSystem multiplication_system(const RingParams& R, const Poly& b, const Poly& modulus, int unknown_degree);

/// Solves b * x = a modulo `modulus` for x of degree < unknown_degree, as a
/// linear system over Z/p^n. `modulus` needs a unit leading coefficient.
QuotientSolve solve_multiple(const RingParams& R, const Poly& b, const Poly& a, const Poly& modulus,
                             int unknown_degree);

}  // namespace iwasawa
