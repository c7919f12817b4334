#pragma once

#include <string>
#include <string_view>

#include "iwasawa/polynomial.hpp"

namespace iwasawa {

/// Parses sums of terms `c`, `c*X`, `c*X^k`, `X^k`, `-X` (integers c, k)
/// such as "1 + 2*X - X^3" into a polynomial over R. Repeated powers add up.
/// Throws InputError mentioning `field` on malformed text.
Poly parse_poly(const RingParams& R, std::string_view text, const std::string& field = "polynomial");

/// Inverse of parse_poly using representatives in [0, p^n); "0" for zero.
/// Only ext == 1 coefficients can be written this way.
std::string format_poly(const Poly& f);

}  // namespace iwasawa
