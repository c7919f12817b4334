#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "iwasawa/admissible.hpp"
#include "iwasawa/bipartite.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/ideals.hpp"
#include "iwasawa/local_points.hpp"
#include "iwasawa/signed_decomposition.hpp"
#include "iwasawa/stabilization.hpp"

namespace iwasawa {

using Json = nlohmann::json;

// Readers throw InputError naming the offending field.

/// Decimal string for ext == 1, ["re", "im"] for ext == 2.
Json scalar_to_json(const RingParams& R, Scalar s);
Scalar scalar_from_json(const RingParams& R, const Json& j, const std::string& field);

RingParams params_from_json(const Json& j);

/// {"p","n","ext","level","coeffs"}; "level" is null and "modulus" holds the
/// modulus coefficients when it is not some omega_m (or absent for plain
/// polynomials).
Json to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const Json& j);

Json to_json(const GroupRingElement& x);
GroupRingElement group_element_from_json(const Json& j);

Json to_json(const ThetaFamily& fam);
ThetaFamily family_from_json(const Json& j);

Json to_json(const SignedPair& pair);
SignedPair signed_pair_from_json(const Json& j);

Json to_json(const CyclotomicFactors& f);
Json to_json(const CheckReport& r);

/// {"a":"num/den","b":"num/den"} plus "ap" and "p" for reading back.
Json to_json(const QuadraticScalar& x);
QuadraticScalar quadratic_from_json(const Json& j);

Json to_json(const QuadGroupElement& x);
Json to_json(const ProjectionReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const PlusVanishingReport& r, const RingParams& R);

Json to_json(const PairingTable& t, const RingParams& R);
Json to_json(const LocalPointSystem& sys);
LocalPointSystem local_system_from_json(const Json& j);
Json to_json(const InvariantReport& r);
Json to_json(const ContainmentReport& r);
Json to_json(const KernelReport& r);

Json to_json(const std::vector<AdmissiblePrime>& primes);
std::string to_csv(const std::vector<AdmissiblePrime>& primes);
/// {"a":[a1,a2,a3,a4,a6],"conductor":N,"conductor_factors":[[q,e],...]}.
CurveData curve_from_json(const Json& j);
Json to_json(const CurveData& c);
Json to_json(const AdmissibilityDecision& d);

/// {"p","n","ext","M","entries":[[series coeff lists]]} with entries given
/// as coefficient lists in Lambda_n/(omega_M).
Json to_json(const PresentationMatrix& P, int depth);
PresentationMatrix presentation_from_json(const Json& j);
Json to_json(const FiniteIdeal& I);

Json to_json(const BipartiteSystem& sys);
BipartiteSystem bipartite_from_json(const Json& j);
Json to_json(const BipartiteReport& r);

}  // namespace iwasawa
