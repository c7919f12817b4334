#include "iwasawa/serialization.hpp"

#include <sstream>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

const Json& field(const Json& j, const std::string& name) {
  if (!j.is_object()) throw InputError("expected an object around field '" + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw InputError("missing field '" + name + "'");
  return *it;
}

i64 parse_integer(const Json& v, const std::string& name) {
  if (v.is_number_integer()) return v.get<i64>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t pos = 0;
      const long long x = std::stoll(s, &pos);
      if (pos == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw InputError("field '" + name + "' is not an integer");
}

i64 get_int(const Json& j, const std::string& name) { return parse_integer(field(j, name), name); }

int get_small(const Json& j, const std::string& name) {
  const i64 v = get_int(j, name);
  if (v < -(1 << 30) || v > (1 << 30)) throw InputError("field '" + name + "' is out of range");
  return static_cast<int>(v);
}

const Json& get_array(const Json& j, const std::string& name) {
  const Json& v = field(j, name);
  if (!v.is_array()) throw InputError("field '" + name + "' is not an array");
  return v;
}

Json coeffs_to_json(const RingParams& R, const std::vector<Scalar>& c) {
  Json a = Json::array();
  for (const Scalar& s : c) a.push_back(scalar_to_json(R, s));
  return a;
}

std::vector<Scalar> coeffs_from_json(const RingParams& R, const Json& a, const std::string& name) {
  if (!a.is_array()) throw InputError("field '" + name + "' is not an array");
  std::vector<Scalar> out;
  out.reserve(a.size());
  for (const Json& v : a) out.push_back(scalar_from_json(R, v, name));
  return out;
}

Json params_json(const RingParams& R) { return {{"p", R.p()}, {"n", R.n()}, {"ext", R.ext()}}; }

std::string rational_string(const Rational& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

Rational rational_from(const Json& v, const std::string& name) {
  if (v.is_number_integer()) return Rational(std::to_string(v.get<i64>()));
  if (!v.is_string()) throw InputError("field '" + name + "' is not a rational string");
  Rational r;
  if (r.set_str(v.get<std::string>(), 10) != 0 || r.get_den() == 0)
    throw InputError("field '" + name + "' is not a rational string");
  r.canonicalize();
  return r;
}

std::optional<int> omega_level_of(const RingParams& R, const Poly& modulus) {
  int m = 0;
  for (i64 deg = 1; deg <= degree(modulus); deg *= R.p(), ++m) {
    if (deg == degree(modulus)) return omega_poly(R, m) == modulus ? std::optional<int>(m) : std::nullopt;
  }
  return std::nullopt;
}

Json family_level_json(const std::vector<GroupRingElement>& comps) {
  Json a = Json::array();
  for (const auto& x : comps) a.push_back(to_json(x));
  return a;
}

std::string mode_name(SignedMode m) { return m == SignedMode::PlusMinus ? "pm" : "sharpflat"; }

Json series_list(const std::vector<TruncatedSeries>& v) {
  Json a = Json::array();
  for (const auto& f : v) a.push_back(to_json(f));
  return a;
}

std::vector<TruncatedSeries> series_list_from(const Json& a, const std::string& name) {
  if (!a.is_array()) throw InputError("field '" + name + "' is not an array");
  std::vector<TruncatedSeries> out;
  for (const Json& v : a) out.push_back(series_from_json(v));
  return out;
}

const char* convention_name(ContainmentConvention c) {
  return c == ContainmentConvention::Opposite ? "opposite" : "literal";
}

Json howell_json(const HowellForm& h) {
  Json rows = Json::array();
  for (const auto& r : h.rows()) rows.push_back(r);
  return {{"width", h.width()}, {"length", h.length()}, {"rows", rows}};
}

Json optional_rational(const std::optional<Rational>& r) {
  return r ? Json(rational_string(*r)) : Json(nullptr);
}

Json prime_set_json(const PrimeSet& S) { return Json(S); }

}  // namespace

Json scalar_to_json(const RingParams& R, Scalar s) {
  if (R.ext() == 1) return std::to_string(s.re);
  return Json::array({std::to_string(s.re), std::to_string(s.im)});
}

Scalar scalar_from_json(const RingParams& R, const Json& j, const std::string& field_name) {
  if (j.is_array()) {
    if (j.size() != 2) throw InputError("field '" + field_name + "' has an extension scalar without 2 entries");
    const i64 re = parse_integer(j[0], field_name);
    const i64 im = parse_integer(j[1], field_name);
    if (R.ext() == 1 && mod_reduce(im, R.modulus()) != 0)
      throw InputError("field '" + field_name + "' has an extension scalar over ext = 1");
    return R.ext() == 1 ? R.from_int(re) : R.make(mod_reduce(re, R.modulus()), mod_reduce(im, R.modulus()));
  }
  return R.from_int(parse_integer(j, field_name));
}

RingParams params_from_json(const Json& j) {
  const int p = get_small(j, "p");
  const int n = get_small(j, "n");
  const int ext = j.contains("ext") ? get_small(j, "ext") : 1;
  try {
    return RingParams(p, n, ext);
  } catch (const PreconditionError& e) {
    throw InputError(std::string("fields 'p'/'n'/'ext': ") + e.what());
  }
}

Json to_json(const TruncatedSeries& f) {
  Json j = params_json(f.params());
  j["coeffs"] = coeffs_to_json(f.params(), f.coeffs());
  if (!f.modulus()) {
    j["level"] = nullptr;
    return j;
  }
  const auto level = omega_level_of(f.params(), *f.modulus());
  if (level) {
    j["level"] = *level;
  } else {
    j["level"] = nullptr;
    j["modulus"] = coeffs_to_json(f.params(), *f.modulus());
  }
  return j;
}

TruncatedSeries series_from_json(const Json& j) {
  const RingParams R = params_from_json(j);
  Poly c = trimmed(coeffs_from_json(R, get_array(j, "coeffs"), "coeffs"));
  if (j.contains("modulus")) {
    Poly m = trimmed(coeffs_from_json(R, get_array(j, "modulus"), "modulus"));
    if (m.empty() || !R.is_unit(m.back())) throw InputError("field 'modulus' needs a unit leading coefficient");
    return TruncatedSeries(R, std::move(c), std::move(m));
  }
  const Json& level = field(j, "level");
  if (level.is_null()) return TruncatedSeries(R, std::move(c));
  const int m = get_small(j, "level");
  if (m < 0 || m > 12) throw InputError("field 'level' is out of range");
  return TruncatedSeries::at_level(R, std::move(c), m);
}

Json to_json(const GroupRingElement& x) {
  Json j = params_json(x.params());
  j["level"] = x.level();
  j["coeffs"] = coeffs_to_json(x.params(), x.coeffs());
  return j;
}

GroupRingElement group_element_from_json(const Json& j) {
  const RingParams R = params_from_json(j);
  const int level = get_small(j, "level");
  if (level < 0 || level > 12) throw InputError("field 'level' is out of range");
  auto c = coeffs_from_json(R, get_array(j, "coeffs"), "coeffs");
  if (c.size() != static_cast<std::size_t>(ipow(R.p(), level)))
    throw InputError("field 'coeffs' must have p^level entries");
  return GroupRingElement(R, level, std::move(c));
}

Json to_json(const ThetaFamily& fam) {
  Json levels = Json::array();
  for (const auto& l : fam.levels) levels.push_back(family_level_json(l));
  return {{"p", fam.params.p()}, {"n", fam.params.n()}, {"ap", std::to_string(fam.ap)},
          {"M", fam.depth},      {"r", fam.rank},       {"levels", levels}};
}

ThetaFamily family_from_json(const Json& j) {
  const RingParams R = params_from_json(j);
  if (R.ext() != 1) throw InputError("field 'ext': theta families are defined over ext = 1");
  ThetaFamily fam;
  fam.params = R;
  fam.ap = get_int(j, "ap");
  fam.depth = get_small(j, "M");
  fam.rank = j.contains("r") ? get_small(j, "r") : 1;
  const Json& levels = get_array(j, "levels");
  for (const Json& l : levels) {
    if (!l.is_array()) throw InputError("field 'levels' must hold arrays of group ring elements");
    std::vector<GroupRingElement> comps;
    for (const Json& x : l) comps.push_back(group_element_from_json(x));
    fam.levels.push_back(std::move(comps));
  }
  try {
    fam.validate();
  } catch (const PreconditionError& e) {
    throw InputError(std::string("field 'levels': ") + e.what());
  }
  return fam;
}

Json to_json(const SignedPair& pair) {
  Json kernel = Json::array();
  for (const auto& [a, b] : pair.kernel_basis) kernel.push_back(Json::array({to_json(a), to_json(b)}));
  return {{"mode", mode_name(pair.mode)},
          {"p", pair.params.p()},
          {"n", pair.params.n()},
          {"ap", std::to_string(pair.ap)},
          {"M", pair.depth},
          {"representatives", {{"first", series_list(pair.first)}, {"second", series_list(pair.second)}}},
          {"kernel_basis", kernel}};
}

SignedPair signed_pair_from_json(const Json& j) {
  SignedPair pair;
  const std::string mode = field(j, "mode").is_string() ? field(j, "mode").get<std::string>() : "";
  if (mode == "pm")
    pair.mode = SignedMode::PlusMinus;
  else if (mode == "sharpflat")
    pair.mode = SignedMode::SharpFlat;
  else
    throw InputError("field 'mode' must be \"pm\" or \"sharpflat\"");
  pair.params = params_from_json(j);
  pair.ap = get_int(j, "ap");
  pair.depth = get_small(j, "M");
  const Json& reps = field(j, "representatives");
  pair.first = series_list_from(field(reps, "first"), "first");
  pair.second = series_list_from(field(reps, "second"), "second");
  if (pair.first.size() != pair.second.size()) throw InputError("field 'representatives': rank mismatch");
  for (const Json& k : get_array(j, "kernel_basis")) {
    if (!k.is_array() || k.size() != 2) throw InputError("field 'kernel_basis' entries must be pairs");
    pair.kernel_basis.emplace_back(series_from_json(k[0]), series_from_json(k[1]));
  }
  return pair;
}

Json to_json(const CyclotomicFactors& f) {
  Json j = {{"m", f.m},
            {"omega", to_json(f.omega)},
            {"omega_plus", to_json(f.omega_plus)},
            {"omega_minus", to_json(f.omega_minus)},
            {"omega_tilde_plus", to_json(f.omega_tilde_plus)},
            {"omega_tilde_minus", to_json(f.omega_tilde_minus)}};
  j["phi"] = f.phi ? to_json(*f.phi) : Json(nullptr);
  return j;
}

Json to_json(const CheckReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e = {{"m", c.m}, {"component", c.component}, {"passed", c.passed}};
    if (!c.passed) e["witness"] = to_json(c.witness);
    checks.push_back(e);
  }
  return {{"name", r.name}, {"passed", r.passed}, {"checks", checks}, {"failing_levels", r.failing_levels()}};
}

Json to_json(const QuadraticScalar& x) {
  return {{"a", rational_string(x.a())}, {"b", rational_string(x.b())}, {"ap", x.ap()}, {"p", x.p()}};
}

QuadraticScalar quadratic_from_json(const Json& j) {
  return QuadraticScalar(get_int(j, "ap"), get_int(j, "p"), rational_from(field(j, "a"), "a"),
                         rational_from(field(j, "b"), "b"));
}

Json to_json(const QuadGroupElement& x) {
  Json c = Json::array();
  for (const auto& s : x.coeffs) c.push_back({{"a", rational_string(s.a())}, {"b", rational_string(s.b())}});
  return {{"level", x.level}, {"coeffs", c}};
}

Json to_json(const ProjectionReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e = {{"m", c.m}, {"passed", c.passed}, {"exact", c.exact}};
    if (!c.exact) e["scaled_residual"] = to_json(c.scaled_residual);
    checks.push_back(e);
  }
  return {{"root", root_name(r.root)}, {"passed", r.passed}, {"checks", checks}};
}

Json to_json(const IdentityReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back({{"name", s.name}, {"passed", s.passed}});
  return {{"variant", r.variant},
          {"ap", r.ap},
          {"p", r.p},
          {"passed", r.passed},
          {"steps", steps},
          {"unit_factor", to_json(r.unit_factor)},
          {"unit_factor_expected", std::to_string(r.unit_factor_expected)},
          {"unit_factor_valuation", optional_rational(r.unit_factor_valuation)},
          {"unit_factor_is_unit", r.unit_factor_is_unit}};
}

Json to_json(const PlusVanishingReport& r, const RingParams& R) {
  return {{"passed", r.passed},
          {"premise", r.premise},
          {"plus_vanishes", r.plus_vanishes},
          {"minus_matches", r.minus_matches},
          {"lambda0_trivial", scalar_to_json(R, r.lambda0_trivial)},
          {"lambda1_trivial", scalar_to_json(R, r.lambda1_trivial)},
          {"plus_trivial", scalar_to_json(R, r.plus_trivial)},
          {"minus_trivial", scalar_to_json(R, r.minus_trivial)}};
}

Json to_json(const PairingTable& t, const RingParams& R) {
  Json rows = Json::array();
  for (int k = 0; k < t.rank; ++k) {
    Json row = Json::array();
    for (int l = 0; l < t.rank; ++l) row.push_back(scalar_to_json(R, t.at(k, l)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const LocalPointSystem& sys) {
  Json points = Json::array();
  for (const auto& d : sys.points) {
    Json coords = Json::array();
    for (const auto& x : d) coords.push_back(coeffs_to_json(sys.params, x.coeffs()));
    points.push_back(coords);
  }
  Json j = params_json(sys.params);
  j["M"] = sys.depth;
  j["rank"] = sys.rank;
  j["pairing"] = to_json(sys.pairing, sys.params);
  j["points"] = points;
  j["seed"] = std::to_string(sys.seed);
  j["attempts"] = sys.attempts;
  return j;
}

LocalPointSystem local_system_from_json(const Json& j) {
  LocalPointSystem sys;
  sys.params = params_from_json(j);
  if (sys.params.ext() != 2) throw InputError("field 'ext': local point systems use ext = 2");
  sys.depth = get_small(j, "M");
  sys.rank = get_small(j, "rank");
  if (sys.depth < 0 || sys.rank < 1) throw InputError("fields 'M'/'rank' are out of range");
  const Json& pairing = get_array(j, "pairing");
  if (pairing.size() != static_cast<std::size_t>(sys.rank)) throw InputError("field 'pairing' must be rank x rank");
  sys.pairing.rank = sys.rank;
  for (const Json& row : pairing) {
    auto r = coeffs_from_json(sys.params, row, "pairing");
    if (r.size() != static_cast<std::size_t>(sys.rank)) throw InputError("field 'pairing' must be rank x rank");
    sys.pairing.entries.insert(sys.pairing.entries.end(), r.begin(), r.end());
  }
  const Json& points = get_array(j, "points");
  if (points.size() != static_cast<std::size_t>(sys.depth + 1)) throw InputError("field 'points' must have M + 1 levels");
  for (std::size_t m = 0; m < points.size(); ++m) {
    if (!points[m].is_array() || points[m].size() != static_cast<std::size_t>(sys.rank))
      throw InputError("field 'points' must hold rank coordinates per level");
    ModuleElement d;
    for (const Json& c : points[m]) {
      auto coeffs = coeffs_from_json(sys.params, c, "points");
      if (coeffs.size() != static_cast<std::size_t>(ipow(sys.params.p(), static_cast<int>(m))))
        throw InputError("field 'points' coordinates must have p^m entries");
      d.emplace_back(sys.params, static_cast<int>(m), std::move(coeffs));
    }
    sys.points.push_back(std::move(d));
  }
  if (j.contains("seed")) sys.seed = static_cast<u64>(get_int(j, "seed"));
  if (j.contains("attempts")) sys.attempts = get_small(j, "attempts");
  return sys;
}

Json to_json(const InvariantReport& r) {
  return {{"passed", r.passed},
          {"pairing_perfect", r.pairing_perfect},
          {"trace_relations", r.trace_relations},
          {"base_relation", r.base_relation},
          {"unit_condition", r.unit_condition},
          {"failing_levels", r.failing_levels}};
}

Json to_json(const ContainmentReport& r) {
  return {{"m", r.m},
          {"sign", sign_name(r.sign)},
          {"convention", convention_name(r.convention)},
          {"trials", r.trials},
          {"failures", r.failures},
          {"passed", r.passed},
          {"image_length", r.image_length},
          {"target_length", r.target_length}};
}

Json to_json(const KernelReport& r) {
  return {{"m", r.m},
          {"sign", sign_name(r.sign)},
          {"equal", r.equal},
          {"ambient_length", r.ambient_length},
          {"kernel_length", r.kernel_length},
          {"image_length", r.image_length},
          {"rank_nullity", r.rank_nullity},
          {"orthogonal", r.orthogonal},
          {"kernel", howell_json(r.kernel)}};
}

Json to_json(const std::vector<AdmissiblePrime>& primes) {
  Json a = Json::array();
  for (const auto& q : primes) a.push_back({{"ell", q.ell}, {"eps", q.eps}, {"degenerate", q.degenerate}});
  return a;
}

std::string to_csv(const std::vector<AdmissiblePrime>& primes) {
  std::ostringstream out;
  out << "ell,eps,degenerate\n";
  for (const auto& q : primes) out << q.ell << ',' << q.eps << ',' << (q.degenerate ? "true" : "false") << '\n';
  return out.str();
}

CurveData curve_from_json(const Json& j) {
  const Json& a = get_array(j, "a");
  if (a.size() != 5) throw InputError("field 'a' must have five coefficients");
  std::array<i64, 5> coeffs{};
  for (std::size_t i = 0; i < 5; ++i) coeffs[i] = parse_integer(a[i], "a");
  const i64 conductor = j.contains("conductor") ? get_int(j, "conductor") : 0;
  std::vector<std::pair<i64, int>> factors;
  if (j.contains("conductor_factors")) {
    for (const Json& f : get_array(j, "conductor_factors")) {
      if (!f.is_array() || f.size() != 2) throw InputError("field 'conductor_factors' entries must be [prime, exponent]");
      factors.emplace_back(parse_integer(f[0], "conductor_factors"),
                           static_cast<int>(parse_integer(f[1], "conductor_factors")));
    }
  }
  try {
    return CurveData::make(coeffs, conductor, std::move(factors));
  } catch (const PreconditionError& e) {
    throw InputError(std::string("field 'a': ") + e.what());
  }
}

Json to_json(const CurveData& c) {
  Json factors = Json::array();
  for (const auto& [q, e] : c.conductor_factors) factors.push_back({q, e});
  return {{"a", c.a}, {"conductor", c.conductor}, {"conductor_factors", factors}};
}

Json to_json(const AdmissibilityDecision& d) {
  Json reasons = Json::array();
  for (auto r : d.reasons) reasons.push_back(reason_code(r));
  return {{"ell", d.ell},
          {"admissible", d.admissible},
          {"reasons", reasons},
          {"a_ell", d.a_ell ? Json(*d.a_ell) : Json(nullptr)},
          {"splitting", splitting_name(d.splitting)},
          {"warnings", d.warnings}};
}

Json to_json(const PresentationMatrix& P, int depth) {
  Json rows = Json::array();
  for (const auto& row : P.entries) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(coeffs_to_json(P.params, e.coeffs()));
    rows.push_back(r);
  }
  Json j = params_json(P.params);
  j["M"] = depth;
  j["entries"] = rows;
  return j;
}

PresentationMatrix presentation_from_json(const Json& j) {
  const RingParams R = params_from_json(j);
  const int M = get_small(j, "M");
  if (M < 0 || M > 6) throw InputError("field 'M' is out of range");
  const Poly modulus = omega_poly(R, M);
  std::vector<std::vector<TruncatedSeries>> entries;
  for (const Json& row : get_array(j, "entries")) {
    if (!row.is_array()) throw InputError("field 'entries' must be a matrix");
    std::vector<TruncatedSeries> r;
    for (const Json& e : row) r.emplace_back(R, trimmed(coeffs_from_json(R, e, "entries")), modulus);
    entries.push_back(std::move(r));
  }
  if (entries.empty() || entries[0].empty()) throw InputError("field 'entries' needs at least one column");
  for (const auto& r : entries)
    if (r.size() != entries[0].size()) throw InputError("field 'entries' rows differ in length");
  return PresentationMatrix::make(std::move(entries));
}

Json to_json(const FiniteIdeal& I) {
  Json gens = Json::array();
  for (const auto& g : I.normalized_generators()) gens.push_back(coeffs_to_json(I.params(), g.coeffs()));
  Json j = params_json(I.params());
  j["modulus"] = coeffs_to_json(I.params(), I.modulus());
  j["length"] = I.length();
  j["normalized_generators"] = gens;
  return j;
}

Json to_json(const BipartiteSystem& sys) {
  const RingParams& R = sys.params;
  Json vertices = Json::array();
  for (const auto& [S, parity] : sys.vertices) {
    Json v = {{"S", prime_set_json(S)}, {"parity", parity_name(parity)}};
    if (auto it = sys.kappa.find(S); it != sys.kappa.end()) {
      Json k = Json::array();
      for (const auto& c : it->second) k.push_back(coeffs_to_json(R, c.coeffs()));
      v["kappa"] = k;
    }
    if (auto it = sys.lambda.find(S); it != sys.lambda.end()) v["lambda"] = coeffs_to_json(R, it->second.coeffs());
    vertices.push_back(v);
  }
  Json maps = Json::array();
  for (const auto& [ell, m] : sys.maps) {
    Json phi = Json::array(), psi = Json::array();
    for (const auto& f : m.phi) phi.push_back(coeffs_to_json(R, f.coeffs()));
    for (const auto& f : m.psi) psi.push_back(coeffs_to_json(R, f.coeffs()));
    maps.push_back({{"ell", ell},
                    {"u", coeffs_to_json(R, m.u.coeffs())},
                    {"v", coeffs_to_json(R, m.v.coeffs())},
                    {"phi", phi},
                    {"psi", psi}});
  }
  Json j = params_json(R);
  j["M"] = sys.depth;
  j["rank"] = sys.rank;
  j["vertices"] = vertices;
  j["maps"] = maps;
  return j;
}

BipartiteSystem bipartite_from_json(const Json& j) {
  BipartiteSystem sys;
  sys.params = params_from_json(j);
  sys.depth = get_small(j, "M");
  if (sys.depth < 0 || sys.depth > 6) throw InputError("field 'M' is out of range");
  sys.rank = get_small(j, "rank");
  if (sys.rank < 1) throw InputError("field 'rank' must be positive");
  const Poly modulus = sys.modulus();
  auto series = [&](const Json& c, const std::string& name) {
    return TruncatedSeries(sys.params, trimmed(coeffs_from_json(sys.params, c, name)), modulus);
  };
  for (const Json& v : get_array(j, "vertices")) {
    PrimeSet S;
    for (const Json& q : get_array(v, "S")) S.push_back(parse_integer(q, "S"));
    std::sort(S.begin(), S.end());
    const Json& parity = field(v, "parity");
    if (!parity.is_string()) throw InputError("field 'parity' must be a string");
    const std::string name = parity.get<std::string>();
    if (name == parity_name(ParityClass::Definite))
      sys.vertices[S] = ParityClass::Definite;
    else if (name == parity_name(ParityClass::Indefinite))
      sys.vertices[S] = ParityClass::Indefinite;
    else
      throw InputError("field 'parity' must be DEFINITE or INDEFINITE");
    if (v.contains("kappa")) {
      std::vector<TruncatedSeries> k;
      for (const Json& c : get_array(v, "kappa")) k.push_back(series(c, "kappa"));
      if (k.size() != static_cast<std::size_t>(sys.rank)) throw InputError("field 'kappa' must have rank entries");
      sys.kappa[S] = std::move(k);
    }
    if (v.contains("lambda")) sys.lambda[S] = series(field(v, "lambda"), "lambda");
  }
  for (const Json& m : get_array(j, "maps")) {
    ReciprocityMaps maps;
    maps.u = series(field(m, "u"), "u");
    maps.v = series(field(m, "v"), "v");
    for (const Json& c : get_array(m, "phi")) maps.phi.push_back(series(c, "phi"));
    for (const Json& c : get_array(m, "psi")) maps.psi.push_back(series(c, "psi"));
    if (maps.phi.size() != static_cast<std::size_t>(sys.rank) || maps.psi.size() != static_cast<std::size_t>(sys.rank))
      throw InputError("fields 'phi'/'psi' must have rank entries");
    sys.maps[get_int(m, "ell")] = std::move(maps);
  }
  return sys;
}

Json to_json(const BipartiteReport& r) {
  Json edges = Json::array();
  for (const auto& e : r.edges)
    edges.push_back({{"S", prime_set_json(e.S)}, {"ell", e.ell}, {"relation", e.relation}, {"passed", e.passed}});
  return {{"passed", r.passed}, {"edges", edges}};
}

}  // namespace iwasawa
