#include "iwasawa/local_points.hpp"

#include <string>

#include "iwasawa/errors.hpp"
#include "iwasawa/random.hpp"

namespace iwasawa {

namespace {

constexpr int kMaxAttempts = 64;

i64 pm_sign(int m) {
  const int e = m % 2 == 0 ? m / 2 : (m + 1) / 2;
  return e % 2 == 0 ? 1 : -1;
}

Scalar random_scalar(const RingParams& R, SplitMix64& rng) {
  const i64 q = R.modulus();
  return R.make(rng.below(q), R.ext() == 2 ? rng.below(q) : 0);
}

Scalar determinant(const RingParams& R, std::vector<Scalar> a, int n) {
  // Division-free Laplace expansion along the first row; tables are small.
  if (n == 1) return a[0];
  Scalar det = R.zero();
  for (int j = 0; j < n; ++j) {
    std::vector<Scalar> minor;
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (c != j) minor.push_back(a[static_cast<std::size_t>(r * n + c)]);
    Scalar term = R.mul(a[static_cast<std::size_t>(j)], determinant(R, minor, n - 1));
    det = j % 2 == 0 ? R.add(det, term) : R.sub(det, term);
  }
  return det;
}

void check_module(const ModuleElement& z, const LocalPointSystem& sys, int m, const char* what) {
  if (static_cast<int>(z.size()) != sys.rank) throw ParameterMismatch(std::string(what) + ": rank mismatch");
  for (const auto& c : z) {
    if (c.level() != m) throw ParameterMismatch(std::string(what) + ": level mismatch");
    require_same(c.params(), sys.params, what);
  }
}

}  // namespace

PairingTable PairingTable::hyperbolic(const RingParams& R, int rank) {
  PairingTable t{rank, std::vector<Scalar>(static_cast<std::size_t>(rank * rank), R.zero())};
  for (int k = 0; k + 1 < rank; k += 2) {
    t.entries[static_cast<std::size_t>(k * rank + k + 1)] = R.one();
    t.entries[static_cast<std::size_t>((k + 1) * rank + k)] = R.one();
  }
  if (rank % 2 == 1) t.entries.back() = R.one();
  return t;
}

PairingTable PairingTable::identity(const RingParams& R, int rank) {
  PairingTable t{rank, std::vector<Scalar>(static_cast<std::size_t>(rank * rank), R.zero())};
  for (int k = 0; k < rank; ++k) t.entries[static_cast<std::size_t>(k * rank + k)] = R.one();
  return t;
}

bool PairingTable::is_perfect(const RingParams& R) const {
  if (rank < 1 || static_cast<int>(entries.size()) != rank * rank) return false;
  return R.is_unit(determinant(R, entries, rank));
}

ModuleElement module_zero(const RingParams& R, int rank, int level) {
  return ModuleElement(static_cast<std::size_t>(rank), GroupRingElement::zero(R, level));
}

ModuleElement module_add(const ModuleElement& a, const ModuleElement& b) {
  if (a.size() != b.size()) throw ParameterMismatch("module_add: rank mismatch");
  ModuleElement r;
  for (std::size_t k = 0; k < a.size(); ++k) r.push_back(a[k] + b[k]);
  return r;
}

ModuleElement module_neg(const ModuleElement& a) {
  ModuleElement r;
  for (const auto& c : a) r.push_back(-c);
  return r;
}

ModuleElement module_scale(const ModuleElement& a, Scalar s) {
  ModuleElement r;
  for (const auto& c : a) r.push_back(c.scaled(s));
  return r;
}

ModuleElement module_shift(const ModuleElement& a, i64 k) {
  ModuleElement r;
  for (const auto& c : a) r.push_back(c.shifted(k));
  return r;
}

bool module_is_zero(const ModuleElement& a) {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

ModuleElement trace_down(const ModuleElement& z) {
  ModuleElement r;
  for (const auto& c : z) r.push_back(project(c));
  return r;
}

ModuleElement restrict_up(const ModuleElement& z) {
  ModuleElement r;
  for (const auto& c : z) r.push_back(norm_xi(c));
  return r;
}

ZVector module_coords(const ModuleElement& z) {
  ZVector v;
  for (const auto& c : z) {
    for (const Scalar& s : c.coeffs()) {
      v.push_back(s.re);
      if (c.params().ext() == 2) v.push_back(s.im);
    }
  }
  return v;
}

ModuleElement module_from_coords(const RingParams& R, int rank, int level, const ZVector& v) {
  const std::size_t N = static_cast<std::size_t>(ipow(R.p(), level));
  const std::size_t e = static_cast<std::size_t>(R.ext());
  if (v.size() != static_cast<std::size_t>(rank) * N * e) throw ParameterMismatch("module_from_coords: length");
  ModuleElement z;
  for (std::size_t k = 0; k < static_cast<std::size_t>(rank); ++k) {
    std::vector<Scalar> c(N);
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t at = (k * N + i) * e;
      c[i] = R.make(v[at], e == 2 ? v[at + 1] : 0);
    }
    z.emplace_back(R, level, std::move(c));
  }
  return z;
}

LocalPointSystem build_system(const RingParams& params, int depth, const PairingTable& table,
                              const std::vector<Poly>& plus, const std::vector<Poly>& minus) {
  if (params.ext() != 2) throw PreconditionError("local point systems need ext = 2");
  if (depth < 1) throw PreconditionError("local point systems need depth >= 1");
  if (plus.size() != minus.size() || static_cast<int>(plus.size()) != table.rank)
    throw PreconditionError("build_system: generator count differs from the pairing rank");
  if (!table.is_perfect(params)) throw PreconditionError("build_system: pairing table is not perfect");
  for (std::size_t k = 0; k < plus.size(); ++k) {
    if (coeff(plus[k], 0) != coeff(minus[k], 0))
      throw PreconditionError("build_system: D^-(0) must equal D^+(0)");
  }
  LocalPointSystem sys;
  sys.params = params;
  sys.depth = depth;
  sys.rank = table.rank;
  sys.pairing = table;
  for (int m = 0; m <= depth; ++m) {
    const Sign s = parity_sign(m);
    const Poly modulus = omega_signed_poly(params, m, s);
    const Poly tilde = omega_tilde_poly(params, m, opposite(s));
    const Poly omega = omega_poly(params, m);
    ModuleElement d;
    for (int k = 0; k < table.rank; ++k) {
      const Poly& src = s == Sign::Plus ? plus[k] : minus[k];
      Poly term = poly_mul(params, tilde, poly_mod(params, src, modulus));
      term = poly_scale(params, poly_mod(params, term, omega), params.from_int(pm_sign(m)));
      d.push_back(GroupRingElement::from_series(TruncatedSeries(params, term, omega), m));
    }
    sys.points.push_back(std::move(d));
  }
  return sys;
}

LocalPointSystem generate_system(const RingParams& params, int depth, int rank, u64 seed,
                                 std::optional<PairingTable> table) {
  if (rank < 2) throw PreconditionError("generate_system needs rank >= 2");
  const PairingTable J = table ? *table : PairingTable::hyperbolic(params, rank);
  const int terms = static_cast<int>(ipow(params.p(), depth));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SplitMix64 rng(derive_seed(seed, static_cast<u64>(attempt)));
    std::vector<Poly> plus(static_cast<std::size_t>(rank)), minus(static_cast<std::size_t>(rank));
    for (int k = 0; k < rank; ++k) {
      for (int i = 0; i < terms; ++i) plus[k].push_back(random_scalar(params, rng));
      for (int i = 0; i < terms; ++i) minus[k].push_back(random_scalar(params, rng));
      minus[k][0] = plus[k][0];
      trim(plus[k]);
      trim(minus[k]);
    }
    LocalPointSystem sys = build_system(params, depth, J, plus, minus);
    sys.seed = seed;
    sys.attempts = attempt + 1;
    if (verify_invariants(sys).passed) return sys;
  }
  throw InternalError("generate_system: no valid point system after " + std::to_string(kMaxAttempts) + " attempts");
}

ModuleElement signed_point(const LocalPointSystem& sys, int m, Sign sign) {
  if (m < 0 || m > sys.depth) throw PreconditionError("signed_point: level out of range");
  const bool even = m % 2 == 0;
  const bool use_lower = sign == Sign::Plus ? !even : (even && m >= 2);
  return use_lower ? restrict_up(sys.points[m - 1]) : sys.points[m];
}

Scalar pairing(const LocalPointSystem& sys, const ModuleElement& z, const ModuleElement& w) {
  const RingParams& R = sys.params;
  Scalar total = R.zero();
  for (int k = 0; k < sys.rank; ++k) {
    for (int l = 0; l < sys.rank; ++l) {
      const Scalar J = sys.pairing.at(k, l);
      if (R.is_zero(J)) continue;
      Scalar s = R.zero();
      for (std::size_t i = 0; i < z[k].order(); ++i) s = R.add(s, R.mul(z[k][i], w[l][i]));
      total = R.add(total, R.mul(J, s));
    }
  }
  return total;
}

InvariantReport verify_invariants(const LocalPointSystem& sys) {
  InvariantReport rep;
  const RingParams& R = sys.params;
  rep.pairing_perfect = sys.pairing.is_perfect(R);
  rep.trace_relations = true;
  for (int m = 2; m <= sys.depth; ++m) {
    if (trace_down(sys.points[m]) != module_neg(restrict_up(sys.points[m - 2]))) {
      rep.trace_relations = false;
      rep.failing_levels.push_back(m);
    }
  }
  rep.base_relation = trace_down(sys.points[1]) == module_neg(sys.points[0]);
  if (!rep.base_relation) rep.failing_levels.insert(rep.failing_levels.begin(), 1);
  rep.unit_condition = false;
  for (const auto& c : sys.points[0])
    for (const Scalar& s : c.coeffs()) rep.unit_condition = rep.unit_condition || R.is_unit(s);
  rep.passed = rep.pairing_perfect && rep.trace_relations && rep.base_relation && rep.unit_condition;
  return rep;
}

GroupRingElement coleman_map(const LocalPointSystem& sys, const ModuleElement& z, int m, Sign sign) {
  check_module(z, sys, m, "coleman_map");
  const ModuleElement d = signed_point(sys, m, sign);
  const RingParams& R = sys.params;
  GroupRingElement out = GroupRingElement::zero(R, m);
  for (int k = 0; k < sys.rank; ++k) {
    for (int l = 0; l < sys.rank; ++l) {
      const Scalar J = sys.pairing.at(k, l);
      if (R.is_zero(J)) continue;
      out = out + (z[k] * d[l].inverted()).scaled(J);
    }
  }
  return out;
}

Sign containment_factor(Sign sign, ContainmentConvention convention) {
  return convention == ContainmentConvention::Opposite ? opposite(sign) : sign;
}

ContainmentReport check_image_containment(const LocalPointSystem& sys, int m, Sign sign, int trials, u64 seed,
                                          ContainmentConvention convention) {
  if (m < 0 || m > sys.depth) throw PreconditionError("check_image_containment: level out of range");
  const RingParams& R = sys.params;
  const int N = static_cast<int>(ipow(R.p(), m));
  const Poly omega = omega_poly(R, m);
  const LinearSystem target =
      multiplication_system(R, omega_tilde_poly(R, m, containment_factor(sign, convention)), omega, N);

  ContainmentReport rep;
  rep.m = m;
  rep.sign = sign;
  rep.convention = convention;
  rep.trials = trials;
  rep.target_length = target.image().length();
  std::vector<ZVector> values;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, static_cast<u64>(t)));
    ModuleElement z;
    for (int k = 0; k < sys.rank; ++k) {
      std::vector<Scalar> c(static_cast<std::size_t>(N));
      for (auto& s : c) s = random_scalar(R, rng);
      z.emplace_back(R, m, std::move(c));
    }
    ZVector v = poly_coords(R, coleman_map(sys, z, m, sign).to_series().coeffs(), N);
    if (!target.image().contains(v)) ++rep.failures;
    values.push_back(std::move(v));
  }
  rep.image_length = HowellForm::of_rows(std::move(values), R.p(), R.n(), N * R.ext()).length();
  rep.passed = rep.failures == 0;
  return rep;
}

KernelReport kernel_probe(const LocalPointSystem& sys, int m, Sign sign) {
  if (m < 0 || m > sys.depth) throw PreconditionError("kernel_probe: level out of range");
  const RingParams& R = sys.params;
  const int N = static_cast<int>(ipow(R.p(), m));
  const int dim = sys.rank * N * R.ext();
  const ModuleElement d = signed_point(sys, m, sign);

  std::vector<ModuleElement> basis;
  for (int j = 0; j < dim; ++j) {
    ZVector e(static_cast<std::size_t>(dim), 0);
    e[j] = 1;
    basis.push_back(module_from_coords(R, sys.rank, m, e));
  }

  std::vector<ZVector> col_columns, pair_columns;
  std::vector<ModuleElement> span;  // O-module generators of the r-span of d
  for (int k = 0; k < N; ++k) {
    span.push_back(module_shift(d, k));
    span.push_back(module_scale(module_shift(d, k), R.make(0, 1)));
  }
  for (const auto& b : basis) {
    ZVector c;
    const GroupRingElement value = coleman_map(sys, b, m, sign);
    for (const Scalar& s : value.coeffs()) {
      c.push_back(s.re);
      c.push_back(s.im);
    }
    col_columns.push_back(std::move(c));
    ZVector q;
    for (const auto& g : span) {
      const Scalar s = pairing(sys, b, g);
      q.push_back(s.re);
      q.push_back(s.im);
    }
    pair_columns.push_back(std::move(q));
  }
  const LinearSystem col(col_columns, N * R.ext(), R.p(), R.n());
  const LinearSystem orth(pair_columns, static_cast<int>(span.size()) * R.ext(), R.p(), R.n());

  KernelReport rep;
  rep.m = m;
  rep.sign = sign;
  rep.kernel = col.kernel();
  rep.complement = orth.kernel();
  rep.equal = rep.kernel == rep.complement;
  rep.ambient_length = dim * R.n();
  rep.kernel_length = rep.kernel.length();
  rep.image_length = col.image().length();
  rep.rank_nullity = rep.kernel_length + rep.image_length == rep.ambient_length;
  rep.orthogonal = true;
  for (const auto& row : rep.kernel.rows()) {
    const ModuleElement z = module_from_coords(R, sys.rank, m, row);
    for (int k = 0; k < N && rep.orthogonal; ++k) rep.orthogonal = R.is_zero(pairing(sys, z, module_shift(d, k)));
  }
  return rep;
}

}  // namespace iwasawa
