#include "iwasawa/bipartite.hpp"

#include <algorithm>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/random.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/zmod_linalg.hpp"

namespace iwasawa {

namespace {

TruncatedSeries apply(const TruncatedSeries& unit, const std::vector<TruncatedSeries>& form,
                      const std::vector<TruncatedSeries>& kappa) {
  if (form.size() != kappa.size()) throw ParameterMismatch("reciprocity map: rank mismatch");
  TruncatedSeries acc = unit.scaled(i64{0});
  for (std::size_t k = 0; k < form.size(); ++k) acc = acc + form[k] * kappa[k];
  return unit * acc;
}

bool is_unit_series(const TruncatedSeries& u) { return u.params().is_unit(u.coefficient(0)); }

PrimeSet with_prime(PrimeSet S, i64 ell) {
  S.push_back(ell);
  std::sort(S.begin(), S.end());
  return S;
}


}  // namespace

TruncatedSeries ReciprocityMaps::first(const std::vector<TruncatedSeries>& kappa) const { return apply(u, phi, kappa); }
TruncatedSeries ReciprocityMaps::second(const std::vector<TruncatedSeries>& kappa) const { return apply(v, psi, kappa); }

Poly BipartiteSystem::modulus() const { return omega_poly(params, depth); }

BipartiteReport verify_bipartite(const BipartiteSystem& sys) {
  BipartiteReport rep;
  for (const auto& [ell, m] : sys.maps) {
    if (!is_unit_series(m.u) || !is_unit_series(m.v))
      throw PreconditionError("verify_bipartite: reciprocity scalar at " + std::to_string(ell) + " is not a unit");
  }
  for (const auto& [S, parity] : sys.vertices) {
    if (parity == ParityClass::Indefinite && !sys.kappa.count(S))
      throw PreconditionError("verify_bipartite: indefinite vertex without class data");
    if (parity == ParityClass::Definite && !sys.lambda.count(S))
      throw PreconditionError("verify_bipartite: definite vertex without an element");
  }
  for (const auto& [S, parity] : sys.vertices) {
    for (const auto& [ell, maps] : sys.maps) {
      if (std::find(S.begin(), S.end(), ell) != S.end()) continue;
      const PrimeSet T = with_prime(S, ell);
      auto it = sys.vertices.find(T);
      if (it == sys.vertices.end()) continue;
      if (it->second == parity) throw PreconditionError("verify_bipartite: edge joins vertices of equal parity");
      EdgeCheck e;
      e.S = S;
      e.ell = ell;
      if (it->second == ParityClass::Indefinite) {
        e.relation = "first";
        e.passed = maps.first(sys.kappa.at(T)) == sys.lambda.at(S);
      } else {
        e.relation = "second";
        e.passed = maps.second(sys.kappa.at(S)) == sys.lambda.at(T);
      }
      rep.passed = rep.passed && e.passed;
      rep.edges.push_back(std::move(e));
    }
  }
  return rep;
}

BipartiteSystem construct_bipartite(const RingParams& params, int depth, int rank, const std::vector<i64>& primes,
                                    u64 seed) {
  if (params.ext() != 1) throw PreconditionError("construct_bipartite: ext must be 1");
  if (rank < 1) throw PreconditionError("construct_bipartite: rank must be >= 1");
  BipartiteSystem sys;
  sys.params = params;
  sys.depth = depth;
  sys.rank = rank;
  const Poly modulus = sys.modulus();
  const int N = degree(modulus);
  SplitMix64 rng(derive_seed(seed, 0));

  std::vector<i64> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t mask = 0; mask < (std::size_t{1} << sorted.size()); ++mask) {
    PrimeSet S;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (mask >> i & 1) S.push_back(sorted[i]);
    sys.vertices[S] = S.size() % 2 == 1 ? ParityClass::Definite : ParityClass::Indefinite;
  }
  for (i64 ell : sorted) {
    ReciprocityMaps m;
    auto unit = [&] {
      Poly c = random_poly(params, N, rng);
      c.resize(std::max<std::size_t>(c.size(), 1));
      c[0] = random_unit(params, rng);
      return TruncatedSeries(params, std::move(c), modulus);
    };
    m.u = unit();
    m.v = unit();
    for (int k = 0; k < rank; ++k) {
      m.phi.push_back(random_series(params, modulus, rng));
      m.psi.push_back(random_series(params, modulus, rng));
    }
    sys.maps[ell] = std::move(m);
  }

  // Unknown layout: kappa of each indefinite vertex (rank * N), then lambda
  // of each definite vertex (N).
  std::map<PrimeSet, int> offset;
  int unknowns = 0;
  for (const auto& [S, parity] : sys.vertices) {
    offset[S] = unknowns;
    unknowns += parity == ParityClass::Indefinite ? rank * N : N;
  }
  struct Edge {
    PrimeSet indefinite, definite;
    i64 ell;
    bool first;
  };
  std::vector<Edge> edges;
  for (const auto& [S, parity] : sys.vertices) {
    for (i64 ell : sorted) {
      if (std::find(S.begin(), S.end(), ell) != S.end()) continue;
      const PrimeSet T = with_prime(S, ell);
      if (sys.vertices.at(T) == ParityClass::Indefinite)
        edges.push_back({T, S, ell, true});
      else
        edges.push_back({S, T, ell, false});
    }
  }
  const int equations = static_cast<int>(edges.size()) * N;
  std::vector<ZVector> columns(static_cast<std::size_t>(unknowns), ZVector(static_cast<std::size_t>(equations), 0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& E = edges[e];
    const ReciprocityMaps& m = sys.maps.at(E.ell);
    const TruncatedSeries& unit = E.first ? m.u : m.v;
    const auto& form = E.first ? m.phi : m.psi;
    for (int k = 0; k < rank; ++k) {
      const TruncatedSeries factor = unit * form[k];
      for (int j = 0; j < N; ++j) {
        const ZVector img = poly_coords(params, (factor * TruncatedSeries(params, poly_monomial(params, j), modulus)).coeffs(), N);
        ZVector& col = columns[static_cast<std::size_t>(offset.at(E.indefinite) + k * N + j)];
        for (int i = 0; i < N; ++i) col[e * N + i] = add_mod(col[e * N + i], img[i], params.modulus());
      }
    }
    for (int j = 0; j < N; ++j) {
      ZVector& col = columns[static_cast<std::size_t>(offset.at(E.definite) + j)];
      col[e * N + j] = sub_mod(col[e * N + j], 1, params.modulus());
    }
  }
  const LinearSystem system(columns, equations, params.p(), params.n());
  ZVector x(static_cast<std::size_t>(unknowns), 0);
  for (const auto& row : system.kernel().rows()) {
    const i64 c = rng.below(params.modulus());
    for (int i = 0; i < unknowns; ++i) x[i] = add_mod(x[i], mul_mod(c, row[i], params.modulus()), params.modulus());
  }
  auto slice = [&](int start) {
    ZVector v(x.begin() + start, x.begin() + start + N);
    return TruncatedSeries(params, poly_from_coords(params, v), modulus);
  };
  for (const auto& [S, parity] : sys.vertices) {
    if (parity == ParityClass::Indefinite) {
      std::vector<TruncatedSeries> k;
      for (int c = 0; c < rank; ++c) k.push_back(slice(offset.at(S) + c * N));
      sys.kappa[S] = std::move(k);
    } else {
      sys.lambda[S] = slice(offset.at(S));
    }
  }
  return sys;
}

CheckReport check_class_trace(const ThetaFamily& fam) {
  CheckReport r = check_norm_relation_ap_zero(fam);
  r.name = "class_trace";
  return r;
}

}  // namespace iwasawa
