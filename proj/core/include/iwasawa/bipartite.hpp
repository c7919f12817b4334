#pragma once

#include <map>
#include <string>
#include <vector>

#include "iwasawa/admissible.hpp"
#include "iwasawa/series.hpp"
#include "iwasawa/theta_family.hpp"

namespace iwasawa {

/// Vertex key: the sorted primes of S (empty for S = 1).
using PrimeSet = std::vector<i64>;

/// The reciprocity maps at ell on rank-r class data:
///   d_ell(kappa) = u * sum_k phi_k kappa_k,   v_ell(kappa) = v * sum_k psi_k kappa_k,
/// with u, v units of Lambda_n/(omega_M) and (phi, psi) a fixed identification.
struct ReciprocityMaps {
  TruncatedSeries u;
  TruncatedSeries v;
  std::vector<TruncatedSeries> phi;
  std::vector<TruncatedSeries> psi;

  TruncatedSeries first(const std::vector<TruncatedSeries>& kappa) const;
  TruncatedSeries second(const std::vector<TruncatedSeries>& kappa) const;
};

struct BipartiteSystem {
  RingParams params;
  int depth = 0;  ///< working modulus omega_depth
  int rank = 1;
  std::map<PrimeSet, ParityClass> vertices;
  std::map<PrimeSet, std::vector<TruncatedSeries>> kappa;  ///< indefinite vertices
  std::map<PrimeSet, TruncatedSeries> lambda;              ///< definite vertices
  std::map<i64, ReciprocityMaps> maps;

  Poly modulus() const;
};

struct EdgeCheck {
  PrimeSet S;
  i64 ell = 0;
  bool passed = false;
  std::string relation;  ///< "first" (d_ell into lambda(S)) or "second" (v_ell into lambda(S ell))
};

struct BipartiteReport {
  bool passed = true;
  std::vector<EdgeCheck> edges;
};

/// Edges join S and S ell for every prime ell with both vertices present.
/// Throws PreconditionError if an edge joins vertices of equal parity, a
/// vertex lacks its data, a map is missing, or a unit scalar is not a unit.
BipartiteReport verify_bipartite(const BipartiteSystem& sys);

/// Vertices: all subsets of `primes` with parity DEFINITE iff #S is odd
/// (the inert-prime parity rule). Random unit scalars and identifications
/// per prime; kappa and lambda are a random element of the joint solution
/// space of every edge relation.
BipartiteSystem construct_bipartite(const RingParams& params, int depth, int rank, const std::vector<i64>& primes,
                                    u64 seed);

/// project(kappa_{m+1}) = -norm_xi(kappa_{m-1}) with project as corestriction
/// and norm_xi as restriction. Requires a_p = 0.
CheckReport check_class_trace(const ThetaFamily& fam);

}  // namespace iwasawa
