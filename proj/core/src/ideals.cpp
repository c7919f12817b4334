#include "iwasawa/ideals.hpp"

#include "iwasawa/errors.hpp"
#include "iwasawa/parallel.hpp"

namespace iwasawa {

namespace {

HowellForm closure(const RingParams& R, const Poly& modulus, const std::vector<TruncatedSeries>& gens) {
  const int N = degree(modulus);
  std::vector<ZVector> rows;
  for (const auto& g : gens) {
    Poly f = g.coeffs();
    for (int j = 0; j < N; ++j) {
      rows.push_back(poly_coords(R, f, N));
      if (R.ext() == 2) rows.push_back(poly_coords(R, poly_scale(R, f, R.make(0, 1)), N));
      f.insert(f.begin(), Scalar{});
      f = poly_mod(R, f, modulus);
    }
  }
  return HowellForm::of_rows(std::move(rows), R.p(), R.n(), N * R.ext());
}

}  // namespace

FiniteIdeal::FiniteIdeal(const RingParams& params, Poly modulus, std::vector<TruncatedSeries> generators)
    : params_(params), modulus_(std::move(modulus)) {
  if (degree(modulus_) < 1) throw PreconditionError("FiniteIdeal: modulus must have positive degree");
  for (auto& g : generators) {
    require_same(params_, g.params(), "FiniteIdeal");
    generators_.push_back(g.with_modulus(modulus_));
  }
  basis_ = closure(params_, modulus_, generators_);
}

FiniteIdeal FiniteIdeal::zero(const RingParams& params, const Poly& modulus) { return FiniteIdeal(params, modulus, {}); }

FiniteIdeal FiniteIdeal::principal(const TruncatedSeries& g) {
  if (!g.modulus()) throw PreconditionError("FiniteIdeal::principal: series needs a modulus");
  return FiniteIdeal(g.params(), *g.modulus(), {g});
}

std::vector<TruncatedSeries> FiniteIdeal::normalized_generators() const {
  std::vector<TruncatedSeries> out;
  for (const auto& row : basis_.rows()) out.emplace_back(params_, poly_from_coords(params_, row), modulus_);
  return out;
}

bool FiniteIdeal::contains(const TruncatedSeries& f) const {
  require_same(params_, f.params(), "FiniteIdeal::contains");
  const int N = degree(modulus_);
  return basis_.contains(poly_coords(params_, poly_mod(params_, f.coeffs(), modulus_), N));
}

bool ideal_contains(const FiniteIdeal& I, const FiniteIdeal& J) {
  require_same(I.params(), J.params(), "ideal_contains");
  if (I.modulus() != J.modulus()) throw ParameterMismatch("ideal_contains: different ambient rings");
  for (const auto& g : J.generators())
    if (!I.contains(g)) return false;
  return true;
}

FiniteIdeal ideal_product(const FiniteIdeal& I, const FiniteIdeal& J) {
  require_same(I.params(), J.params(), "ideal_product");
  if (I.modulus() != J.modulus()) throw ParameterMismatch("ideal_product: different ambient rings");
  std::vector<TruncatedSeries> gens;
  for (const auto& a : I.generators())
    for (const auto& b : J.generators()) gens.push_back(a * b);
  return FiniteIdeal(I.params(), I.modulus(), std::move(gens));
}

FiniteIdeal ideal_square(const FiniteIdeal& I) { return ideal_product(I, I); }

PresentationMatrix PresentationMatrix::make(std::vector<std::vector<TruncatedSeries>> entries) {
  if (entries.empty() || entries[0].empty()) throw PreconditionError("PresentationMatrix: empty matrix");
  PresentationMatrix P;
  P.rows = static_cast<int>(entries.size());
  P.cols = static_cast<int>(entries[0].size());
  const TruncatedSeries& first = entries[0][0];
  if (!first.modulus()) throw PreconditionError("PresentationMatrix: entries need a modulus");
  P.params = first.params();
  P.modulus = *first.modulus();
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != P.cols) throw ParameterMismatch("PresentationMatrix: ragged rows");
    for (const auto& e : row) {
      require_same(P.params, e.params(), "PresentationMatrix");
      if (e.modulus() != first.modulus()) throw ParameterMismatch("PresentationMatrix: entries use different moduli");
    }
  }
  P.entries = std::move(entries);
  return P;
}

TruncatedSeries determinant(const std::vector<std::vector<TruncatedSeries>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  TruncatedSeries det = m[0][0].scaled(i64{0});
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<TruncatedSeries>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<TruncatedSeries> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const TruncatedSeries term = m[0][j] * determinant(minor);
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

FiniteIdeal fitting_ideal(const PresentationMatrix& P, int jobs) {
  if (P.cols < 1) throw PreconditionError("fitting_ideal: needs at least one column");
  if (P.rows < P.cols) return FiniteIdeal::zero(P.params, P.modulus);
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(static_cast<std::size_t>(P.cols));
  for (int i = 0; i < P.cols; ++i) pick[i] = i;
  for (;;) {
    subsets.push_back(pick);
    int i = P.cols - 1;
    while (i >= 0 && pick[i] == P.rows - P.cols + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < P.cols; ++j) pick[j] = pick[j - 1] + 1;
  }
  const int budget = P.cols > 4 ? jobs : 1;
  std::vector<TruncatedSeries> minors = parallel_map(subsets.size(), budget, [&](std::size_t s) {
    std::vector<std::vector<TruncatedSeries>> sub;
    for (int r : subsets[s]) sub.push_back(P.entries[r]);
    return determinant(sub);
  });
  return FiniteIdeal(P.params, P.modulus, std::move(minors));
}

}  // namespace iwasawa
