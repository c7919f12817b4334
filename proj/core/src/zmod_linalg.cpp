#include "iwasawa/zmod_linalg.hpp"

#include <utility>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

bool is_zero_from(const ZVector& v, int start) {
  for (std::size_t i = static_cast<std::size_t>(start); i < v.size(); ++i) {
    if (v[i] != 0) return false;
  }
  return true;
}

// row -= k * pivot, starting at column `start`.
void axpy(ZVector& row, const ZVector& pivot, i64 k, int start, i64 q) {
  if (k == 0) return;
  for (std::size_t i = static_cast<std::size_t>(start); i < row.size(); ++i) {
    if (pivot[i] != 0) row[i] = sub_mod(row[i], mul_mod(k, pivot[i], q), q);
  }
}

}  // namespace

HowellForm::HowellForm(int p, int n, int width) : p_(p), n_(n), q_(ipow(p, n)), width_(width) {}

HowellForm HowellForm::of_rows(std::vector<ZVector> rows, int p, int n, int width) {
  HowellForm h(p, n, width);
  const i64 q = h.q_;
  std::vector<ZVector> pool;
  pool.reserve(rows.size());
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != width) throw ParameterMismatch("HowellForm: row width mismatch");
    for (auto& x : r) x = mod_reduce(x, q);
    if (!is_zero_from(r, 0)) pool.push_back(std::move(r));
  }

  for (int c = 0; c < width && !pool.empty(); ++c) {
    std::size_t best = pool.size();
    int best_v = n;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i][c] == 0) continue;
      int v = valuation(pool[i][c], p, n);
      if (v < best_v) {
        best_v = v;
        best = i;
        if (v == 0) break;
      }
    }
    if (best == pool.size()) continue;

    ZVector pivot = std::move(pool[best]);
    pool[best] = std::move(pool.back());
    pool.pop_back();

    const i64 pv = ipow(p, best_v);
    const i64 unit = pivot[c] / pv;
    const i64 uinv = inv_mod(unit, q);
    for (int i = c; i < width; ++i) pivot[i] = mul_mod(pivot[i], uinv, q);

    for (std::size_t i = 0; i < pool.size();) {
      ZVector& row = pool[i];
      if (row[c] != 0) {
        axpy(row, pivot, row[c] / pv, c, q);
        if (is_zero_from(row, c + 1)) {
          row = std::move(pool.back());
          pool.pop_back();
          continue;
        }
      }
      ++i;
    }
    if (best_v > 0) {
      const i64 scale = ipow(p, n - best_v);
      ZVector extra(pivot.size(), 0);
      for (int i = c; i < width; ++i) extra[i] = mul_mod(pivot[i], scale, q);
      if (!is_zero_from(extra, c + 1)) pool.push_back(std::move(extra));
    }
    h.rows_.push_back(std::move(pivot));
    h.pivot_cols_.push_back(c);
    h.pivot_vals_.push_back(best_v);
  }

  // Reduce entries above each pivot into [0, p^v).
  for (std::size_t i = 0; i < h.rows_.size(); ++i) {
    const int c = h.pivot_cols_[i];
    const i64 pv = ipow(p, h.pivot_vals_[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const i64 k = h.rows_[j][c] / pv;
      axpy(h.rows_[j], h.rows_[i], k, c, q);
    }
  }
  return h;
}

ZVector HowellForm::reduce(ZVector v) const {
  if (static_cast<int>(v.size()) != width_) throw ParameterMismatch("HowellForm::reduce: width mismatch");
  for (auto& x : v) x = mod_reduce(x, q_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int c = pivot_cols_[i];
    if (v[c] == 0) continue;
    const i64 k = v[c] / ipow(p_, pivot_vals_[i]);
    axpy(v, rows_[i], k, c, q_);
  }
  return v;
}

bool HowellForm::contains(const ZVector& v) const { return is_zero_from(reduce(v), 0); }

int HowellForm::length() const {
  int total = 0;
  for (int v : pivot_vals_) total += n_ - v;
  return total;
}

LinearSystem::LinearSystem(const std::vector<ZVector>& columns, int equations, int p, int n)
    : p_(p), n_(n), q_(ipow(p, n)), unknowns_(static_cast<int>(columns.size())), equations_(equations) {
  const int width = equations_ + unknowns_;
  std::vector<ZVector> rows;
  rows.reserve(columns.size());
  for (int j = 0; j < unknowns_; ++j) {
    if (static_cast<int>(columns[j].size()) != equations_) throw ParameterMismatch("LinearSystem: column height mismatch");
    ZVector row(width, 0);
    for (int i = 0; i < equations_; ++i) row[i] = columns[j][i];
    row[equations_ + j] = 1;
    rows.push_back(std::move(row));
  }
  augmented_ = HowellForm::of_rows(std::move(rows), p, n, width);

  std::vector<ZVector> kernel_rows, image_rows;
  for (std::size_t i = 0; i < augmented_.rows().size(); ++i) {
    const ZVector& r = augmented_.rows()[i];
    if (augmented_.pivot_columns()[i] >= equations_) {
      kernel_rows.emplace_back(r.begin() + equations_, r.end());
    } else {
      image_rows.emplace_back(r.begin(), r.begin() + equations_);
    }
  }
  kernel_ = HowellForm::of_rows(std::move(kernel_rows), p, n, unknowns_);
  image_ = HowellForm::of_rows(std::move(image_rows), p, n, equations_);
}

std::optional<ZVector> LinearSystem::solve(const ZVector& rhs) const {
  if (static_cast<int>(rhs.size()) != equations_) throw ParameterMismatch("LinearSystem::solve: rhs length mismatch");
  ZVector v(equations_ + unknowns_, 0);
  for (int i = 0; i < equations_; ++i) v[i] = mod_reduce(rhs[i], q_);
  v = augmented_.reduce(std::move(v));
  for (int i = 0; i < equations_; ++i) {
    if (v[i] != 0) return std::nullopt;
  }
  ZVector x(unknowns_);
  for (int j = 0; j < unknowns_; ++j) x[j] = sub_mod(0, v[equations_ + j], q_);
  return kernel_.reduce(std::move(x));
}

}  // namespace iwasawa
