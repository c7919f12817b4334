#pragma once

#include <optional>
#include <vector>

#include "iwasawa/modular.hpp"

namespace iwasawa {

using ZVector = std::vector<i64>;

/// Howell normal form of a submodule of (Z/p^n)^width.
///
/// Rows are in echelon order, each pivot is a power of p, entries above a
/// pivot p^v lie in [0, p^v), and the span is closed under the Howell
/// property (for every row with pivot p^v, p^(n-v) times the row reduces to
/// zero). Two submodules are equal iff their Howell forms are equal.
class HowellForm {
 public:
  HowellForm() = default;
  HowellForm(int p, int n, int width);

  static HowellForm of_rows(std::vector<ZVector> rows, int p, int n, int width);

  int p() const { return p_; }
  int n() const { return n_; }
  int width() const { return width_; }
  const std::vector<ZVector>& rows() const { return rows_; }
  const std::vector<int>& pivot_columns() const { return pivot_cols_; }
  const std::vector<int>& pivot_valuations() const { return pivot_vals_; }
  bool empty() const { return rows_.empty(); }

  /// Canonical representative of v modulo the span.
  ZVector reduce(ZVector v) const;
  bool contains(const ZVector& v) const;
  /// log_p of the number of elements in the span.
  int length() const;

  friend bool operator==(const HowellForm& a, const HowellForm& b) {
    return a.width_ == b.width_ && a.rows_ == b.rows_;
  }

 private:
  int p_ = 3;
  int n_ = 1;
  i64 q_ = 3;
  int width_ = 0;
  std::vector<ZVector> rows_;
  std::vector<int> pivot_cols_;
  std::vector<int> pivot_vals_;
};

/// The linear system A x = b over Z/p^n, with A given by the images of the
/// unknown basis vectors (its columns). The row reduction is done once; any
/// number of right-hand sides can then be solved.
class LinearSystem {
 public:
  LinearSystem(const std::vector<ZVector>& columns, int equations, int p, int n);

  int unknowns() const { return unknowns_; }
  int equations() const { return equations_; }

  /// Canonical solution (reduced modulo the kernel), or nullopt if the
  /// system is inconsistent.
  std::optional<ZVector> solve(const ZVector& rhs) const;
  /// Howell form of {x : A x = 0}.
  const HowellForm& kernel() const { return kernel_; }
  /// Howell form of the column span of A.
  const HowellForm& image() const { return image_; }

 private:
  int p_;
  int n_;
  i64 q_;
  int unknowns_;
  int equations_;
  HowellForm augmented_;
  HowellForm kernel_;
  HowellForm image_;
};

}  // namespace iwasawa
