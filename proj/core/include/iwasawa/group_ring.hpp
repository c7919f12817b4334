#pragma once

#include <functional>
#include <span>
#include <vector>

#include "iwasawa/series.hpp"

namespace iwasawa {

/// Element of O/p^n[G_m], G_m cyclic of order p^m generated by the image of
/// gamma. Coefficient i belongs to gamma^i.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  /// coeffs.size() must equal p^level.
  GroupRingElement(RingParams params, int level, std::vector<Scalar> coeffs);

  static GroupRingElement zero(const RingParams& params, int level);
  static GroupRingElement identity(const RingParams& params, int level);
  /// gamma^k.
  static GroupRingElement group_element(const RingParams& params, int level, i64 k);
  /// Image of a series under X -> gamma - 1 (the series is reduced mod omega_level first).
  static GroupRingElement from_series(const TruncatedSeries& f, int level);

  const RingParams& params() const { return params_; }
  int level() const { return level_; }
  std::size_t order() const { return coeffs_.size(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const;

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  /// Cyclic convolution.
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(Scalar s) const;
  GroupRingElement scaled(i64 k) const { return scaled(params_.from_int(k)); }
  /// Multiplication by gamma^k.
  GroupRingElement shifted(i64 k) const;
  /// The involution sigma -> sigma^{-1}.
  GroupRingElement inverted() const;

  /// Image in Lambda_n/(omega_level) under gamma -> 1 + X.
  TruncatedSeries to_series() const;

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.params_ == b.params_ && a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const GroupRingElement& o, const char* op) const;

  RingParams params_;
  int level_ = 0;
  std::vector<Scalar> coeffs_{Scalar{}};
};

/// pi_{m,m-1}: sum of the coefficients over each fibre of G_m -> G_{m-1}.
/// Throws PreconditionError at level 0.
GroupRingElement project(const GroupRingElement& x);
/// xi_{m-1}: sigma -> sum of its p preimages in G_m.
GroupRingElement norm_xi(const GroupRingElement& x);
/// Sum of all coefficients.
Scalar eval_trivial(const GroupRingElement& x);

// The same index maps for any coefficient type with an associative `add`.
template <class T, class Add>
std::vector<T> project_coefficients(std::span<const T> c, int p, Add add) {
  const std::size_t lower = c.size() / static_cast<std::size_t>(p);
  std::vector<T> out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lower));
  for (std::size_t i = lower; i < c.size(); ++i) out[i % lower] = add(out[i % lower], c[i]);
  return out;
}

template <class T>
std::vector<T> norm_xi_coefficients(std::span<const T> c, int p) {
  const std::size_t lower = c.size();
  std::vector<T> out(lower * static_cast<std::size_t>(p));
  for (std::size_t k = 0; k < static_cast<std::size_t>(p); ++k) {
    for (std::size_t i = 0; i < lower; ++i) out[k * lower + i] = c[i];
  }
  return out;
}

}  // namespace iwasawa
