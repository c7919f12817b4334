#include "iwasawa/group_ring.hpp"

#include <utility>

#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"

namespace iwasawa {

GroupRingElement::GroupRingElement(RingParams params, int level, std::vector<Scalar> coeffs)
    : params_(params), level_(level), coeffs_(std::move(coeffs)) {
  if (level < 0) throw PreconditionError("group ring level must be >= 0");
  if (static_cast<i64>(coeffs_.size()) != ipow(params_.p(), level))
    throw PreconditionError("group ring element at level " + std::to_string(level) + " needs p^level coefficients");
  for (auto& c : coeffs_) c = params_.make(c.re, c.im);
}

GroupRingElement GroupRingElement::zero(const RingParams& params, int level) {
  return GroupRingElement(params, level, std::vector<Scalar>(static_cast<std::size_t>(ipow(params.p(), level))));
}

GroupRingElement GroupRingElement::identity(const RingParams& params, int level) {
  return group_element(params, level, 0);
}

GroupRingElement GroupRingElement::group_element(const RingParams& params, int level, i64 k) {
  GroupRingElement x = zero(params, level);
  x.coeffs_[static_cast<std::size_t>(mod_reduce(k, static_cast<i64>(x.order())))] = params.one();
  return x;
}

GroupRingElement GroupRingElement::from_series(const TruncatedSeries& f, int level) {
  const RingParams& R = f.params();
  const Poly reduced = poly_mod(R, f.coeffs(), omega_poly(R, level));
  const std::size_t N = static_cast<std::size_t>(ipow(R.p(), level));
  // X^j = (gamma - 1)^j = sum_i C(j, i) (-1)^{j-i} gamma^i.
  std::vector<Scalar> out(N);
  std::vector<i64> binom{1};
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    if (j > 0) {
      std::vector<i64> next(j + 1, 0);
      next[0] = 1;
      next[j] = 1;
      for (std::size_t i = 1; i < j; ++i) next[i] = add_mod(binom[i - 1], binom[i], R.modulus());
      binom = std::move(next);
    }
    const Scalar c = reduced[j];
    if (R.is_zero(c)) continue;
    for (std::size_t i = 0; i <= j; ++i) {
      const i64 sgn = (j - i) % 2 == 0 ? binom[i] : mod_reduce(-binom[i], R.modulus());
      out[i] = R.add(out[i], R.mul_int(c, sgn));
    }
  }
  return GroupRingElement(R, level, std::move(out));
}

bool GroupRingElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c.re != 0 || c.im != 0) return false;
  }
  return true;
}

void GroupRingElement::check_compatible(const GroupRingElement& o, const char* op) const {
  require_same(params_, o.params_, op);
  if (level_ != o.level_) throw ParameterMismatch(std::string(op) + ": group ring levels differ");
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  check_compatible(o, "add");
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = params_.add(coeffs_[i], o.coeffs_[i]);
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  check_compatible(o, "sub");
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = params_.sub(coeffs_[i], o.coeffs_[i]);
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r = *this;
  for (auto& c : r.coeffs_) c = params_.neg(c);
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_compatible(o, "mul");
  const std::size_t N = coeffs_.size();
  GroupRingElement r = zero(params_, level_);
  for (std::size_t i = 0; i < N; ++i) {
    if (params_.is_zero(coeffs_[i])) continue;
    for (std::size_t j = 0; j < N; ++j) {
      if (params_.is_zero(o.coeffs_[j])) continue;
      const std::size_t k = i + j < N ? i + j : i + j - N;
      r.coeffs_[k] = params_.add(r.coeffs_[k], params_.mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return r;
}

GroupRingElement GroupRingElement::scaled(Scalar s) const {
  GroupRingElement r = *this;
  for (auto& c : r.coeffs_) c = params_.mul(c, s);
  return r;
}

GroupRingElement GroupRingElement::shifted(i64 k) const {
  const i64 N = static_cast<i64>(coeffs_.size());
  const i64 s = mod_reduce(k, N);
  GroupRingElement r = *this;
  for (i64 i = 0; i < N; ++i) r.coeffs_[static_cast<std::size_t>((i + s) % N)] = coeffs_[static_cast<std::size_t>(i)];
  return r;
}

GroupRingElement GroupRingElement::inverted() const {
  const std::size_t N = coeffs_.size();
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < N; ++i) r.coeffs_[(N - i) % N] = coeffs_[i];
  return r;
}

TruncatedSeries GroupRingElement::to_series() const {
  // sum_i c_i (1+X)^i via Horner; degree stays below p^level so no reduction.
  Poly acc;
  const Poly one_plus_x = poly_from_ints(params_, {1, 1});
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = poly_mul(params_, acc, one_plus_x);
    acc = poly_add(params_, acc, Poly{coeffs_[i]});
  }
  return TruncatedSeries::at_level(params_, std::move(acc), level_);
}

GroupRingElement project(const GroupRingElement& x) {
  if (x.level() == 0) throw PreconditionError("project: level 0 has no lower level");
  const RingParams& R = x.params();
  auto out = project_coefficients<Scalar>(x.coeffs(), R.p(), [&R](Scalar a, Scalar b) { return R.add(a, b); });
  return GroupRingElement(R, x.level() - 1, std::move(out));
}

GroupRingElement norm_xi(const GroupRingElement& x) {
  return GroupRingElement(x.params(), x.level() + 1, norm_xi_coefficients<Scalar>(x.coeffs(), x.params().p()));
}

Scalar eval_trivial(const GroupRingElement& x) {
  Scalar s{};
  for (const auto& c : x.coeffs()) s = x.params().add(s, c);
  return s;
}

}  // namespace iwasawa
