#include "iwasawa/signed_decomposition.hpp"

#include <string>

#include "iwasawa/errors.hpp"

namespace iwasawa {

namespace {

i64 pm_sign(int m) {
  // (-1)^{m/2} for even m, (-1)^{(m+1)/2} for odd m.
  const int e = m % 2 == 0 ? m / 2 : (m + 1) / 2;
  return e % 2 == 0 ? 1 : -1;
}

void require_ap_zero(const RingParams& R, i64 ap, const char* what) {
  if (R.from_int(ap) != R.zero()) throw PreconditionError(std::string(what) + " requires a_p = 0 mod p^n");
}

std::string levels_to_string(const std::vector<int>& levels) {
  std::string s;
  for (int m : levels) s += (s.empty() ? "" : ",") + std::to_string(m);
  return s;
}

// Coefficient vector of (a, b), degree < D, in descending-degree interleaved order.
ZVector pack_pair(const Poly& a, const Poly& b, int D) {
  ZVector v(static_cast<std::size_t>(2 * D), 0);
  for (int t = 0; t < D; ++t) {
    const int d = D - 1 - t;
    v[2 * t] = coeff(a, d).re;
    v[2 * t + 1] = coeff(b, d).re;
  }
  return v;
}

std::pair<Poly, Poly> unpack_pair(const RingParams& R, const ZVector& x, int D) {
  Poly a(static_cast<std::size_t>(D)), b(static_cast<std::size_t>(D));
  for (int t = 0; t < D; ++t) {
    const int d = D - 1 - t;
    a[d] = R.from_int(x[2 * t]);
    b[d] = R.from_int(x[2 * t + 1]);
  }
  return {trimmed(std::move(a)), trimmed(std::move(b))};
}

SeriesMatrix2 matmul(const SeriesMatrix2& A, const SeriesMatrix2& B) {
  SeriesMatrix2 C;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) C[i][j] = A[i][0] * B[0][j] + A[i][1] * B[1][j];
  }
  return C;
}

}  // namespace

bool coset_contains(const SignedPair& pair, int component, const TruncatedSeries& a, const TruncatedSeries& b) {
  const TruncatedSeries& f = pair.first.at(component);
  const TruncatedSeries& s = pair.second.at(component);
  const TruncatedSeries a_red = a.with_modulus(f.modulus());
  const TruncatedSeries b_red = b.with_modulus(s.modulus());
  if (pair.mode == SignedMode::PlusMinus) return a_red == f && b_red == s;

  const RingParams& R = pair.params;
  const int D = degree(*f.modulus());
  const ZVector diff = pack_pair(poly_sub(R, a_red.coeffs(), f.coeffs()), poly_sub(R, b_red.coeffs(), s.coeffs()), D);
  std::vector<ZVector> rows;
  for (const auto& [ka, kb] : pair.kernel_basis) rows.push_back(pack_pair(ka.coeffs(), kb.coeffs(), D));
  return HowellForm::of_rows(std::move(rows), R.p(), R.n(), 2 * D).contains(diff);
}

ThetaFamily pm_synthesize(const std::vector<TruncatedSeries>& plus, const std::vector<TruncatedSeries>& minus,
                          const RingParams& params, int depth) {
  if (plus.size() != minus.size() || plus.empty()) throw PreconditionError("pm_synthesize: rank mismatch");
  if (params.ext() != 1) throw PreconditionError("pm_synthesize: theta families have ext = 1");
  const int rank = static_cast<int>(plus.size());
  ThetaFamily fam = ThetaFamily::zero(params, 0, depth, rank);
  for (int m = 0; m <= depth; ++m) {
    const Sign s = parity_sign(m);
    const Poly modulus = omega_signed_poly(params, m, s);
    const Poly tilde = omega_tilde_poly(params, m, opposite(s));
    const Poly omega = omega_poly(params, m);
    for (int k = 0; k < rank; ++k) {
      const auto& src = s == Sign::Plus ? plus[k] : minus[k];
      require_same(params, src.params(), "pm_synthesize");
      Poly term = poly_mul(params, tilde, poly_mod(params, src.coeffs(), modulus));
      term = poly_scale(params, poly_mod(params, term, omega), params.from_int(pm_sign(m)));
      fam.at(m, k) = GroupRingElement::from_series(TruncatedSeries(params, term, omega), m);
    }
  }
  return fam;
}

ThetaFamily pm_synthesize(const TruncatedSeries& plus, const TruncatedSeries& minus, const RingParams& params,
                          int depth) {
  return pm_synthesize(std::vector<TruncatedSeries>{plus}, std::vector<TruncatedSeries>{minus}, params, depth);
}

SignedPair pm_extract(const ThetaFamily& fam) {
  fam.validate();
  const RingParams& R = fam.params;
  require_ap_zero(R, fam.ap, "pm_extract");
  if (fam.depth < 1) throw PreconditionError("pm_extract needs depth >= 1");
  if (auto rel = check_norm_relation(fam); !rel.passed)
    throw PreconditionError("pm_extract: norm relation fails at m=" + levels_to_string(rel.failing_levels()));
  if (auto ann = annihilator_check(fam); !ann.passed)
    throw PreconditionError("pm_extract: annihilation fails at m=" + levels_to_string(ann.failing_levels()));

  SignedPair out;
  out.mode = SignedMode::PlusMinus;
  out.params = R;
  out.ap = fam.ap;
  out.depth = fam.depth;

  for (Sign s : {Sign::Plus, Sign::Minus}) {
    const int start = s == Sign::Plus ? 0 : 1;
    std::vector<Poly> previous(static_cast<std::size_t>(fam.rank));
    int previous_m = -1;
    for (int m = start; m <= fam.depth; m += 2) {
      const Poly omega = omega_poly(R, m);
      const Poly tilde = omega_tilde_poly(R, m, opposite(s));
      const Poly signed_mod = omega_signed_poly(R, m, s);
      const int unknowns = degree(signed_mod);
      for (int k = 0; k < fam.rank; ++k) {
        QuotientSolve solved = solve_multiple(R, tilde, fam.at(m, k).to_series().coeffs(), omega, unknowns);
        if (!solved.solution)
          throw DecompositionError("not a signed family: lambda_" + std::to_string(m) + " is not divisible by omega~");
        if (!solved.kernel.empty())
          throw DecompositionError("division by omega~ is not unique at m=" + std::to_string(m));
        Poly signed_level = poly_scale(R, *solved.solution, R.from_int(pm_sign(m)));
        if (previous_m >= 0 && poly_mod(R, signed_level, omega_signed_poly(R, previous_m, s)) != previous[k])
          throw DecompositionError("sign-convention violation between m=" + std::to_string(previous_m) +
                                   " and m=" + std::to_string(m));
        previous[k] = std::move(signed_level);
      }
      previous_m = m;
    }
    const Poly top_mod = omega_signed_poly(R, fam.depth, s);
    auto& dest = s == Sign::Plus ? out.first : out.second;
    for (int k = 0; k < fam.rank; ++k) dest.emplace_back(R, previous[k], top_mod);
  }
  return out;
}

SprungMatrices sprung_matrices(const RingParams& params, i64 ap, int depth) {
  if (depth < 1) throw PreconditionError("sprung_matrices needs depth >= 1");
  SprungMatrices out;
  out.params = params;
  out.ap = ap;
  out.depth = depth;
  const Poly top = omega_poly(params, depth);
  auto series = [&](Poly f) { return TruncatedSeries(params, std::move(f), top); };
  for (int m = 1; m <= depth; ++m) {
    const Poly phi = phi_polynomial(params, m);
    SeriesMatrix2 C{{{series(poly_constant(params, ap)), series(poly_constant(params, 1))},
                     {series(poly_neg(params, phi)), series(Poly{})}}};
    const TruncatedSeries det = C[0][0] * C[1][1] - C[0][1] * C[1][0];
    if (det.coeffs() != poly_mod(params, phi, top)) throw InternalError("det(C_m) != Phi_m");
    out.H.push_back(m == 1 ? C : matmul(C, out.H.back()));
    out.C.push_back(std::move(C));
  }
  return out;
}

bool sprung_determinant_matches(const SprungMatrices& mats) {
  const RingParams& R = mats.params;
  const SeriesMatrix2& H = mats.H.back();
  const Poly det = poly_sub(R, poly_mul(R, H[0][0].coeffs(), H[1][1].coeffs()),
                            poly_mul(R, H[0][1].coeffs(), H[1][0].coeffs()));
  const Poly expected = poly_exact_div(R, omega_poly(R, mats.depth), poly_monomial(R, 1));
  return det == expected;
}

namespace {

std::vector<ZVector> sprung_columns(const RingParams& R, const SprungMatrices& mats, int depth, int D) {
  std::vector<ZVector> cols;
  cols.reserve(static_cast<std::size_t>(2 * D));
  std::vector<Poly> omegas;
  for (int m = 1; m <= depth; ++m) omegas.push_back(omega_poly(R, m));
  for (int t = 0; t < D; ++t) {
    const int d = D - 1 - t;
    for (int slot = 0; slot < 2; ++slot) {
      ZVector col;
      for (int m = 1; m <= depth; ++m) {
        const int N = static_cast<int>(ipow(R.p(), m));
        for (int row = 0; row < 2; ++row) {
          Poly entry = mats.H[m - 1][row][slot].coeffs();
          entry.insert(entry.begin(), static_cast<std::size_t>(d), Scalar{});
          ZVector part = poly_coords(R, poly_mod(R, entry, omegas[m - 1]), N);
          col.insert(col.end(), part.begin(), part.end());
        }
      }
      cols.push_back(std::move(col));
    }
  }
  return cols;
}

int sprung_equations(const RingParams& R, int depth) {
  int e = 0;
  for (int m = 1; m <= depth; ++m) e += 2 * static_cast<int>(ipow(R.p(), m));
  return e;
}

}  // namespace

SprungDecomposer::SprungDecomposer(const RingParams& params, i64 ap, int depth)
    : params_(params),
      ap_(ap),
      depth_(depth),
      degree_bound_(static_cast<int>(ipow(params.p(), depth))),
      mats_(sprung_matrices(params, ap, depth)),
      system_(sprung_columns(params, mats_, depth, degree_bound_), sprung_equations(params, depth), params.p(),
              params.n()) {
  if (params.ext() != 1) throw PreconditionError("SprungDecomposer: theta families have ext = 1");
  for (int m = 0; m <= depth; ++m) omegas_.push_back(omega_poly(params, m));
}

ZVector SprungDecomposer::pack_rhs(const ThetaFamily& fam, int component) const {
  ZVector rhs;
  for (int m = 1; m <= depth_; ++m) {
    const int N = static_cast<int>(ipow(params_.p(), m));
    ZVector a = poly_coords(params_, fam.at(m, component).to_series().coeffs(), N);
    ZVector b = poly_coords(params_, (-norm_xi(fam.at(m - 1, component))).to_series().coeffs(), N);
    rhs.insert(rhs.end(), a.begin(), a.end());
    rhs.insert(rhs.end(), b.begin(), b.end());
  }
  return rhs;
}

std::pair<Poly, Poly> SprungDecomposer::unpack(const ZVector& x) const { return unpack_pair(params_, x, degree_bound_); }

SignedPair SprungDecomposer::decompose(const ThetaFamily& fam) const {
  fam.validate();
  require_same(params_, fam.params, "sprung_decompose");
  if (params_.from_int(fam.ap) != params_.from_int(ap_)) throw ParameterMismatch("sprung_decompose: a_p differs");
  if (fam.depth < depth_) throw PreconditionError("sprung_decompose: family is shallower than the working depth");
  if (auto rel = check_norm_relation(fam); !rel.passed)
    throw PreconditionError("sprung_decompose: norm relation fails at m=" + levels_to_string(rel.failing_levels()));

  SignedPair out;
  out.mode = SignedMode::SharpFlat;
  out.params = params_;
  out.ap = ap_;
  out.depth = depth_;
  const Poly& top = omegas_[depth_];
  for (int k = 0; k < fam.rank; ++k) {
    const ZVector rhs = pack_rhs(fam, k);
    auto x = system_.solve(rhs);
    if (!x) throw DecompositionError("family admits no sharp/flat decomposition at this depth");
    auto [sharp, flat] = unpack(*x);
    for (int m = 1; m <= depth_; ++m) {
      const auto& H = mats_.H[m - 1];
      const Poly& om = omegas_[m];
      const Poly v = poly_mod(params_, poly_add(params_, poly_mul(params_, H[0][0].coeffs(), sharp),
                                                poly_mul(params_, H[0][1].coeffs(), flat)), om);
      const Poly w = poly_mod(params_, poly_add(params_, poly_mul(params_, H[1][0].coeffs(), sharp),
                                                poly_mul(params_, H[1][1].coeffs(), flat)), om);
      if (v != fam.at(m, k).to_series().coeffs() || w != (-norm_xi(fam.at(m - 1, k))).to_series().coeffs())
        throw InternalError("sprung_decompose: returned representative violates the congruences");
    }
    out.first.emplace_back(params_, std::move(sharp), top);
    out.second.emplace_back(params_, std::move(flat), top);
  }
  for (const auto& row : system_.kernel().rows()) {
    auto [a, b] = unpack(row);
    out.kernel_basis.emplace_back(TruncatedSeries(params_, std::move(a), top), TruncatedSeries(params_, std::move(b), top));
  }
  return out;
}

SignedPair sprung_decompose(const ThetaFamily& fam, int depth) {
  return SprungDecomposer(fam.params, fam.ap, depth).decompose(fam);
}

ThetaFamily sprung_synthesize(const std::vector<TruncatedSeries>& sharp, const std::vector<TruncatedSeries>& flat,
                              const RingParams& params, i64 ap, int depth) {
  if (sharp.size() != flat.size() || sharp.empty()) throw PreconditionError("sprung_synthesize: rank mismatch");
  if (params.ext() != 1) throw PreconditionError("sprung_synthesize: theta families have ext = 1");
  if (depth < 1) throw PreconditionError("sprung_synthesize needs depth >= 1");
  const int rank = static_cast<int>(sharp.size());
  const SprungMatrices mats = sprung_matrices(params, ap, depth);
  const Poly top = omega_poly(params, depth);
  ThetaFamily fam = ThetaFamily::zero(params, ap, depth, rank);

  for (int k = 0; k < rank; ++k) {
    require_same(params, sharp[k].params(), "sprung_synthesize");
    require_same(params, flat[k].params(), "sprung_synthesize");
    const Poly s = poly_mod(params, sharp[k].coeffs(), top);
    const Poly f = poly_mod(params, flat[k].coeffs(), top);
    std::vector<Poly> second(static_cast<std::size_t>(depth) + 1);
    for (int m = 1; m <= depth; ++m) {
      const auto& H = mats.H[m - 1];
      const Poly om = omega_poly(params, m);
      const Poly v = poly_add(params, poly_mul(params, H[0][0].coeffs(), s), poly_mul(params, H[0][1].coeffs(), f));
      const Poly w = poly_add(params, poly_mul(params, H[1][0].coeffs(), s), poly_mul(params, H[1][1].coeffs(), f));
      fam.at(m, k) = GroupRingElement::from_series(TruncatedSeries(params, v, om), m);
      second[m] = poly_mod(params, w, om);
    }
    // lambda_0 in Lambda_n/(X): Phi_1 lambda_0 = -w_1 mod omega_1, a unique solve.
    const Poly omega1 = omega_poly(params, 1);
    QuotientSolve l0 = solve_multiple(params, phi_polynomial(params, 1), poly_neg(params, second[1]), omega1, 1);
    if (!l0.solution || !l0.kernel.empty())
      throw InternalError("sprung_synthesize: lambda_0 is not recoverable from the m = 1 congruence");
    fam.at(0, k) = GroupRingElement::from_series(TruncatedSeries(params, *l0.solution, omega_poly(params, 0)), 0);
    for (int m = 1; m <= depth; ++m) {
      const Poly expected = (-norm_xi(fam.at(m - 1, k))).to_series().coeffs();
      if (second[m] != expected) throw InternalError("sprung_synthesize: consistency condition fails at m=" + std::to_string(m));
    }
  }
  return fam;
}

ThetaFamily sprung_synthesize(const TruncatedSeries& sharp, const TruncatedSeries& flat, const RingParams& params,
                              i64 ap, int depth) {
  return sprung_synthesize(std::vector<TruncatedSeries>{sharp}, std::vector<TruncatedSeries>{flat}, params, ap, depth);
}

}  // namespace iwasawa
