#include "sugra/gamma.hpp"
#include <algorithm>

#include <stdexcept>

namespace sugra {

namespace {

CxRat cI() { return cxrat_i(); }

CMat pauli(int k) {
  CMat m(2, 2);
  switch (k) {
    case 1: m(0, 1) = m(1, 0) = CxRat(Rat(1)); break;
    case 2: m(0, 1) = -cI(); m(1, 0) = cI(); break;
    case 3: m(0, 0) = CxRat(Rat(1)); m(1, 1) = -CxRat(Rat(1)); break;
    default: throw std::logic_error("pauli");
  }
  return m;
}

CMat conj_mat(const CMat& m) {
  CMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = conj(m(i, j));
  return r;
}

bool is_scaled_identity(const CMat& m, const CxRat& s) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? s : CxRat{})) return false;
  return true;
}

GammaRep build_even(int d) {
  // d = 2: Gamma_0 = i sigma_2 (real, squares to -1), Gamma_1 = sigma_1.
  GammaRep rep;
  rep.d = 2;
  rep.spinor_dim = 2;
  rep.gammas = {cI() * pauli(2), pauli(1)};
  while (rep.d < d) {
    // Append two dimensions: Gamma_a -> Gamma_a x sigma_3, plus
    // Id x sigma_1 and Id x sigma_2.
    GammaRep next;
    next.d = rep.d + 2;
    next.spinor_dim = rep.spinor_dim * 2;
    CMat id = CMat::identity(rep.spinor_dim);
    for (const CMat& g : rep.gammas) next.gammas.push_back(kron(g, pauli(3)));
    next.gammas.push_back(kron(id, pauli(1)));
    next.gammas.push_back(kron(id, pauli(2)));
    rep = std::move(next);
  }
  return rep;
}

}  // namespace

GammaRep build_gamma_rep(int d, int odd_dim_sign) {
  if (d < 2 || d > 12) throw std::invalid_argument("build_gamma_rep: need 2 <= d <= 12");
  if (d % 2 == 0) return build_even(d);
  GammaRep rep = build_even(d - 1);
  CMat last = chirality_operator(rep);
  // With Gamma_{d-1} = s * chirality the central product Gamma_0...Gamma_{d-1}
  // equals s * i^{k-1} for d = 2k+1; the phase is real exactly when
  // d = 3 mod 4 (in particular d = 11), and there s is fixed so the product
  // carries odd_dim_sign. Otherwise the product is odd_dim_sign * (+-i).
  int k = (d - 1) / 2;
  CxRat phase(Rat(1));
  for (int t = 0; t < ((k - 1) % 4 + 4) % 4; ++t) phase = phase * cI();
  int s = odd_dim_sign;
  CxRat expect;
  if (phase.im == 0) {
    if (phase.re < 0) s = -s;
    expect = CxRat(Rat(odd_dim_sign));
  } else {
    expect = CxRat(Rat(odd_dim_sign)) * phase;
  }
  if (s < 0) last = -last;
  rep.gammas.push_back(last);
  rep.d = d;
  rep.odd_dim_sign = odd_dim_sign;
  CMat prod = CMat::identity(rep.spinor_dim);
  for (const CMat& g : rep.gammas) prod = prod * g;
  if (!is_scaled_identity(prod, expect))
    throw std::logic_error("build_gamma_rep: central product normalization failed");
  return rep;
}

CMat antisym_gamma(const GammaRep& rep, const IndexTuple& indices) {
  auto [sorted, sign] = Form<CxRat>::normalize(indices);
  if (sign == 0) return CMat(rep.spinor_dim, rep.spinor_dim);
  CMat m = CMat::identity(rep.spinor_dim);
  for (int a : sorted) {
    if (a < 0 || a >= rep.d) throw std::out_of_range("antisym_gamma: index");
    m = m * rep.gammas[a];
    if (a == 0) sign = -sign;  // Gamma^0 = eta^{00} Gamma_0 = -Gamma_0
  }
  return sign > 0 ? m : -m;
}

CMat chirality_operator(const GammaRep& rep) {
  if (rep.d % 2 != 0) throw std::invalid_argument("chirality_operator: d must be even");
  int k = rep.d / 2;
  CMat m = CMat::identity(rep.spinor_dim);
  for (const CMat& g : rep.gammas) m = m * g;
  // i^{1-k}
  CxRat phase(Rat(1));
  for (int t = 0; t < ((1 - k) % 4 + 4) % 4; ++t) phase = phase * cI();
  return phase * m;
}

CMat clifford_action(const Form<CxRat>& f, const GammaRep& rep) {
  if (f.dim() != rep.d) throw std::invalid_argument("clifford_action: dim mismatch");
  CMat m(rep.spinor_dim, rep.spinor_dim);
  for (const auto& [idx, c] : f.coeffs()) m += c * antisym_gamma(rep, idx);
  return m;
}

CMat clifford_action(const Form<Rat>& f, const GammaRep& rep) {
  Form<CxRat> fc(f.dim(), f.degree());
  for (const auto& [idx, c] : f.coeffs()) fc.add(idx, CxRat(c));
  return clifford_action(fc, rep);
}

std::pair<Spinor, Spinor> weyl_split(const GammaRep& rep, const Spinor& psi) {
  CMat ch = chirality_operator(rep);
  CxRat half(Rat(1, 2));
  Spinor plus = half * (psi + ch * psi);
  Spinor minus = half * (psi - ch * psi);
  return {plus, minus};
}

RealStructure real_structure(const GammaRep& rep) {
  int n = rep.spinor_dim;
  // In this construction every gamma is a real or purely imaginary matrix;
  // products of the real subset or the imaginary subset (optionally times the
  // chirality operator) exhaust the intertwiner candidates.
  auto entry_class = [](const CMat& g) {
    // 0 = real, 1 = imaginary
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j)
        if (!ScalarTraits<Rat>::is_zero(g(i, j).im)) return 1;
    return 0;
  };
  std::vector<CMat> candidates;
  CMat real_prod = CMat::identity(n), imag_prod = CMat::identity(n);
  for (const CMat& g : rep.gammas) {
    CMat& acc = entry_class(g) == 0 ? real_prod : imag_prod;
    acc = acc * g;
  }
  candidates.push_back(real_prod);
  candidates.push_back(imag_prod);
  if (rep.d % 2 == 0) {
    CMat ch = chirality_operator(rep);
    candidates.push_back(real_prod * ch);
    candidates.push_back(imag_prod * ch);
  }

  struct Found {
    CMat b;
    int ssq, gsign;
  };
  std::vector<Found> found;
  for (const CMat& b : candidates) {
    int gsign = 0;
    bool ok = true;
    for (const CMat& g : rep.gammas) {
      CMat lhs = b * conj_mat(g);
      int s;
      if (lhs == g * b) s = 1;
      else if (lhs == -(g * b)) s = -1;
      else { ok = false; break; }
      if (gsign == 0) gsign = s;
      else if (gsign != s) { ok = false; break; }
    }
    if (!ok) continue;
    CMat bb = b * conj_mat(b);
    int ssq;
    if (is_scaled_identity(bb, CxRat(Rat(1)))) ssq = 1;
    else if (is_scaled_identity(bb, CxRat(Rat(-1)))) ssq = -1;
    else continue;
    found.push_back({b, ssq, gsign});
  }

  RealStructure rs;
  int dm = ((rep.d % 8) + 8) % 8;
  bool want_majorana = (dm == 0 || dm == 1 || dm == 2 || dm == 3 || dm == 4);
  // prefer the intertwiner that commutes with every gamma: that choice makes
  // sigma commute with odd Clifford multiplications as well
  std::stable_sort(found.begin(), found.end(),
                   [](const Found& a, const Found& b) { return a.gsign > b.gsign; });
  for (const Found& f : found) {
    if (want_majorana && f.ssq != 1) continue;
    if (!want_majorana && f.ssq != -1) continue;
    rs.kind = want_majorana ? RealStructure::Kind::majorana
                            : RealStructure::Kind::symplectic;
    rs.b = f.b;
    rs.sigma_sq = f.ssq;
    rs.gamma_sign = f.gsign;
    if (rep.d % 2 == 0) {
      CMat ch = chirality_operator(rep);
      rs.weyl_compatible = (rs.b * conj_mat(ch) == ch * rs.b);
    }
    return rs;
  }
  return rs;  // kind = none
}

int minimal_real_dimension(const GammaRep& rep, const RealStructure& rs) {
  int n = rep.spinor_dim;
  switch (rs.kind) {
    case RealStructure::Kind::majorana:
      // Fixed points of sigma: real dimension n, halved on a preserved
      // chirality eigenspace.
      return rs.weyl_compatible ? n / 2 : n;
    case RealStructure::Kind::symplectic:
      // No fixed points; realification.
      return rs.weyl_compatible ? n : 2 * n;
    default:
      return 2 * n;
  }
}

}  // namespace sugra
