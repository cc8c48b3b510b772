#include "doctest.h"
#include "sugra/gamma.hpp"

#include <random>

using namespace sugra;

namespace {

CMat conj_mat(const CMat& m) {
  CMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = conj(m(i, j));
  return r;
}

bool is_zero(const CMat& m) { return m.max_abs() == 0.0; }

Form<CxRat> rand_form(std::mt19937& rng, int dim, int deg, int terms = 4) {
  Form<CxRat> f(dim, deg);
  auto tuples = increasing_tuples(dim, deg);
  std::uniform_int_distribution<size_t> pick(0, tuples.size() - 1);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int t = 0; t < terms; ++t)
    f.add(tuples[pick(rng)], CxRat(Rat(c(rng)), Rat(c(rng))));
  f.prune();
  return f;
}

std::vector<CxRat> rand_vector(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<CxRat> v(dim);
  for (auto& x : v) x = CxRat(Rat(c(rng)));
  return v;
}

}  // namespace

TEST_CASE("defining anticommutation relations, exactly, for d = 2..12") {
  for (int d = 2; d <= 12; ++d) {
    GammaRep rep = build_gamma_rep(d);
    CHECK(rep.spinor_dim == (1 << (d / 2)));
    CMat id = CMat::identity(rep.spinor_dim);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b <= a; ++b) {
        CMat ac = rep.gammas[a] * rep.gammas[b] + rep.gammas[b] * rep.gammas[a];
        CxRat eta = a != b ? CxRat{} : (a == 0 ? CxRat(Rat(-2)) : CxRat(Rat(2)));
        CHECK(ac == eta * id);
      }
  }
}

TEST_CASE("build_gamma_rep rejects out-of-range dimensions") {
  CHECK_THROWS_AS(build_gamma_rep(1), std::invalid_argument);
  CHECK_THROWS_AS(build_gamma_rep(13), std::invalid_argument);
}

TEST_CASE("d = 11 central product is +Id, and the sign flag flips it") {
  for (int sign : {1, -1}) {
    GammaRep rep = build_gamma_rep(11, sign);
    CMat prod = CMat::identity(rep.spinor_dim);
    for (const CMat& g : rep.gammas) prod = prod * g;
    CHECK(prod == CxRat(Rat(sign)) * CMat::identity(32));
  }
}

TEST_CASE("antisymmetrized gammas: repeated index, commutator, plain product") {
  GammaRep rep = build_gamma_rep(4);
  auto upper = [&](int a) {
    return a == 0 ? -rep.gammas[0] : rep.gammas[a];
  };
  CHECK(is_zero(antisym_gamma(rep, {1, 1})));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      // Gamma^{ab} = 1/2 [Gamma^a, Gamma^b]
      CMat half_comm = CxRat(Rat(1, 2)) * (upper(a) * upper(b) - upper(b) * upper(a));
      CHECK(antisym_gamma(rep, {a, b}) == half_comm);
    }
  CHECK(antisym_gamma(rep, {0, 1, 2}) == upper(0) * upper(1) * upper(2));
  CHECK(antisym_gamma(rep, {2, 0, 1}) == upper(0) * upper(1) * upper(2));
  CHECK(antisym_gamma(rep, {1, 0}) == -(upper(0) * upper(1)));
}

TEST_CASE("chirality: squares to Id, anticommutes with gammas, commutes with bivectors") {
  for (int d : {4, 6, 10}) {
    GammaRep rep = build_gamma_rep(d);
    CMat ch = chirality_operator(rep);
    CMat id = CMat::identity(rep.spinor_dim);
    CHECK(ch * ch == id);
    for (int a = 0; a < d; ++a) {
      CHECK(ch * rep.gammas[a] + rep.gammas[a] * ch == CMat(rep.spinor_dim, rep.spinor_dim));
      for (int b = a + 1; b < d; ++b) {
        CMat g2 = antisym_gamma(rep, {a, b});
        CHECK(ch * g2 == g2 * ch);
      }
    }
  }
  // d = 10: the i^{1-k} phase degenerates to 1, so Gamma_11 is the plain product.
  GammaRep rep10 = build_gamma_rep(10);
  CMat prod = CMat::identity(32);
  for (const CMat& g : rep10.gammas) prod = prod * g;
  CHECK(chirality_operator(rep10) == prod);
  CHECK_THROWS_AS(chirality_operator(build_gamma_rep(5)), std::invalid_argument);
}

TEST_CASE("clifford action: frame 1-form, scalars, expansion oracle, dvol") {
  GammaRep rep = build_gamma_rep(10);
  auto upper = [&](int a) { return a == 0 ? -rep.gammas[0] : rep.gammas[a]; };
  Form<CxRat> a0 = Form<CxRat>::basis(10, {0});
  CHECK(clifford_action(a0, rep) == upper(0));
  Form<CxRat> s = Form<CxRat>::scalar(10, CxRat(Rat(7)));
  CHECK(clifford_action(s, rep) == CxRat(Rat(7)) * CMat::identity(32));

  std::mt19937 rng(41);
  Form<CxRat> f = rand_form(rng, 10, 3, 5);
  CMat m(32, 32);
  for (const auto& idx : increasing_tuples(10, 3))
    if (f.coeff(idx) != CxRat{})
      m += f.coeff(idx) * upper(idx[0]) * upper(idx[1]) * upper(idx[2]);
  CHECK(clifford_action(f, rep) == m);

  // Gamma_{n+2} psi = -i^{1-k} dvol . psi in even d.
  for (int d : {4, 10}) {
    GammaRep r = build_gamma_rep(d);
    IndexTuple top(d);
    for (int i = 0; i < d; ++i) top[i] = i;
    Form<CxRat> dvol = Form<CxRat>::basis(d, top);
    int k = d / 2;
    CxRat phase(Rat(1));
    for (int t = 0; t < ((1 - k) % 4 + 4) % 4; ++t) phase = phase * cxrat_i();
    CHECK(chirality_operator(r) == CxRat(Rat(-1)) * phase * clifford_action(dvol, r));
  }
}

TEST_CASE("weyl split: projectors, half dimensions, vectors swap the halves") {
  GammaRep rep = build_gamma_rep(10);
  CMat ch = chirality_operator(rep);
  CMat id = CMat::identity(32);
  CxRat half(Rat(1, 2));
  CMat pp = half * (id + ch), pm = half * (id - ch);
  CHECK(pp + pm == id);
  CHECK(pp * pp == pp);
  CHECK(pm * pm == pm);
  CHECK(pp.rank() == 16);
  CHECK(pm.rank() == 16);
  for (int a = 0; a < 10; ++a) CHECK(pp * rep.gammas[a] == rep.gammas[a] * pm);

  std::mt19937 rng(42);
  std::uniform_int_distribution<int> c(-3, 3);
  Spinor psi(32, 1);
  for (int i = 0; i < 32; ++i) psi(i, 0) = CxRat(Rat(c(rng)), Rat(c(rng)));
  auto [plus, minus] = weyl_split(rep, psi);
  CHECK(plus + minus == psi);
  CHECK(ch * plus == plus);
  CHECK(ch * minus == -minus);
}

TEST_CASE("wedge/contraction exchange identities acting on spinors") {
  // (alpha ^ F).psi = alpha.(F.psi) - (i_{alpha#} F).psi and
  // X.(F.psi) + (-1)^{k+1} F.(X.psi) = (2 i_X F).psi, as exact matrix
  // identities in the orthonormal frame.
  std::mt19937 rng(43);
  for (int d : {4, 10, 11}) {
    GammaRep rep = build_gamma_rep(d);
    Metric<CxRat> eta = Metric<CxRat>::minkowski(d);
    for (int k = 1; k <= std::min(5, d - 1); ++k) {
      Form<CxRat> f = rand_form(rng, d, k);
      Form<CxRat> alpha = rand_form(rng, d, 1, 2);
      CMat lhs = clifford_action(wedge(alpha, f), rep);
      CMat rhs = clifford_action(alpha, rep) * clifford_action(f, rep) -
                 clifford_action(interior(sharp(alpha, eta), f), rep);
      CHECK(lhs == rhs);

      auto x = rand_vector(rng, d);
      Form<CxRat> xflat = flat(x, eta);
      CMat cx = clifford_action(xflat, rep);
      CMat cf = clifford_action(f, rep);
      CMat lhs2 = cx * cf + CxRat(Rat(k % 2 == 0 ? -1 : 1)) * cf * cx;
      CMat rhs2 = CxRat(Rat(2)) * clifford_action(interior(x, f), rep);
      CHECK(lhs2 == rhs2);
    }
  }
}

TEST_CASE("real structures follow the d mod 8 classification") {
  struct Row {
    int d;
    RealStructure::Kind kind;
    int min_dim;
  };
  std::vector<Row> table = {
      {4, RealStructure::Kind::majorana, 4},    {5, RealStructure::Kind::symplectic, 8},
      {6, RealStructure::Kind::symplectic, 8},  {7, RealStructure::Kind::symplectic, 16},
      {8, RealStructure::Kind::majorana, 16},   {9, RealStructure::Kind::majorana, 16},
      {10, RealStructure::Kind::majorana, 16},  {11, RealStructure::Kind::majorana, 32},
  };
  for (const Row& row : table) {
    GammaRep rep = build_gamma_rep(row.d);
    RealStructure rs = real_structure(rep);
    CHECK(rs.kind == row.kind);
    CHECK(rs.sigma_sq == (rs.kind == RealStructure::Kind::majorana ? 1 : -1));
    // sigma^2 = B conj(B) = +-Id exactly, and Spin-equivariance.
    CMat bb = rs.b * conj_mat(rs.b);
    CHECK(bb == CxRat(Rat(rs.sigma_sq)) * CMat::identity(rep.spinor_dim));
    for (int a = 0; a < row.d; ++a)
      for (int b = a + 1; b < row.d; ++b) {
        CMat g2 = antisym_gamma(rep, {a, b});
        CHECK(rs.b * conj_mat(g2) == g2 * rs.b);
      }
    CHECK(minimal_real_dimension(rep, rs) == row.min_dim);
  }
  // Majorana-Weyl in d = 10: sigma preserves the chirality halves.
  CHECK(real_structure(build_gamma_rep(10)).weyl_compatible);
  CHECK_FALSE(real_structure(build_gamma_rep(4)).weyl_compatible);
}
