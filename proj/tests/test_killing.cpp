#include "doctest.h"

#include "sugra/killing.hpp"

#include <random>

using namespace sugra;

namespace {

Rat rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  return Rat(num(rng), den(rng));
}

Form<Rat> random_form(int dim, int deg, int terms, std::mt19937& rng) {
  Form<Rat> f(dim, deg);
  auto tuples = increasing_tuples(dim, deg);
  std::shuffle(tuples.begin(), tuples.end(), rng);
  for (int t = 0; t < terms && t < int(tuples.size()); ++t)
    f.add(tuples[t], rnd_rat(rng));
  return f;
}

std::vector<Rat> random_vector(int dim, std::mt19937& rng) {
  std::vector<Rat> x(dim);
  for (auto& v : x) v = rnd_rat(rng);
  return x;
}

Spinor random_spinor(int n, std::mt19937& rng) {
  Spinor s(n, 1);
  for (int i = 0; i < n; ++i) s(i, 0) = CxRat(rnd_rat(rng), rnd_rat(rng));
  return s;
}

CMat conj_mat(const CMat& m) {
  CMat out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = conj(m(r, c));
  return out;
}

bool is_zero(const CMat& m) { return m.max_abs() == 0.0; }

}  // namespace

TEST_CASE("11d gravitino algebraic term: three printed shapes coincide exactly") {
  GammaRep rep = build_gamma_rep(11);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Form<Rat> g = random_form(11, 4, 5, rng);
    std::vector<Rat> x = random_vector(11, rng);
    CMat a = gravitino11_wedge_form(rep, g, x);
    CMat b = gravitino11_contraction_form(rep, g, x);
    CMat c = gravitino11_symmetric_form(rep, g, x);
    CHECK(is_zero(a - b));
    CHECK(is_zero(a - c));
  }
}

TEST_CASE("commutator identity X.(F.psi) + (-1)^{k+1} F.(X.psi) = 2 (i_X F).psi") {
  GammaRep rep = build_gamma_rep(11);
  std::mt19937 rng(17);
  for (int k : {1, 2, 3, 4}) {
    Form<Rat> f = random_form(11, k, 4, rng);
    std::vector<Rat> x = random_vector(11, rng);
    CMat xc = vector_clifford(rep, x);
    CMat fc = clifford_action(f, rep);
    CMat lhs = xc * fc + ((k % 2 == 1) ? CxRat(Rat(1)) : CxRat(Rat(-1))) * (fc * xc);
    CMat rhs = CxRat(Rat(2)) * clifford_action(interior(x, f), rep);
    CHECK(is_zero(lhs - rhs));
  }
}

TEST_CASE("wedge expansion (alpha ^ F). = alpha.(F.) - (i_{alpha sharp} F).") {
  GammaRep rep = build_gamma_rep(11);
  std::mt19937 rng(23);
  Form<Rat> f = random_form(11, 3, 4, rng);
  std::vector<Rat> x = random_vector(11, rng);
  Form<Rat> alpha = flat_frame(rep, x);
  CMat lhs = clifford_action(wedge(alpha, f), rep);
  CMat rhs = vector_clifford(rep, x) * clifford_action(f, rep) -
             clifford_action(interior(x, f), rep);
  CHECK(is_zero(lhs - rhs));
}

TEST_CASE("zero flux leaves only the derivative part") {
  GammaRep rep11 = build_gamma_rep(11);
  std::mt19937 rng(2);
  std::vector<Rat> x = random_vector(11, rng);
  CHECK(is_zero(gravitino11_operator(rep11, Form<Rat>(11, 4), x).algebraic));

  GammaRep rep10 = build_gamma_rep(10);
  std::vector<Rat> y = random_vector(10, rng);
  IIAKillingData za;
  CHECK(is_zero(iia_gravitino_operator(rep10, za, y).algebraic));
  CHECK(is_zero(iia_dilatino_operator(rep10, za).algebraic));
  IIBKillingData zb;
  CHECK(is_zero(iib_gravitino_doublet(rep10, zb, y).algebraic));
  CHECK(is_zero(iib_dilatino_doublet(rep10, zb).algebraic));
}

TEST_CASE("IIA operators and the real structure") {
  GammaRep rep = build_gamma_rep(10);
  RealStructure rs = real_structure(rep);
  REQUIRE(rs.kind == RealStructure::Kind::majorana);
  std::mt19937 rng(11);

  SUBCASE("dilatino operator maps the Majorana subspace to itself") {
    for (int trial = 0; trial < 10; ++trial) {
      IIAKillingData f;
      f.ephi = Rat(3, 2);
      f.dphi = random_form(10, 1, 3, rng);
      f.H3 = random_form(10, 3, 4, rng);
      f.G2 = random_form(10, 2, 4, rng);
      f.G4t = random_form(10, 4, 4, rng);
      CMat d = iia_dilatino_operator(rep, f).algebraic;
      CHECK(is_zero(rs.b * conj_mat(d) - d * rs.b));
      CMat g = iia_gravitino_operator(rep, f, random_vector(10, rng)).algebraic;
      CHECK(is_zero(rs.b * conj_mat(g) - g * rs.b));
    }
  }

  SUBCASE("generic dilatino operator has trivial joint kernel") {
    IIAKillingData f;
    f.ephi = Rat(2);
    f.dphi = random_form(10, 1, 3, rng);
    f.H3 = random_form(10, 3, 5, rng);
    f.G2 = random_form(10, 2, 5, rng);
    f.G4t = random_form(10, 4, 5, rng);
    KernelResult k = susy_kernel({iia_dilatino_operator(rep, f).algebraic}, rs);
    CHECK(k.dim == 0);
  }
}

TEST_CASE("supersymmetry counting") {
  SUBCASE("flat background, no operators: the full Majorana space, 32 real") {
    GammaRep rep = build_gamma_rep(11);
    RealStructure rs = real_structure(rep);
    KernelResult k = susy_kernel({}, rs);
    CHECK(k.dim == 32);
  }

  SUBCASE("flat IIA: zero operators on the d = 10 Majorana space give 32") {
    GammaRep rep = build_gamma_rep(10);
    RealStructure rs = real_structure(rep);
    CHECK(susy_kernel({}, rs).dim == 32);
  }

  SUBCASE("negative-chirality projector cuts the count to 16") {
    GammaRep rep = build_gamma_rep(10);
    RealStructure rs = real_structure(rep);
    REQUIRE(rs.weyl_compatible);
    CMat g11 = chirality_operator(rep);
    CMat pminus = CxRat(Rat(1, 2)) * (CMat::identity(rep.spinor_dim) - g11);
    CHECK(susy_kernel({pminus}, rs).dim == 16);
  }

  SUBCASE("kernel dimension survives a change of basis commuting with sigma") {
    GammaRep rep = build_gamma_rep(10);
    RealStructure rs = real_structure(rep);
    std::mt19937 rng(29);
    IIAKillingData f;
    f.H3 = random_form(10, 3, 2, rng);
    CMat op = iia_dilatino_operator(rep, f).algebraic;
    int base = susy_kernel({op}, rs).dim;

    // even products of gammas commute with sigma for either gamma_sign
    CMat t = CMat::identity(rep.spinor_dim);
    for (int terms = 0; terms < 3; ++terms) {
      std::uniform_int_distribution<int> idx(0, 9);
      int a = idx(rng), b = idx(rng);
      if (a == b) continue;
      t = t + CxRat(Rat(1, 5) * rnd_rat(rng)) * antisym_gamma(rep, {a, b});
    }
    CMat conjd = t * op * t.inverse();
    CHECK(susy_kernel({conjd}, rs).dim == base);
  }

  SUBCASE("float path agrees with the exact path") {
    GammaRep rep = build_gamma_rep(10);
    RealStructure rs = real_structure(rep);
    std::mt19937 rng(31);
    IIAKillingData f;
    f.H3 = random_form(10, 3, 4, rng);
    f.G2 = random_form(10, 2, 4, rng);
    CMat op = iia_dilatino_operator(rep, f).algebraic;
    Mat<Cx<double>> opd(op.rows(), op.cols());
    for (int r = 0; r < op.rows(); ++r)
      for (int c = 0; c < op.cols(); ++c)
        opd(r, c) = Cx<double>(to_double(op(r, c).re), to_double(op(r, c).im));
    CHECK(susy_kernel_dim({opd}, rs) == susy_kernel({op}, rs).dim);
    CHECK(susy_kernel_dim({}, rs) == 32);
  }
}

TEST_CASE("IIB doublet and complex formulations agree") {
  GammaRep rep = build_gamma_rep(10);
  std::mt19937 rng(41);
  int n = rep.spinor_dim;
  for (int trial = 0; trial < 100; ++trial) {
    IIBKillingData f;
    f.ephi = Rat(1, 2) + rnd_rat(rng) * rnd_rat(rng);
    if (f.ephi == 0) f.ephi = 1;
    f.dphi = random_form(10, 1, 2, rng);
    f.H3 = random_form(10, 3, 3, rng);
    f.G1 = random_form(10, 1, 2, rng);
    f.G3t = random_form(10, 3, 3, rng);
    f.G5t = random_form(10, 5, 3, rng);
    std::vector<Rat> x = random_vector(10, rng);
    Spinor e1 = random_spinor(n, rng), e2 = random_spinor(n, rng);
    Spinor stacked = Spinor::vstack({e1, e2});

    CxRat i = cxrat_i();
    for (bool grav : {true, false}) {
      Spinor doublet_out =
          (grav ? iib_gravitino_doublet(rep, f, x) : iib_dilatino_doublet(rep, f))
              .algebraic *
          stacked;
      Spinor d1(n, 1), d2(n, 1);
      for (int r = 0; r < n; ++r) {
        d1(r, 0) = doublet_out(r, 0);
        d2(r, 0) = doublet_out(n + r, 0);
      }
      Spinor complex_out = grav ? iib_gravitino_complex(rep, f, x, e1, e2)
                                : iib_dilatino_complex(rep, f, e1, e2);
      // the doublet equations are the imaginary and real parts
      CHECK(is_zero(complex_out - (d2 + i * d1)));
    }
  }
}

TEST_CASE("IIB chirality bookkeeping") {
  GammaRep rep = build_gamma_rep(10);
  std::mt19937 rng(43);
  IIBKillingData f;
  f.ephi = Rat(2, 3);
  f.dphi = random_form(10, 1, 2, rng);
  f.H3 = random_form(10, 3, 4, rng);
  f.G1 = random_form(10, 1, 2, rng);
  f.G3t = random_form(10, 3, 4, rng);
  f.G5t = random_form(10, 5, 4, rng);
  CMat g11d = kron(CMat::identity(2), chirality_operator(rep));
  CMat grav = iib_gravitino_doublet(rep, f, random_vector(10, rng)).algebraic;
  CMat dil = iib_dilatino_doublet(rep, f).algebraic;
  // gravitino terms have even Clifford degree: they preserve each half
  CHECK(is_zero(grav * g11d - g11d * grav));
  // dilatino terms are odd: they swap the halves
  CHECK(is_zero(dil * g11d + g11d * dil));
}

TEST_CASE("lambda matrices close under commutators with trace zero") {
  CMat l1(2, 2), l2(2, 2), l3(2, 2);
  l1(0, 1) = l1(1, 0) = CxRat(Rat(1));
  l2(0, 1) = CxRat(Rat(1));
  l2(1, 0) = CxRat(Rat(-1));
  l3(0, 0) = CxRat(Rat(1));
  l3(1, 1) = CxRat(Rat(-1));
  CHECK(is_zero(l1 * l3 + l3 * l1));
  CHECK(is_zero(l1 * l2 + l2 * l1));
  CHECK(is_zero(l2 * l3 + l3 * l2));
  CHECK(is_zero(l1 * l2 - CxRat(Rat(-1)) * l3 - (l3 - l3)));  // l1 l2 = -l3
  CHECK(is_zero(l2 * l2 + CMat::identity(2)));                // l2^2 = -Id
  CHECK(is_zero(l1 * l1 - CMat::identity(2)));
  CHECK(is_zero(l3 * l3 - CMat::identity(2)));
}

TEST_CASE("spin connection term: antisymmetric pairing against the gamma basis") {
  GammaRep rep = build_gamma_rep(4);
  Mat<double> omega(4, 4);
  omega(0, 1) = 0.3;
  omega(1, 0) = -0.3;
  omega(2, 3) = -0.7;
  omega(3, 2) = 0.7;
  Mat<Cx<double>> m = spin_connection_matrix(rep, omega);
  // -1/4 sum_{ab} omega_ab Gamma^{ab} = -1/2 (0.3 Gamma^{01} - 0.7 Gamma^{23})
  CMat g01 = antisym_gamma(rep, {0, 1});
  CMat g23 = antisym_gamma(rep, {2, 3});
  double worst = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Cx<double> want(-0.5 * (0.3 * to_double(g01(r, c).re) - 0.7 * to_double(g23(r, c).re)),
                      -0.5 * (0.3 * to_double(g01(r, c).im) - 0.7 * to_double(g23(r, c).im)));
      worst = std::max(worst, std::abs(m(r, c).re - want.re) +
                                  std::abs(m(r, c).im - want.im));
    }
  CHECK(worst < 1e-15);
}
