#include "doctest.h"

#include "sugra/reduction.hpp"

#include <random>

using namespace sugra;

namespace {

FramePatch bumpy10() {
  FramePatch fp;
  fp.patch.dim = 10;
  fp.patch.metric = [](const Point& p) {
    Mat<double> g(10, 10);
    g(0, 0) = -1 - 0.06 * p[1] * p[1];
    for (int i = 1; i < 10; ++i) g(i, i) = 1 + 0.05 * std::sin(p[(i + 3) % 10] + i);
    g(1, 4) = g(4, 1) = 0.04 * p[0] * p[2];
    g(2, 7) = g(7, 2) = 0.03 * std::cos(p[5]);
    return g;
  };
  return fp;
}

Rat small_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-2, 2), den(1, 3);
  return Rat(num(rng), den(rng));
}

PolyForm random_poly(int deg, int terms, std::mt19937& rng) {
  PolyForm f(10, deg);
  auto tuples = increasing_tuples(10, deg);
  std::shuffle(tuples.begin(), tuples.end(), rng);
  std::uniform_int_distribution<int> var(0, 9);
  for (int t = 0; t < terms && t < int(tuples.size()); ++t)
    f.set(tuples[t], PolyRat(small_rat(rng)) * PolyRat::variable(var(rng)) +
                         PolyRat(small_rat(rng)));
  return f;
}

FormField eval_field(const PolyForm& f) {
  return [f](const Point& p) { return evaluate_form(f, p); };
}

/// Base with potentials, exact field strengths and a mildly curved metric.
BackgroundIIA curved_base(unsigned seed) {
  std::mt19937 rng(seed);
  PolyForm b2 = random_poly(2, 3, rng);
  PolyForm c1 = random_poly(1, 3, rng);
  PolyForm c3 = random_poly(3, 3, rng);
  PolyForm h3 = exterior_derivative(b2);
  PolyForm g2 = exterior_derivative(c1);
  PolyForm g4t = exterior_derivative(c3) - wedge(c1, h3);

  BackgroundIIA bg;
  bg.frame = bumpy10();
  bg.phi = [](const Point& p) {
    return 0.3 * p[1] + 0.1 * p[2] * p[3] + 0.05 * p[0] * p[0];
  };
  bg.B2 = eval_field(b2);
  bg.C1 = eval_field(c1);
  bg.C3 = eval_field(c3);
  bg.H3 = eval_field(h3);
  bg.G2 = eval_field(g2);
  bg.G4t = eval_field(g4t);
  return bg;
}

std::vector<Point> probes() {
  Point p(11, 0.0);
  p[10] = 0.7;  // fields must not see the angle
  Point q = {0.2, -0.1, 0.15, 0.1, -0.2, 0.25, 0.0, 0.1, -0.15, 0.2, 1.3};
  return {p, q};
}

void require_all(const ResidualReport& rep) {
  for (const auto& e : rep.entries()) {
    INFO(e.name, " = ", e.value, " tol ", e.tol);
    CHECK(e.pass);
  }
}

KillingReductionConfig random_config(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 9), upick(0, 3);
  const Rat us[4] = {Rat(1), Rat(1, 2), Rat(3, 2), Rat(2)};
  KillingReductionConfig cfg;
  cfg.u = us[upick(rng)];
  for (int t = 0; t < 3; ++t) cfg.dphi[pick(rng)] = small_rat(rng);
  for (int t = 0; t < 6; ++t)
    cfg.omegaN[pick(rng)](pick(rng), pick(rng)) = small_rat(rng);
  auto sprinkle = [&](Form<Rat>& f, int deg, int terms) {
    auto tuples = increasing_tuples(10, deg);
    std::shuffle(tuples.begin(), tuples.end(), rng);
    for (int t = 0; t < terms; ++t) f.set(tuples[t], small_rat(rng));
  };
  sprinkle(cfg.H3, 3, 3);
  sprinkle(cfg.G2, 2, 3);
  sprinkle(cfg.G4t, 4, 4);
  return cfg;
}

}  // namespace

TEST_CASE("trivial lift of a flat base is the flat product") {
  BackgroundIIA bg;
  bg.frame.patch.dim = 10;
  bg.frame.patch.metric = [](const Point&) {
    Mat<double> g(10, 10);
    g(0, 0) = -1;
    for (int i = 1; i < 10; ++i) g(i, i) = 1;
    return g;
  };
  bg.phi = [](const Point&) { return 0.0; };
  ReductionData rd = build_gm(bg);
  Point p(11, 0.1);
  Mat<double> gm = rd.lifted.patch.metric(p);
  for (int a = 0; a < 11; ++a)
    for (int b = 0; b < 11; ++b)
      CHECK(gm(a, b) == (a == b ? (a == 0 ? -1.0 : 1.0) : 0.0));
  Mat<double> e = rd.lifted_frame(p);
  CHECK((e - Mat<double>::identity(11)).max_abs() == 0.0);
  require_all(connection_reduction_check(rd, {p}));
  require_all(field_strength_reduce(rd, {p}));
  require_all(lagrangian_reduction_check(rd, {p}));
}

TEST_CASE("lifted metric and fields are constant along the angle") {
  BackgroundIIA bg = curved_base(11);
  ReductionData rd = build_gm(bg);
  Point p = probes()[1], p2 = p;
  p2[10] += 2.1;
  CHECK((rd.lifted.patch.metric(p) - rd.lifted.patch.metric(p2)).max_abs() == 0.0);
  CHECK((rd.G(p) - rd.G(p2)).max_abs() == 0.0);
  CHECK((rd.C(p) - rd.C(p2)).max_abs() == 0.0);
}

TEST_CASE("connection coefficients of the lift match the base dictionary") {
  BackgroundIIA bg = curved_base(23);
  for (bool flip : {false, true}) {
    ReductionData rd = build_gm(bg, {flip, 1.0});
    require_all(connection_reduction_check(rd, probes()));
  }
}

TEST_CASE("field strengths, norms and volume reduce with the dilaton weights") {
  BackgroundIIA bg = curved_base(37);
  for (bool flip : {false, true}) {
    ReductionData rd = build_gm(bg, {flip, 1.0});
    require_all(field_strength_reduce(rd, probes()));
  }
}

TEST_CASE("scalar curvature of the lift reproduces the base density") {
  BackgroundIIA bg = curved_base(41);
  bg.kappa10 = 0.8;
  ReductionData rd = build_gm(bg, {false, 2.5});
  CHECK(rd.kappa11 == doctest::Approx(0.8 * std::sqrt(2.5)));
  require_all(lagrangian_reduction_check(rd, {probes()[0]}));
}

TEST_CASE("cubic term splits exactly over the product chart") {
  std::mt19937 rng(91);
  auto lift11 = [](const PolyForm& f) {
    PolyForm r(11, f.degree());
    for (const auto& [idx, c] : f.coeffs()) r.set(idx, c);
    return r;
  };
  PolyForm c3 = lift11(random_poly(3, 5, rng));
  PolyForm b2 = lift11(random_poly(2, 5, rng));
  require_all(chern_simons_reduction_check(c3, b2));
}

TEST_CASE("spinor dictionary holds exactly on rational configurations") {
  GammaRep rep = build_gamma_rep(10);

  SUBCASE("zero fields") {
    KillingReductionConfig cfg;
    require_all(killing_reduction_identities(rep, cfg));
  }

  SUBCASE("random sparse configurations, both sign conventions") {
    std::mt19937 rng(2026);
    for (int trial = 0; trial < 8; ++trial) {
      KillingReductionConfig cfg = random_config(rng);
      cfg.flip_c1_sign = (trial % 2 == 1);
      require_all(killing_reduction_identities(rep, cfg));
    }
  }

  SUBCASE("sign convention flips the two-form flux in the recovered operators") {
    KillingReductionConfig cfg;
    cfg.G2.set({1, 2}, Rat(1));
    IIAKillingData plus, minus;
    plus.G2 = cfg.G2;
    minus.G2 = Rat(-1) * cfg.G2;
    CMat dp = iia_dilatino_operator(rep, plus).algebraic;
    CMat dm = iia_dilatino_operator(rep, minus).algebraic;
    CHECK((dp - dm).max_abs() > 0.1);
    CHECK((dp + dm).max_abs() == 0.0);
    cfg.flip_c1_sign = false;
    require_all(killing_reduction_identities(rep, cfg));
    cfg.flip_c1_sign = true;
    require_all(killing_reduction_identities(rep, cfg));
  }
}

TEST_CASE("sampled background feeds the exact spinor dictionary") {
  GammaRep rep = build_gamma_rep(10);
  BackgroundIIA bg = curved_base(53);
  for (bool flip : {false, true}) {
    ReductionData rd = build_gm(bg, {flip, 1.0});
    require_all(killing_reduction_check(rd, probes()[1], rep));
  }
}
