#include "doctest.h"

#include "sugra/eom11.hpp"
#include "sugra/poly.hpp"

#include <random>

using namespace sugra;

namespace {

FramePatch flat11() {
  FramePatch fp;
  fp.patch.dim = 11;
  fp.patch.metric = [](const Point&) {
    Mat<double> g(11, 11);
    g(0, 0) = -1;
    for (int i = 1; i < 11; ++i) g(i, i) = 1;
    return g;
  };
  return fp;
}

Rat rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  return Rat(num(rng), den(rng));
}

// random 4-form with affine polynomial coefficients in the chart coordinates
PolyForm random_poly4(std::mt19937& rng) {
  PolyForm g(11, 4);
  std::uniform_int_distribution<int> var(0, 10), pick(0, 3);
  auto tuples = increasing_tuples(11, 4);
  std::shuffle(tuples.begin(), tuples.end(), rng);
  for (size_t t = 0; t < 8; ++t) {
    PolyRat c = PolyRat::monomial({}, rnd_rat(rng));
    if (pick(rng) != 0) c = c + PolyRat(rnd_rat(rng)) * PolyRat::variable(var(rng));
    g.set(tuples[t], c);
  }
  return g;
}

FormField field_of(const PolyForm& f) {
  return [f](const Point& p) { return evaluate_form(f, p); };
}

}  // namespace

TEST_CASE("flat background with vanishing flux has exactly zero residuals") {
  Background11 bg;
  bg.frame = flat11();
  bg.G = [](const Point&) { return Form<double>(11, 4); };
  std::vector<Point> pts = {Point(11, 0.0), Point(11, 0.3)};
  ResidualReport rep = residuals_11(bg, pts);
  CHECK(rep.all_pass());
  for (const auto& e : rep.entries()) CHECK(e.value == 0.0);
}

TEST_CASE("product flux background satisfies every equation") {
  for (double f : {1.0, 0.7}) {
    Background11 bg = freund_rubin_background(f);
    std::vector<Point> pts = {Point(11, 0.0), Point(11, 0.5)};
    Options11 opt;
    opt.tol = 1e-8;
    ResidualReport rep = residuals_11(bg, pts, opt);
    CHECK(rep.all_pass());
    CHECK(rep.find("scalar_curvature").value < 1e-12);
    CHECK(rep.find("trace_consistency").value < 1e-12);
  }
}

TEST_CASE("product flux curvature components match the closed-form values") {
  Background11 bg = freund_rubin_background(1.0);
  Point p(11, 0.0);
  PointResiduals11 r = point_residuals_11(bg, p);
  // Ricci-form equation fixes Ric = -f^2/3 g on the first factor and
  // +f^2/6 g on the second; cross terms vanish.
  CHECK(r.ricci_form.max_abs() < 1e-14);
  // trace bookkeeping: -4/3 + 7/6 = -1/6
  CHECK(bg.analytic->scalar(p) == doctest::Approx(-1.0 / 6).epsilon(1e-14));
}

TEST_CASE("quadratic-term expansion of the flux equation matches an exact oracle") {
  std::mt19937 rng(2211);
  Metric<Rat> eta = Metric<Rat>::minkowski(11);
  for (int trial = 0; trial < 3; ++trial) {
    PolyForm g4 = random_poly4(rng);
    PolyForm star = hodge_star_const_metric(g4, eta);
    PolyForm oracle = exterior_derivative(star) + PolyRat(Rat(1, 2)) * wedge(g4, g4);

    Background11 bg;
    bg.frame = flat11();
    bg.G = field_of(g4);
    Point p = {0.1, -0.2, 0.3, 0.0, 0.5, -0.4, 0.2, 0.1, -0.3, 0.2, 0.4};
    PointResiduals11 r = point_residuals_11(bg, p);
    CHECK((r.maxwell - evaluate_form(oracle, p)).max_abs() < 1e-8);

    // alternate convention C -> -C flips the quadratic term
    Options11 opt;
    opt.flip_cs_sign = true;
    PolyForm oracle_flip = exterior_derivative(star) - PolyRat(Rat(1, 2)) * wedge(g4, g4);
    PointResiduals11 rf = point_residuals_11(bg, p, opt);
    CHECK((rf.maxwell - evaluate_form(oracle_flip, p)).max_abs() < 1e-8);

    // closedness reported independently of the flux equation
    PolyForm dg = exterior_derivative(g4);
    CHECK((r.bianchi - evaluate_form(dg, p)).max_abs() < 1e-8);
  }
}

TEST_CASE("potential consistency entry checks G = dC") {
  std::mt19937 rng(77);
  PolyForm c3(11, 3);
  auto tuples = increasing_tuples(11, 3);
  std::shuffle(tuples.begin(), tuples.end(), rng);
  std::uniform_int_distribution<int> var(0, 10);
  for (size_t t = 0; t < 6; ++t)
    c3.set(tuples[t], PolyRat(rnd_rat(rng)) * PolyRat::variable(var(rng)));
  PolyForm g4 = exterior_derivative(c3);

  Background11 bg;
  bg.frame = flat11();
  bg.C = field_of(c3);
  bg.G = field_of(g4);
  ResidualReport rep = residuals_11(bg, {Point(11, 0.2)});
  CHECK(rep.find("potential").value < 1e-9);

  bg.G = [g4](const Point& p) {
    Form<double> v = evaluate_form(g4, p);
    v.add({0, 1, 2, 3}, 0.5);  // deliberate mismatch
    return v;
  };
  ResidualReport bad = residuals_11(bg, {Point(11, 0.2)});
  CHECK(bad.find("potential").value > 0.4);
}

TEST_CASE("trace reversal is invertible, so the two Einstein forms are equivalent") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Metric<double> eta = Metric<double>::minkowski(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat<double> s(11, 11);
    for (int i = 0; i < 11; ++i)
      for (int j = i; j < 11; ++j) s(i, j) = s(j, i) = u(rng);
    double tr = 0;
    for (int i = 0; i < 11; ++i)
      for (int j = 0; j < 11; ++j) tr += eta.inverse(i, j) * s(i, j);
    Mat<double> e = s - 0.5 * tr * eta.components;
    double tre = 0;
    for (int i = 0; i < 11; ++i)
      for (int j = 0; j < 11; ++j) tre += eta.inverse(i, j) * e(i, j);
    Mat<double> back = e - (1.0 / 9) * tre * eta.components;
    CHECK((back - s).max_abs() < 1e-12);
  }
}

TEST_CASE("scalar equation obeys the triangle bound from the Einstein residuals") {
  Background11 bg = freund_rubin_background(1.3);
  Point p(11, 0.0);
  PointResiduals11 r = point_residuals_11(bg, p);
  CHECK(std::abs(r.scalar) <= 11 * r.einstein.max_abs() + 1e-12);
}

TEST_CASE("anomaly term on a flat background leaves the flux equation unchanged") {
  Background11 bg;
  bg.frame = flat11();
  bg.beta = 3.7;
  std::mt19937 rng(99);
  PolyForm g4 = random_poly4(rng);
  bg.G = field_of(g4);
  std::vector<Point> pts = {Point(11, 0.1)};

  Options11 plain, corrected;
  corrected.anomaly = true;
  PointResiduals11 a = point_residuals_11(bg, pts[0], plain);
  PointResiduals11 b = point_residuals_11(bg, pts[0], corrected);
  CHECK((a.maxwell - b.maxwell).max_abs() < 1e-12);

  ResidualReport rep = x8_check(bg, pts);
  CHECK(rep.find("x8_value").value < 1e-12);
  CHECK(rep.find("x8_frame_invariance").value < 1e-12);
}

TEST_CASE("curvature 8-form is invariant under a change of frame") {
  // non-flat metric with nontrivial curvature 2-forms
  Background11 bg;
  bg.frame.patch.dim = 11;
  bg.frame.patch.step = 1e-3;
  bg.frame.patch.metric = [](const Point& p) {
    Mat<double> g(11, 11);
    g(0, 0) = -1 - 0.1 * std::sin(p[1]);
    for (int i = 1; i < 11; ++i) g(i, i) = 1 + 0.05 * std::cos(p[(i + 1) % 11] + i);
    g(2, 3) = g(3, 2) = 0.02 * std::sin(p[4]);
    return g;
  };
  bg.G = [](const Point&) { return Form<double>(11, 4); };
  Point p(11, 0.2);
  ResidualReport rep = x8_check(bg, {p});
  CHECK(rep.find("x8_frame_invariance").value < 1e-12);
}

TEST_CASE("dimension mismatch is rejected") {
  Background11 bg;
  bg.frame.patch.dim = 9;
  bg.frame.patch.metric = [](const Point&) { return Mat<double>::identity(9); };
  bg.G = [](const Point&) { return Form<double>(9, 4); };
  CHECK_THROWS_AS(point_residuals_11(bg, Point(9, 0.0)), std::invalid_argument);
}
