#include "doctest.h"
#include "sugra/variation.hpp"

#include <random>

using namespace sugra;

namespace {

Metric<double> rand_metric(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Mat<double> g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) g(i, j) = g(j, i) = u(rng);
  for (int i = 0; i < dim; ++i) g(i, i) = (i == 0 ? -1.0 : 1.0) * (1.0 + 0.3 * i);
  return Metric<double>::from_components(g);
}

Form<double> rand_form(std::mt19937& rng, int dim, int deg, int terms) {
  std::uniform_real_distribution<double> u(-1, 1);
  Form<double> f(dim, deg);
  auto tuples = increasing_tuples(dim, deg);
  std::uniform_int_distribution<size_t> pick(0, tuples.size() - 1);
  for (int t = 0; t < terms; ++t) f.add(tuples[pick(rng)], u(rng));
  f.prune();
  return f;
}

PolyRat rand_poly(std::mt19937& rng, int nvars) {
  std::uniform_int_distribution<int> c(-3, 3), v(0, nvars - 1);
  PolyRat p(c(rng));
  for (int t = 0; t < 2; ++t)
    p += PolyRat(c(rng)) * PolyRat::variable(v(rng)) * PolyRat::variable(v(rng));
  return p;
}

PolyForm rand_polyform(std::mt19937& rng, int dim, int deg, int terms) {
  PolyForm f(dim, deg);
  auto tuples = increasing_tuples(dim, deg);
  std::uniform_int_distribution<size_t> pick(0, tuples.size() - 1);
  for (int t = 0; t < terms; ++t) f.add(tuples[pick(rng)], rand_poly(rng, dim));
  f.prune();
  return f;
}

}  // namespace

TEST_CASE("volume variation: d(dvol)/dg^{mu nu} = -1/2 g_{mu nu} dvol") {
  std::mt19937 rng(51);
  Metric<double> g = rand_metric(rng, 4);
  double vol = std::sqrt(g.det_abs);
  for (auto [mu, nu] : std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {3, 3}}) {
    double h = 1e-6;
    auto vol_of = [&](double eps) {
      Mat<double> gi = g.inverse;
      gi(mu, nu) += eps;
      return std::sqrt(std::abs(gi.inverse().determinant()));
    };
    double fd = (vol_of(h) - vol_of(-h)) / (2 * h);
    CHECK(fd == doctest::Approx(-0.5 * g.components(mu, nu) * vol).epsilon(1e-5));
  }
}

TEST_CASE("zero form field: variation identically zero") {
  std::mt19937 rng(52);
  Metric<double> g = rand_metric(rng, 5);
  Form<double> zero(5, 2);
  auto rep = metric_variation_check(zero, g, 1, 3);
  CHECK(rep.fd == doctest::Approx(0).epsilon(1e-12));
  CHECK(rep.formula == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("Minkowski two-form variation at entry (0,0)") {
  Metric<double> g = Metric<double>::minkowski(4);
  Form<double> f(4, 2);
  f.add({0, 1}, 1.0);
  auto rep = metric_variation_check(f, g, 0, 0);
  CHECK(rep.rel_err < 1e-6);
  // <i_0 G, i_0 G> = g^{11} (G_{01})^2 = 1; |G|^2 = g^{00}g^{11} = -1.
  CHECK(rep.formula == doctest::Approx(1.0 - 0.5 * (-1.0) * (-1.0)).epsilon(1e-12));
}

TEST_CASE("random 4-form in dim 11: five random entries match the bracket") {
  std::mt19937 rng(53);
  Metric<double> g = rand_metric(rng, 11);
  Form<double> f = rand_form(rng, 11, 4, 8);
  std::uniform_int_distribution<int> pick(0, 10);
  for (int t = 0; t < 5; ++t) {
    int mu = pick(rng), nu = pick(rng);
    auto rep = metric_variation_check(f, g, mu, nu);
    CHECK(rep.rel_err < 1e-6);
    CHECK_FALSE(rep.step_warning);
    CHECK(rep.richardson_order > 1.5);
  }
}

TEST_CASE("oversized step trips the Richardson warning") {
  std::mt19937 rng(54);
  Metric<double> g = rand_metric(rng, 4);
  Form<double> f = rand_form(rng, 4, 2, 4);
  // Step comparable to g^{00} itself takes the stencil near a degenerate
  // metric, where the Richardson levels stop agreeing.
  auto rep = metric_variation_check(f, g, 0, 0, 0.9);
  CHECK(rep.step_warning);
}

TEST_CASE("form variation identity: exact for k in {1,2,3}, dims {4,10,11}") {
  std::mt19937 rng(55);
  for (int dim : {4, 10, 11}) {
    Metric<Rat> g = Metric<Rat>::minkowski(dim);
    for (int k : {1, 2, 3}) {
      PolyForm c = rand_polyform(rng, dim, k, 3);
      PolyForm dc = rand_polyform(rng, dim, k, 3);
      auto rep = form_variation_check(c, dc, g);
      CHECK(rep.exact_match);
      if (dim == 4 && k == 1) {
        // Maxwell: both sides are genuine top forms unless everything cancels.
        CHECK(rep.lhs.degree() == 4);
      }
    }
  }
}

TEST_CASE("form variation with deltaC = 0 vanishes on both sides") {
  std::mt19937 rng(56);
  Metric<Rat> g = Metric<Rat>::minkowski(4);
  PolyForm c = rand_polyform(rng, 4, 2, 3);
  auto rep = form_variation_check(c, PolyForm(4, 2), g);
  CHECK(rep.exact_match);
  CHECK(rep.lhs.is_zero());
  CHECK(rep.rhs.is_zero());
}
