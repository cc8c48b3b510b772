#include "suites.hpp"

#include "sugra/eomiib.hpp"
#include "sugra/killing.hpp"
#include "sugra/reduction.hpp"
#include "sugra/variation.hpp"

#include <cstdio>
#include <map>
#include <random>

using namespace sugra;

namespace {

/// Pass/total counters keyed by identity name, printed in insertion order.
class Tally {
 public:
  void record(const std::string& name, bool ok) {
    for (auto& [n, pass, total] : rows_)
      if (n == name) {
        pass += ok ? 1 : 0;
        ++total;
        return;
      }
    rows_.emplace_back(name, ok ? 1 : 0, 1);
  }

  int print() const {
    int failures = 0;
    for (const auto& [n, pass, total] : rows_) {
      std::printf("  %-28s %d/%d\n", n.c_str(), pass, total);
      failures += total - pass;
    }
    return failures;
  }

 private:
  std::vector<std::tuple<std::string, int, int>> rows_;
};

Rat rnd_rat(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return Rat(num(rng), den(rng));
}

Form<Rat> rand_form(std::mt19937& rng, int dim, int deg, int terms = 4) {
  Form<Rat> f(dim, deg);
  auto tuples = increasing_tuples(dim, deg);
  std::uniform_int_distribution<size_t> pick(0, tuples.size() - 1);
  for (int t = 0; t < terms; ++t) f.add(tuples[pick(rng)], rnd_rat(rng));
  f.prune();
  return f;
}

std::vector<Rat> rand_vector(std::mt19937& rng, int dim) {
  std::vector<Rat> v(dim);
  for (auto& c : v) c = rnd_rat(rng);
  return v;
}

// Diagonal with perfect-square entries so sqrt|det g| stays rational.
Metric<Rat> square_metric(int dim) {
  Mat<Rat> g(dim, dim);
  for (int i = 0; i < dim; ++i)
    g(i, i) = (i == 0 ? Rat(-1) : Rat(1)) * Rat((i + 1) * (i + 1), 4);
  return Metric<Rat>::from_components(g);
}

int suite_hodge(std::uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  Tally tally;
  for (int t = 0; t < trials; ++t) {
    int dim = (t % 2 == 0) ? 4 : 6;
    Metric<Rat> g = square_metric(dim);
    int k = 1 + t % 3;
    Form<Rat> f = rand_form(rng, dim, k), h = rand_form(rng, dim, k);
    tally.record("defining_relation",
                 wedge(f, hodge_star(h, g)) == scalar_product(f, h, g) * volume_form(g));
    int s = ((k * (dim - k)) % 2 == 0 ? 1 : -1) * -1;
    Metric<Rat> eta = Metric<Rat>::minkowski(dim);
    tally.record("double_star", hodge_star(hodge_star(f, eta), eta) == Rat(s) * f);

    Rat total(0);
    for (int m = 0; m < dim; ++m) {
      std::vector<Rat> em(dim, Rat(0));
      em[m] = Rat(1);
      total += g.inverse(m, m) * scalar_product(interior(em, f), interior(em, f), g);
    }
    tally.record("interior_trace", total == Rat(k) * scalar_product(f, f, g));

    IndexTuple rest;
    for (int i = 1; i < dim; ++i) rest.push_back(i);
    tally.record("frame_convention",
                 hodge_star(Form<Rat>::basis(dim, {0}), eta) ==
                     Rat(-1) * Form<Rat>::basis(dim, rest));
  }
  return tally.print();
}

int suite_clifford(std::uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  Tally tally;
  const int dims[3] = {4, 10, 11};
  std::vector<GammaRep> reps;
  for (int d : dims) reps.push_back(build_gamma_rep(d));
  for (int t = 0; t < trials; ++t) {
    const GammaRep& rep = reps[t % 3];
    int d = rep.d;
    Metric<Rat> eta = Metric<Rat>::minkowski(d);
    int k = 1 + t % std::min(4, d - 1);
    Form<Rat> f = rand_form(rng, d, k);
    Form<Rat> alpha = rand_form(rng, d, 1, 2);
    CMat lhs = clifford_action(wedge(alpha, f), rep);
    CMat rhs = clifford_action(alpha, rep) * clifford_action(f, rep) -
               clifford_action(interior(sharp(alpha, eta), f), rep);
    tally.record("wedge_expansion", lhs == rhs);

    auto x = rand_vector(rng, d);
    CMat cx = clifford_action(flat(x, eta), rep);
    CMat cf = clifford_action(f, rep);
    CMat lhs2 = cx * cf + CxRat(Rat(k % 2 == 0 ? -1 : 1)) * cf * cx;
    tally.record("contraction_commutator",
                 lhs2 == CxRat(Rat(2)) * clifford_action(interior(x, f), rep));

    if (d % 2 == 0) {
      CMat ch = chirality_operator(rep);
      bool ok = ch * ch == CMat::identity(rep.spinor_dim);
      for (int a = 0; a < d && ok; ++a)
        ok = (ch * rep.gammas[a] + rep.gammas[a] * ch).max_abs() == 0.0;
      tally.record("chirality", ok);
    } else {
      CMat prod = CMat::identity(rep.spinor_dim);
      for (const CMat& g : rep.gammas) prod = prod * g;
      tally.record("central_product", prod == CMat::identity(rep.spinor_dim));
    }
  }
  return tally.print();
}

int suite_variation(std::uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  Tally tally;
  auto rand_poly = [&](int nvars) {
    std::uniform_int_distribution<int> c(-3, 3), v(0, nvars - 1);
    PolyRat p(c(rng));
    for (int t = 0; t < 2; ++t)
      p += PolyRat(c(rng)) * PolyRat::variable(v(rng)) * PolyRat::variable(v(rng));
    return p;
  };
  auto rand_polyform = [&](int dim, int deg, int terms) {
    PolyForm f(dim, deg);
    auto tuples = increasing_tuples(dim, deg);
    std::uniform_int_distribution<size_t> pick(0, tuples.size() - 1);
    for (int t = 0; t < terms; ++t) f.add(tuples[pick(rng)], rand_poly(dim));
    f.prune();
    return f;
  };
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < trials; ++t) {
    int dim = (t % 3 == 0) ? 4 : (t % 3 == 1 ? 10 : 11);
    int k = 1 + t % 3;
    Metric<Rat> g = Metric<Rat>::minkowski(dim);
    auto rep = form_variation_check(rand_polyform(dim, k, 3), rand_polyform(dim, k, 3), g);
    tally.record("form_variation", rep.exact_match);

    Mat<double> gm(4, 4);
    for (int i = 0; i < 4; ++i) gm(i, i) = (i == 0 ? -1.0 : 1.0) * (1.0 + 0.2 * i);
    gm(1, 2) = gm(2, 1) = 0.05;
    Metric<double> gd = Metric<double>::from_components(gm);
    Form<double> fd(4, 2);
    auto tuples = increasing_tuples(4, 2);
    std::uniform_int_distribution<size_t> pick(0, tuples.size() - 1);
    for (int j = 0; j < 3; ++j) fd.add(tuples[pick(rng)], u(rng));
    fd.prune();
    std::uniform_int_distribution<int> idx(0, 3);
    auto mrep = metric_variation_check(fd, gd, idx(rng), idx(rng));
    tally.record("metric_bracket", mrep.rel_err < 1e-6);
  }
  return tally.print();
}

int suite_killing_equivalence(std::uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  Tally tally;
  GammaRep rep11 = build_gamma_rep(11);
  GammaRep rep10 = build_gamma_rep(10);
  int n = rep10.spinor_dim;
  for (int t = 0; t < trials; ++t) {
    Form<Rat> g = rand_form(rng, 11, 4, 5);
    auto x = rand_vector(rng, 11);
    CMat a = gravitino11_wedge_form(rep11, g, x);
    CMat b = gravitino11_contraction_form(rep11, g, x);
    CMat c = gravitino11_symmetric_form(rep11, g, x);
    tally.record("gravitino_shapes", a == b && b == c);

    IIBKillingData f;
    f.ephi = Rat(1, 2) + rnd_rat(rng) * rnd_rat(rng);
    if (f.ephi == 0) f.ephi = 1;
    f.dphi = rand_form(rng, 10, 1, 2);
    f.H3 = rand_form(rng, 10, 3, 3);
    f.G1 = rand_form(rng, 10, 1, 2);
    f.G3t = rand_form(rng, 10, 3, 3);
    f.G5t = rand_form(rng, 10, 5, 3);
    auto y = rand_vector(rng, 10);
    Spinor e1(n, 1), e2(n, 1);
    std::uniform_int_distribution<int> ci(-3, 3);
    for (int r = 0; r < n; ++r) {
      e1(r, 0) = CxRat(Rat(ci(rng)), Rat(ci(rng)));
      e2(r, 0) = CxRat(Rat(ci(rng)), Rat(ci(rng)));
    }
    Spinor stacked = Spinor::vstack({e1, e2});
    bool ok = true;
    for (bool grav : {true, false}) {
      Spinor dout =
          (grav ? iib_gravitino_doublet(rep10, f, y) : iib_dilatino_doublet(rep10, f))
              .algebraic *
          stacked;
      Spinor d1(n, 1), d2(n, 1);
      for (int r = 0; r < n; ++r) {
        d1(r, 0) = dout(r, 0);
        d2(r, 0) = dout(n + r, 0);
      }
      Spinor cout = grav ? iib_gravitino_complex(rep10, f, y, e1, e2)
                         : iib_dilatino_complex(rep10, f, e1, e2);
      ok = ok && (cout - (d2 + cxrat_i() * d1)).max_abs() == 0.0;
    }
    tally.record("iib_complex_vs_doublet", ok);
  }
  return tally.print();
}

int suite_reduction(std::uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  Tally tally;
  GammaRep rep = build_gamma_rep(10);
  std::uniform_int_distribution<int> pick(0, 9), upick(0, 3), num(-2, 2), den(1, 3);
  auto small = [&] { return Rat(num(rng), den(rng)); };
  for (int t = 0; t < trials; ++t) {
    PolyForm c3(11, 3), b2(11, 2);
    auto t3 = increasing_tuples(10, 3), t2 = increasing_tuples(10, 2);
    std::shuffle(t3.begin(), t3.end(), rng);
    std::shuffle(t2.begin(), t2.end(), rng);
    std::uniform_int_distribution<int> var(0, 9);
    for (int i = 0; i < 4; ++i) {
      c3.set(t3[i], PolyRat(small()) * PolyRat::variable(var(rng)) + PolyRat(small()));
      b2.set(t2[i], PolyRat(small()) * PolyRat::variable(var(rng)) + PolyRat(small()));
    }
    tally.record("chern_simons", chern_simons_reduction_check(c3, b2).all_pass());

    KillingReductionConfig cfg;
    const Rat us[4] = {Rat(1), Rat(1, 2), Rat(3, 2), Rat(2)};
    cfg.u = us[upick(rng)];
    cfg.flip_c1_sign = (t % 2 == 1);
    for (int i = 0; i < 3; ++i) cfg.dphi[pick(rng)] = small();
    for (int i = 0; i < 6; ++i) cfg.omegaN[pick(rng)](pick(rng), pick(rng)) = small();
    auto sprinkle = [&](Form<Rat>& f, int deg, int terms) {
      auto tuples = increasing_tuples(10, deg);
      std::shuffle(tuples.begin(), tuples.end(), rng);
      for (int i = 0; i < terms; ++i) f.set(tuples[i], small());
    };
    sprinkle(cfg.H3, 3, 3);
    sprinkle(cfg.G2, 2, 3);
    sprinkle(cfg.G4t, 4, 4);
    tally.record("spinor_dictionary", killing_reduction_identities(rep, cfg).all_pass());
  }
  return tally.print();
}

int suite_sl2(std::uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  Tally tally;

  BackgroundIIB bg;
  bg.frame.patch.dim = 10;
  bg.frame.patch.metric = [](const Point&) {
    Mat<double> g(10, 10);
    g(0, 0) = -1;
    for (int i = 1; i < 10; ++i) g(i, i) = 1;
    return g;
  };
  bg.frame_tag = Frame::einstein_frame;
  bg.phi = [](const Point& p) { return 0.15 * p[1] + 0.1 * std::cos(p[4]); };
  bg.C0 = [](const Point& p) { return 0.3 * p[0] + 0.2 * std::sin(p[2]); };
  ScalarFn c0 = bg.C0;
  bg.G1 = [c0](const Point& q) { return one_form_d(c0, 10, q, 1e-4); };
  bg.H3 = [](const Point& p) {
    Form<double> f(10, 3);
    f.add({1, 2, 3}, 0.6 + 0.1 * p[0]);
    f.add({0, 4, 7}, -0.3 + 0.2 * std::sin(p[5]));
    return f;
  };
  bg.G3t = [](const Point& p) {
    Form<double> f(10, 3);
    f.add({2, 5, 8}, 0.5 * std::cos(p[1]));
    f.add({1, 4, 6}, -0.4 + 0.1 * p[3]);
    return f;
  };
  bg.G5t = [](const Point&) {
    Form<double> f(10, 5);
    f.add({0, 1, 2, 3, 4}, 0.35);
    f.add({5, 6, 7, 8, 9}, 0.35);
    return f;
  };
  SymmetricFieldsIIB sf = symmetric_fields(bg);
  Point p = {0.2, -0.1, 0.3, 0.1, 0.0, 0.2, -0.3, 0.1, 0.2, -0.1};
  SL2Invariants before = sl2_invariants(sf, bg.frame.patch, p);

  std::uniform_int_distribution<int> shear(-3, 3);
  auto rand_sl2 = [&] {
    // product of integer shears: exact determinant 1
    Mat<Rat> l = Mat<Rat>::identity(2);
    for (int s = 0; s < 3; ++s) {
      Mat<Rat> m = Mat<Rat>::identity(2);
      if (s % 2 == 0) m(0, 1) = Rat(shear(rng), 2);
      else m(1, 0) = Rat(shear(rng), 2);
      l = l * m;
    }
    return l;
  };

  for (int t = 0; t < trials; ++t) {
    Mat<Rat> l1 = rand_sl2(), l2 = rand_sl2();
    CxRat tau(rnd_rat(rng), Rat(1) + rnd_rat(rng) * rnd_rat(rng));
    if (!(tau.im > 0)) tau = CxRat(tau.re, Rat(1));
    tally.record("mobius_group_law",
                 mobius(l2, mobius(l1, tau)) == mobius(l2 * l1, tau));
    CxRat tp = mobius(l1, tau);
    tally.record("upper_half_plane", tp.im > 0);
    tally.record("group_determinant",
                 l1(0, 0) * l1(1, 1) - l1(0, 1) * l1(1, 0) == Rat(1));

    Mat<double> lf(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) lf(i, k) = to_double(l1(i, k));
    SymmetricFieldsIIB trans = sl2_transform(sf, lf);
    SL2Invariants after = sl2_invariants(trans, bg.frame.patch, p);
    bool inv = std::abs(after.tau_kinetic - before.tau_kinetic) <
                   1e-7 * std::max(1.0, std::abs(before.tau_kinetic)) &&
               std::abs(after.f3_kinetic - before.f3_kinetic) < 1e-10 &&
               std::abs(after.g5_kinetic - before.g5_kinetic) < 1e-12;
    tally.record("lagrangian_invariance", inv);
  }
  return tally.print();
}

}  // namespace

int run_identity_suite(const std::string& name, std::uint32_t seed, int trials) {
  static const std::map<std::string, int (*)(std::uint32_t, int)> suites = {
      {"hodge", suite_hodge},
      {"clifford", suite_clifford},
      {"variation", suite_variation},
      {"killing-equivalence", suite_killing_equivalence},
      {"reduction", suite_reduction},
      {"sl2", suite_sl2},
  };
  auto it = suites.find(name);
  if (it == suites.end()) return -1;
  std::printf("suite %s (seed %u, trials %d)\n", name.c_str(), seed, trials);
  return it->second(seed, trials);
}
