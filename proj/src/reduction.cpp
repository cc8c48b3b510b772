#include "sugra/reduction.hpp"

#include <cmath>

namespace sugra {

namespace {

Form<double> lift_form(const Form<double>& f) {
  Form<double> r(11, f.degree());
  for (const auto& [idx, c] : f.coeffs()) r.add(idx, c);
  return r;
}

Form<double> angle_coframe() { return Form<double>::basis(11, {10}); }

Form<double> field_or_zero(const FormField& f, const Point& q, int deg) {
  return f ? f(q) : Form<double>(10, deg);
}

// f(e_{i_1}, ..., e_{i_k}) for frame vectors given as matrix columns
double comp_on(const Form<double>& f, const Mat<double>& vecs, const IndexTuple& idx) {
  Form<double> cur = f;
  for (int i : idx) cur = interior(column(vecs, i), cur);
  return cur.coeff({});
}

double form2_coord(const Form<double>& f, int mu, int nu) {
  if (mu == nu) return 0;
  return mu < nu ? f.coeff({mu, nu}) : -f.coeff({nu, mu});
}

// Connection coefficients of g_M in the lifted orthonormal frame, direction
// index first, assembled from the base data; the table is completed by
// antisymmetry in the last two slots.
Tensor3 predicted_omega(const Tensor3& omegaN, const std::vector<double>& dphi,
                        const Mat<double>& g2f, const std::vector<int>& etaN,
                        double phi) {
  double e13 = std::exp(phi / 3), e43 = std::exp(4 * phi / 3);
  Tensor3 out(11);
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) {
        double eta_ac = (a == c) ? etaN[a] : 0.0;
        double eta_ab = (a == b) ? etaN[a] : 0.0;
        out(a, b, c) = e13 * omegaN(a, b, c) -
                       (e13 / 3) * (dphi[b] * eta_ac - dphi[c] * eta_ab);
      }
    for (int c = 0; c < 10; ++c) {
      out(a, 10, c) = -0.5 * e43 * g2f(a, c);
      out(a, c, 10) = 0.5 * e43 * g2f(a, c);
    }
  }
  for (int b = 0; b < 10; ++b)
    for (int c = 0; c < 10; ++c) out(10, b, c) = -0.5 * e43 * g2f(b, c);
  for (int c = 0; c < 10; ++c) {
    out(10, 10, c) = -(2.0 / 3) * e13 * dphi[c];
    out(10, c, 10) = (2.0 / 3) * e13 * dphi[c];
  }
  return out;
}

}  // namespace

Form<double> ReductionData::signed_c1(const Point& q) const {
  Form<double> c1 = field_or_zero(base.C1, q, 1);
  return c1_sign() * c1;
}

Form<double> ReductionData::twisted_g4(const Point& q) const {
  Form<double> g4t = field_or_zero(base.G4t, q, 4);
  // G4 - s C1 ^ H3 = G4t + (1 - s) C1 ^ H3
  if (!opt.flip_c1_sign || !base.C1 || !base.H3) return g4t;
  return g4t + 2.0 * wedge(base.C1(q), base.H3(q));
}

Mat<double> ReductionData::lifted_frame(const Point& p) const {
  Point q = base_point(p);
  auto fr = base.frame.frame_at(q);
  double ph = base.phi(q);
  double e13 = std::exp(ph / 3), em23 = std::exp(-2 * ph / 3);
  Form<double> c1 = signed_c1(q);
  Mat<double> e(11, 11);
  for (int a = 0; a < 10; ++a) {
    double c1a = 0;
    for (int mu = 0; mu < 10; ++mu) {
      e(mu, a) = e13 * fr.vectors(mu, a);
      c1a += c1.coeff({mu}) * fr.vectors(mu, a);
    }
    e(10, a) = e13 * c1a;
  }
  e(10, 10) = em23;
  return e;
}

std::vector<int> ReductionData::lifted_eta(const Point& p) const {
  std::vector<int> eta = base.frame.frame_at(base_point(p)).eta;
  eta.push_back(1);
  return eta;
}

ReductionData build_gm(const BackgroundIIA& base, const ReductionOptions& opt) {
  if (base.frame_tag != Frame::string_frame)
    throw std::invalid_argument("build_gm: base must be in the string frame");
  ReductionData rd;
  rd.base = base;
  rd.opt = opt;
  rd.kappa11 = base.kappa10 * std::sqrt(opt.fiber_length);

  double s = rd.c1_sign();
  MetricFn gN = base.frame.patch.metric;
  ScalarFn phi = base.phi;
  FormField c1f = base.C1;

  Patch lifted;
  lifted.dim = 11;
  lifted.step = base.frame.patch.step;
  lifted.orientation = base.frame.patch.orientation;
  lifted.metric = [gN, phi, c1f, s](const Point& p) {
    Point q(p.begin(), p.begin() + 10);
    Mat<double> g10 = gN(q);
    double ph = phi(q);
    std::vector<double> c1(10, 0.0);
    if (c1f) {
      Form<double> c = c1f(q);
      for (int mu = 0; mu < 10; ++mu) c1[mu] = s * c.coeff({mu});
    }
    double em = std::exp(-2 * ph / 3), ep = std::exp(4 * ph / 3);
    Mat<double> g(11, 11);
    for (int mu = 0; mu < 10; ++mu) {
      for (int nu = 0; nu < 10; ++nu) g(mu, nu) = em * g10(mu, nu) + ep * c1[mu] * c1[nu];
      g(mu, 10) = g(10, mu) = -ep * c1[mu];
    }
    g(10, 10) = ep;
    return g;
  };
  rd.lifted.patch = lifted;

  BackgroundIIA b = base;
  rd.C = [b](const Point& p) {
    Point q(p.begin(), p.begin() + 10);
    Form<double> c3 = field_or_zero(b.C3, q, 3);
    Form<double> b2 = field_or_zero(b.B2, q, 2);
    return lift_form(c3) + wedge(lift_form(b2), angle_coframe());
  };
  rd.G = [b](const Point& p) {
    Point q(p.begin(), p.begin() + 10);
    Form<double> g4 = field_or_zero(b.G4t, q, 4);
    Form<double> h3 = field_or_zero(b.H3, q, 3);
    if (b.C1) g4 = g4 + wedge(b.C1(q), h3);  // untwist: G4 = G4t + C1 ^ H3
    return lift_form(g4) + wedge(lift_form(h3), angle_coframe());
  };
  return rd;
}

ResidualReport connection_reduction_check(const ReductionData& rd,
                                          const std::vector<Point>& points,
                                          const ResidualOptions& ropt) {
  ResidualReport rep;
  auto put = [&](const std::string& name, double v) {
    if (rep.has(name)) rep.update(name, v);
    else rep.add(name, v, ropt.tolerance(name));
  };
  const FramePatch& fpN = rd.base.frame;
  double h = fpN.patch.step;
  double s = rd.c1_sign();
  const std::vector<std::pair<int, int>> pairs = {{0, 1}, {2, 3}, {4, 5}, {1, 6}, {3, 8}};

  for (const Point& p : points) {
    Point q = rd.base_point(p);
    auto frN = fpN.frame_at(q);
    Tensor3 omN = fpN.frame_connection(q);
    double ph = rd.base.phi(q);
    double e13 = std::exp(ph / 3), e43 = std::exp(4 * ph / 3);
    Form<double> dphi = one_form_d(rd.base.phi, 10, q, h);
    std::vector<double> dpf(10);
    for (int a = 0; a < 10; ++a) dpf[a] = comp_on(dphi, frN.vectors, {a});
    Form<double> g2 = field_or_zero(rd.base.G2, q, 2);
    Mat<double> g2f(10, 10);
    for (int a = 0; a < 10; ++a)
      for (int b = a + 1; b < 10; ++b) {
        g2f(a, b) = s * comp_on(g2, frN.vectors, {a, b});
        g2f(b, a) = -g2f(a, b);
      }
    Tensor3 pred = predicted_omega(omN, dpf, g2f, frN.eta, ph);
    Tensor3 num = koszul_frame_connection(
        rd.lifted.patch, [&rd](const Point& x) { return rd.lifted_frame(x); }, p);

    double fiber_dil = 0, fiber_flux = 0, horiz = 0, full = 0, aten = 0;
    for (int a = 0; a < 11; ++a)
      for (int b = 0; b < 11; ++b)
        for (int c = 0; c < 11; ++c)
          full = std::max(full, std::abs(num(a, b, c) - pred(a, b, c)));
    for (int c = 0; c < 10; ++c)
      fiber_dil = std::max(fiber_dil,
                           std::abs(num(10, 10, c) + (2.0 / 3) * e13 * dpf[c]));
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) {
        fiber_flux = std::max(fiber_flux, std::abs(num(10, b, c) + 0.5 * e43 * g2f(b, c)));
        fiber_flux = std::max(fiber_flux, std::abs(num(b, 10, c) + 0.5 * e43 * g2f(b, c)));
        aten = std::max(aten, std::abs(num(b, c, 10) - 0.5 * e43 * g2f(b, c)));
        aten = std::max(aten, std::abs(num(b, 10, c) + 0.5 * e43 * g2f(b, c)));
      }
    for (int a = 0; a < 10; ++a)
      for (int b = 0; b < 10; ++b)
        for (int c = 0; c < 10; ++c)
          horiz = std::max(horiz, std::abs(num(a, b, c) - pred(a, b, c)));
    put("fiber_dilaton_coefficient", fiber_dil);
    put("fiber_flux_coefficient", fiber_flux);
    put("horizontal_coefficient", horiz);
    put("a_tensor", aten);
    put("full_table", full);

    // [X^H, Y^H] for coordinate lifts: only the angle component varies, and
    // the angle direction is vertical
    double comm = 0;
    if (rd.base.C1) {
      for (auto [mu, nu] : pairs) {
        ScalarFn cmu = [&](const Point& x) { return s * rd.base.C1(x).coeff({mu}); };
        ScalarFn cnu = [&](const Point& x) { return s * rd.base.C1(x).coeff({nu}); };
        double v = central_diff_scalar(cnu, q, mu, h) - central_diff_scalar(cmu, q, nu, h);
        comm = std::max(comm, std::abs(v - s * form2_coord(g2, mu, nu)));
      }
    }
    put("vertical_commutator", comm);

    // lifted frame is constant along the fiber, so [X^H, S] = 0
    double fib = 0;
    Mat<double> dfiber = central_diff<Mat<double>>(
        [&rd](const Point& x) { return rd.lifted_frame(x); }, p, 10, h);
    fib = dfiber.max_abs();
    put("fiber_commutator", fib);

    // geodesic curvature of the fiber: nabla_S S = -2/3 e^{2phi} lift(sharp(dphi))
    Tensor3 chr = christoffel(rd.lifted.patch, p);
    Mat<double> gNi = fpN.patch.metric(q).inverse();
    std::vector<double> sharp(10, 0.0);
    for (int mu = 0; mu < 10; ++mu)
      for (int nu = 0; nu < 10; ++nu) sharp[mu] += gNi(mu, nu) * dphi.coeff({nu});
    Form<double> c1 = rd.signed_c1(q);
    double c1_of_sharp = 0;
    for (int mu = 0; mu < 10; ++mu) c1_of_sharp += c1.coeff({mu}) * sharp[mu];
    double geo = 0;
    double e2p = std::exp(2 * ph);
    for (int mu = 0; mu < 10; ++mu)
      geo = std::max(geo, std::abs(chr(mu, 10, 10) + (2.0 / 3) * e2p * sharp[mu]));
    geo = std::max(geo, std::abs(chr(10, 10, 10) + (2.0 / 3) * e2p * c1_of_sharp));
    put("vertical_geodesic", geo);

    // nabla^M along horizontal lifts against the conformal base connection
    Patch conf = fpN.patch;
    ScalarFn phiN = rd.base.phi;
    MetricFn gNf = fpN.patch.metric;
    conf.metric = [gNf, phiN](const Point& x) {
      return std::exp(-2 * phiN(x) / 3) * gNf(x);
    };
    Tensor3 chrC = christoffel(conf, q);
    double kerr = 0;
    for (auto [mu, nu] : pairs) {
      std::vector<double> target(11, 0.0);
      for (int lam = 0; lam < 10; ++lam) target[lam] = chrC(lam, mu, nu);
      // horizontal lift of nabla^{N phi}: angle component is s C1 of the base part
      double c1_of = 0;
      for (int lam = 0; lam < 10; ++lam) c1_of += c1.coeff({lam}) * target[lam];
      target[10] = c1_of + 0.5 * s * form2_coord(g2, mu, nu);
      // numeric covariant derivative of the lifted field Y^H along X^H
      std::vector<double> x(11, 0.0), y(11, 0.0);
      x[mu] = 1;
      x[10] = c1.coeff({mu});
      y[nu] = 1;
      y[10] = c1.coeff({nu});
      ScalarFn ynu_angle = [&](const Point& b10) { return s * rd.base.C1(b10).coeff({nu}); };
      for (int lam = 0; lam < 11; ++lam) {
        double v = 0;
        if (lam == 10 && rd.base.C1) v += central_diff_scalar(ynu_angle, q, mu, h);
        for (int al = 0; al < 11; ++al)
          for (int be = 0; be < 11; ++be) v += chr(lam, al, be) * x[al] * y[be];
        kerr = std::max(kerr, std::abs(v - target[lam]));
      }
    }
    put("horizontal_koszul", kerr);

    // pi_N as a Riemannian submersion onto (N, e^{-2phi/3} g_N)
    Mat<double> gm = rd.lifted.patch.metric(p);
    Mat<double> g10 = fpN.patch.metric(q);
    double iso = 0;
    for (auto [mu, nu] : pairs) {
      std::vector<double> x(11, 0.0), y(11, 0.0);
      x[mu] = 1;
      x[10] = c1.coeff({mu});
      y[nu] = 1;
      y[10] = c1.coeff({nu});
      double v = bilinear(gm, x, y);
      iso = std::max(iso, std::abs(v - std::exp(-2 * ph / 3) * g10(mu, nu)));
    }
    put("submersion_isometry", iso);

    // orthonormality of the lifted frame
    Mat<double> e = rd.lifted_frame(p);
    std::vector<int> eta = rd.lifted_eta(p);
    double ortho = 0;
    for (int a = 0; a < 11; ++a)
      for (int b = 0; b < 11; ++b) {
        double v = bilinear(gm, column(e, a), column(e, b));
        ortho = std::max(ortho, std::abs(v - (a == b ? double(eta[a]) : 0.0)));
      }
    put("lifted_frame_orthonormal", ortho);
  }
  return rep;
}

ResidualReport field_strength_reduce(const ReductionData& rd,
                                     const std::vector<Point>& points,
                                     const ResidualOptions& ropt) {
  ResidualReport rep;
  auto put = [&](const std::string& name, double v) {
    if (rep.has(name)) rep.update(name, v);
    else rep.add(name, v, ropt.tolerance(name));
  };
  for (const Point& p : points) {
    Point q = rd.base_point(p);
    auto frN = rd.base.frame.frame_at(q);
    Mat<double> e = rd.lifted_frame(p);
    double ph = rd.base.phi(q);
    double e13 = std::exp(ph / 3), e43 = std::exp(4 * ph / 3);
    Form<double> g = rd.G(p);
    Form<double> g4t = rd.twisted_g4(q);
    Form<double> h3 = field_or_zero(rd.base.H3, q, 3);

    double horiz = 0;
    for (const IndexTuple& t : increasing_tuples(10, 4))
      horiz = std::max(horiz, std::abs(comp_on(g, e, t) - e43 * comp_on(g4t, frN.vectors, t)));
    put("horizontal_components", horiz);

    double mixed = 0;
    for (IndexTuple t : increasing_tuples(10, 3)) {
      double base3 = comp_on(h3, frN.vectors, t);
      t.push_back(10);
      mixed = std::max(mixed, std::abs(comp_on(g, e, t) - e13 * base3));
    }
    put("mixed_components", mixed);

    Metric<double> gm = rd.lifted.patch.metric_at(p);
    Metric<double> gN = rd.base.frame.patch.metric_at(q);
    double n2 = scalar_product(g, g, gm);
    double pred = std::exp(8 * ph / 3) *
                  (scalar_product(g4t, g4t, gN) +
                   std::exp(-2 * ph) * scalar_product(h3, h3, gN));
    put("norm_density", n2 - pred);

    Form<double> dv = volume_form(gm);
    Form<double> dvN = volume_form(gN);
    Form<double> dv_pred =
        std::exp(-8 * ph / 3) * wedge(lift_form(dvN), angle_coframe());
    put("volume_density", (dv - dv_pred).max_abs());

    if (rd.base.C3 && rd.base.B2) {
      Form<double> dC = numeric_d(rd.C, 11, 3, p, rd.lifted.patch.step);
      put("strength_from_potential", (dC - g).max_abs());
    }
  }
  return rep;
}

ResidualReport lagrangian_reduction_check(const ReductionData& rd,
                                          const std::vector<Point>& points,
                                          const ResidualOptions& ropt) {
  ResidualReport rep;
  auto put = [&](const std::string& name, double v) {
    if (rep.has(name)) rep.update(name, v);
    else rep.add(name, v, ropt.tolerance(name));
  };
  const FramePatch& fpN = rd.base.frame;
  double h = fpN.patch.step;
  double s = rd.c1_sign();

  for (const Point& p : points) {
    Point q = rd.base_point(p);
    double ph = rd.base.phi(q);
    double e23 = std::exp(2 * ph / 3), e83 = std::exp(8 * ph / 3);
    Metric<double> gN = fpN.patch.metric_at(q);
    double rN = scalar_curvature(fpN.patch, q);
    double lap = laplacian(rd.base.phi, fpN.patch, q);
    Form<double> dphi = one_form_d(rd.base.phi, 10, q, h);
    double dp2 = scalar_product(dphi, dphi, gN);
    Form<double> g2 = field_or_zero(rd.base.G2, q, 2);
    double g2sq = scalar_product(g2, g2, gN);

    Tensor4 rm = riemann_tensor(rd.lifted.patch, p);
    Mat<double> gm = rd.lifted.patch.metric(p);
    Mat<double> gmi = gm.inverse();
    double rM = 0;
    for (int mu = 0; mu < 11; ++mu)
      for (int nu = 0; nu < 11; ++nu) {
        double ric = 0;
        for (int rho = 0; rho < 11; ++rho) ric += rm(rho, nu, rho, mu);
        rM += gmi(mu, nu) * ric;
      }

    double pred = e23 * (rN + (14.0 / 3) * lap - (16.0 / 3) * dp2) - 0.5 * e83 * g2sq;
    put("scalar_curvature", rM - pred);
    put("einstein_density",
        rM * std::exp(-8 * ph / 3) -
            (std::exp(-2 * ph) * (rN + (14.0 / 3) * lap - (16.0 / 3) * dp2) -
             0.5 * g2sq));

    // g(R(X,Y)Z,W) from the coordinate curvature tensor
    auto rz = [&](const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& z, const std::vector<double>& w) {
      double out = 0;
      for (int rho = 0; rho < 11; ++rho) {
        double v = 0;
        for (int sig = 0; sig < 11; ++sig)
          for (int mu = 0; mu < 11; ++mu)
            for (int nu = 0; nu < 11; ++nu)
              v += rm(rho, sig, mu, nu) * z[sig] * x[mu] * y[nu];
        for (int tau = 0; tau < 11; ++tau) out += gm(rho, tau) * v * w[tau];
      }
      return out;
    };

    Mat<double> e = rd.lifted_frame(p);
    std::vector<int> eta = rd.lifted_eta(p);
    double hh = 0, mixed = 0;
    for (int a = 0; a < 10; ++a) {
      mixed += eta[a] * rz(column(e, a), column(e, 10), column(e, 10), column(e, a));
      for (int b = 0; b < 10; ++b)
        hh += eta[a] * eta[b] * rz(column(e, a), column(e, b), column(e, b), column(e, a));
    }
    put("curvature_horizontal_sum",
        hh - (e23 * (rN + 6 * lap - 8 * dp2) - 1.5 * e83 * g2sq));
    put("curvature_mixed_sum",
        mixed - (e23 * ((4.0 / 3) * dp2 - (2.0 / 3) * lap) + 0.5 * e83 * g2sq));

    // horizontal block against the conformal base curvature plus the
    // submersion correction terms
    Patch conf = fpN.patch;
    ScalarFn phiN = rd.base.phi;
    MetricFn gNf = fpN.patch.metric;
    conf.metric = [gNf, phiN](const Point& x) {
      return std::exp(-2 * phiN(x) / 3) * gNf(x);
    };
    Tensor4 rmC = riemann_tensor(conf, q);
    Mat<double> gphi = conf.metric(q);
    Form<double> c1 = rd.signed_c1(q);
    auto lift = [&](int mu) {
      std::vector<double> v(11, 0.0);
      v[mu] = 1;
      v[10] = c1.coeff({mu});
      return v;
    };
    auto tpair = [&](int i, int j, int k, int l) {
      return 0.25 * std::exp(4 * ph / 3) * (s * form2_coord(g2, i, j)) *
             (s * form2_coord(g2, k, l));
    };
    const std::vector<std::array<int, 4>> quads = {
        {0, 1, 1, 0}, {0, 2, 3, 1}, {1, 3, 2, 4}, {2, 5, 4, 3}, {0, 1, 2, 3}};
    double oneill = 0;
    for (auto [i, j, k, l] : quads) {
      double lhs = rz(lift(i), lift(j), lift(k), lift(l));
      double rphi = 0;
      for (int rho = 0; rho < 10; ++rho) rphi += gphi(rho, l) * rmC(rho, k, i, j);
      double predq = rphi + 2 * tpair(i, j, k, l) - tpair(j, k, i, l) - tpair(k, i, j, l);
      oneill = std::max(oneill, std::abs(lhs - predq));
    }
    put("curvature_horizontal_block", oneill);

    put("coupling_constants",
        1.0 / (rd.base.kappa10 * rd.base.kappa10) -
            rd.opt.fiber_length / (rd.kappa11 * rd.kappa11));
  }
  return rep;
}

ResidualReport chern_simons_reduction_check(const Form<PolyRat>& c3,
                                            const Form<PolyRat>& b2) {
  if (c3.dim() != 11 || c3.degree() != 3 || b2.dim() != 11 || b2.degree() != 2)
    throw std::invalid_argument("chern_simons_reduction_check: need an 11-dim 3-form and 2-form");
  ResidualReport rep;
  Form<PolyRat> alpha = Form<PolyRat>::basis(11, {10});
  Form<PolyRat> g4 = exterior_derivative(c3);
  Form<PolyRat> h3 = exterior_derivative(b2);
  Form<PolyRat> cfield = c3 + wedge(b2, alpha);
  Form<PolyRat> g = exterior_derivative(cfield);
  rep.add("strength_decomposition", (g - (g4 + wedge(h3, alpha))).max_abs(), 0);

  Form<PolyRat> gg = wedge(g, g);
  rep.add("wedge_square",
          (gg - (wedge(g4, g4) + PolyRat(2) * wedge(wedge(g4, h3), alpha))).max_abs(), 0);

  Form<PolyRat> l9 = wedge(wedge(c3, g4), b2);
  rep.add("potential_exchange",
          (wedge(wedge(c3, g4), h3) -
           (wedge(wedge(g4, g4), b2) - exterior_derivative(l9)))
              .max_abs(),
          0);

  Form<PolyRat> lhs = wedge(cfield, gg);
  Form<PolyRat> rhs = wedge(PolyRat(3) * wedge(b2, wedge(g4, g4)) -
                                PolyRat(2) * exterior_derivative(l9),
                            alpha);
  rep.add("cubic_decomposition", (lhs - rhs).max_abs(), 0);
  return rep;
}

namespace {

Rat rpow(const Rat& u, int k) {
  Rat r(1);
  for (int i = 0; i < k; ++i) r *= u;
  return r;
}

Rat eta_r(int a) { return a == 0 ? Rat(-1) : Rat(1); }

Rat form2_exact(const Form<Rat>& f, int a, int b) {
  if (a == b) return Rat(0);
  return a < b ? f.coeff({a, b}) : -f.coeff({b, a});
}

// gam2[a][b] = Gamma^a Gamma^b for a < b, shared between the ten- and
// eleven-dimensional representations (the first ten generators coincide)
std::vector<std::vector<CMat>> pair_cache(const GammaRep& rep) {
  std::vector<std::vector<CMat>> out(rep.d, std::vector<CMat>(rep.d));
  for (int a = 0; a < rep.d; ++a)
    for (int b = a + 1; b < rep.d; ++b) out[a][b] = antisym_gamma(rep, {a, b});
  return out;
}

// -1/4 sum_{A,B} omega_{AB} Gamma^{AB} over the antisymmetrized index sum
CMat exact_spin_connection(int n, int d, const std::vector<std::vector<CMat>>& gam2,
                           const Mat<Rat>& om) {
  CMat out(n, n);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      Rat w = Rat(-1, 4) * (om(a, b) - om(b, a));
      if (w == 0) continue;
      out = out + CxRat(w) * gam2[a][b];
    }
  return out;
}

}  // namespace

ResidualReport killing_reduction_identities(const GammaRep& rep,
                                            const KillingReductionConfig& cfg) {
  if (rep.d != 10)
    throw std::invalid_argument(
        "killing_reduction_identities: need a ten-dimensional representation");
  ResidualReport out;
  int n = rep.spinor_dim;
  Rat s = cfg.flip_c1_sign ? Rat(-1) : Rat(1);
  Rat u2 = rpow(cfg.u, 2), u6 = rpow(cfg.u, 6), u8 = rpow(cfg.u, 8);
  CMat g11 = chirality_operator(rep);  // Gamma_0 ... Gamma_9 (prefactor 1 in d = 10)
  GammaRep rep11{11, n, rep.gammas, 1};
  rep11.gammas.push_back(g11);
  std::vector<std::vector<CMat>> gam2 = pair_cache(rep11);

  Form<Rat> g2s = s * cfg.G2;
  Form<Rat> dphiF(10, 1);
  for (int a = 0; a < 10; ++a)
    if (cfg.dphi[a] != 0) dphiF.add({a}, cfg.dphi[a]);

  // lifted-frame components of the four-form flux
  Form<Rat> f11(11, 4);
  for (const auto& [idx, c] : cfg.G4t.coeffs()) f11.add(idx, u8 * c);
  for (const auto& [idx, c] : cfg.H3.coeffs()) {
    IndexTuple j = idx;
    j.push_back(10);
    f11.add(j, u2 * c);
  }
  CMat clF = clifford_action(f11, rep11);
  CMat cl4 = clifford_action(cfg.G4t, rep);
  CMat cl3 = clifford_action(cfg.H3, rep);
  auto dmax = [](const CMat& m) { return m.max_abs(); };

  out.add("flux_split", dmax(clF - (CxRat(u8) * cl4 + CxRat(u2) * (cl3 * g11))), 0);
  out.add("flux_on_rotated",
          dmax(clF * g11 - (CxRat(u8) * (cl4 * g11) + CxRat(u2) * cl3)), 0);
  out.add("rotation_through_flux",
          dmax(g11 * clF - (CxRat(u8) * (cl4 * g11) - CxRat(u2) * cl3)), 0);

  // connection coefficients of the lift in the orthonormal frame
  std::vector<Mat<Rat>> om(11, Mat<Rat>(11, 11));
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) {
        Rat eta_ac = (a == c) ? eta_r(a) : Rat(0);
        Rat eta_ab = (a == b) ? eta_r(a) : Rat(0);
        om[a](b, c) = u2 * cfg.omegaN[a](b, c) -
                      Rat(1, 3) * u2 * (cfg.dphi[b] * eta_ac - cfg.dphi[c] * eta_ab);
      }
    for (int c = 0; c < 10; ++c) {
      Rat v = Rat(-1, 2) * u8 * form2_exact(g2s, a, c);
      om[a](10, c) = v;
      om[a](c, 10) = -v;
    }
  }
  for (int b = 0; b < 10; ++b)
    for (int c = 0; c < 10; ++c) om[10](b, c) = Rat(-1, 2) * u8 * form2_exact(g2s, b, c);
  for (int c = 0; c < 10; ++c) {
    om[10](10, c) = Rat(-2, 3) * u2 * cfg.dphi[c];
    om[10](c, 10) = -om[10](10, c);
  }

  CMat sc10 = exact_spin_connection(n, 11, gam2, om[10]);
  CMat pred10 = CxRat(Rat(1, 4) * u8) * clifford_action(g2s, rep) -
                CxRat(Rat(1, 3) * u2) * (clifford_action(dphiF, rep) * g11);
  out.add("fiber_spin_connection", dmax(sc10 - pred10), 0);

  IIAKillingData data;
  data.ephi = u6;
  data.dphi = dphiF;
  data.H3 = cfg.H3;
  data.G2 = g2s;
  data.G4t = cfg.G4t;
  CMat dil = iia_dilatino_operator(rep, data).algebraic;
  CMat t10 = sc10 + CxRat(Rat(1, 24)) * (CxRat(Rat(3)) * (clF * g11) - g11 * clF);
  out.add("dilatino_recovery", dmax(t10 - CxRat(u2) * dil), 0);

  Rat inv_u2 = Rat(1) / u2;
  CMat id = CMat::identity(n);
  double horiz_sc = 0, grav = 0;
  for (int a = 0; a < 10; ++a) {
    CMat scA = exact_spin_connection(n, 11, gam2, om[a]);
    CMat scNa = exact_spin_connection(n, 10, gam2, cfg.omegaN[a]);
    // displayed derivative: u^2 (scN + 1/6 dphi_b Gamma^b_a) - 1/4 u^8 (i_a G2) Gamma_11
    CMat m6(n, n);
    for (int b = 0; b < 10; ++b) {
      if (b == a || cfg.dphi[b] == 0) continue;
      CMat gba = b < a ? gam2[b][a] : CxRat(Rat(-1)) * gam2[a][b];
      m6 = m6 + CxRat(cfg.dphi[b] * eta_r(a)) * gba;
    }
    std::vector<Rat> xa(10, Rat(0));
    xa[a] = Rat(1);
    CMat ia_g2 = clifford_action(interior(xa, g2s), rep);
    CMat predA = CxRat(u2) * (scNa + CxRat(Rat(1, 6)) * m6) -
                 CxRat(Rat(1, 4) * u8) * (ia_g2 * g11);
    horiz_sc = std::max(horiz_sc, dmax(scA - predA));

    const CMat& ga = rep.gammas[a];
    CMat lhs = CxRat(inv_u2) *
                   (scA + CxRat(Rat(1, 24)) * (CxRat(Rat(3)) * (clF * ga) - ga * clF)) +
               CxRat(Rat(-1, 6) * cfg.dphi[a]) * id +
               CxRat(Rat(1, 2)) * (ga * (g11 * dil));
    CMat rhs = scNa + iia_gravitino_operator(rep, data, xa).algebraic;
    grav = std::max(grav, dmax(lhs - rhs));
  }
  out.add("horizontal_spin_connection", horiz_sc, 0);
  out.add("gravitino_recovery", grav, 0,
          "flux coupling 1/24(3 F Gamma_a - Gamma_a F); an alternate convention "
          "circulating in the literature quotes a different coefficient here, "
          "which does not close this dictionary");
  return out;
}

ResidualReport killing_reduction_check(const ReductionData& rd, const Point& point,
                                       const GammaRep& rep) {
  Point q = rd.base_point(point);
  const FramePatch& fpN = rd.base.frame;
  auto fr = fpN.frame_at(q);
  Tensor3 omN = fpN.frame_connection(q);
  auto snap = [](double v) { return Rat(std::llround(v * 1024), 1024); };

  KillingReductionConfig cfg;
  cfg.flip_c1_sign = rd.opt.flip_c1_sign;
  cfg.u = snap(std::exp(rd.base.phi(q) / 6));
  Form<double> dphi = one_form_d(rd.base.phi, 10, q, fpN.patch.step);
  for (int a = 0; a < 10; ++a) cfg.dphi[a] = snap(comp_on(dphi, fr.vectors, {a}));
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) cfg.omegaN[a](b, c) = snap(omN(a, b, c));
  Form<double> h3 = field_or_zero(rd.base.H3, q, 3);
  Form<double> g2 = field_or_zero(rd.base.G2, q, 2);
  Form<double> g4t = rd.twisted_g4(q);
  for (const IndexTuple& t : increasing_tuples(10, 3)) {
    Rat v = snap(comp_on(h3, fr.vectors, t));
    if (v != 0) cfg.H3.add(t, v);
  }
  for (const IndexTuple& t : increasing_tuples(10, 2)) {
    Rat v = snap(comp_on(g2, fr.vectors, t));
    if (v != 0) cfg.G2.add(t, v);
  }
  for (const IndexTuple& t : increasing_tuples(10, 4)) {
    Rat v = snap(comp_on(g4t, fr.vectors, t));
    if (v != 0) cfg.G4t.add(t, v);
  }
  return killing_reduction_identities(rep, cfg);
}

}  // namespace sugra
