#include "sugra/eomiib.hpp"

namespace sugra {

PointResidualsIIB point_residuals_iib(const BackgroundIIB& bg, const Point& p,
                                      const ResidualOptions&) {
  const int n = bg.frame.patch.dim;
  if (n != 10) throw std::invalid_argument("point_residuals_iib: dim != 10");
  const Patch& patch = bg.frame.patch;
  const double h = patch.step;
  PointGeometry geo = geometry_at(bg.frame, bg.analytic, p);

  double phi = bg.phi(p);
  Mat<double> hphi = hessian(bg.phi, patch, p);
  double lap = laplacian(bg.phi, patch, p);
  Form<double> dphi = one_form_d(bg.phi, n, p, h);
  double dphisq = scalar_product(dphi, dphi, geo.g);

  Form<double> h3 = bg.H3(p), g1 = bg.G1(p), g3 = bg.G3t(p), g5 = bg.G5t(p);
  double h3sq = scalar_product(h3, h3, geo.g);
  double g1sq = scalar_product(g1, g1, geo.g);
  double g3sq = scalar_product(g3, g3, geo.g);
  double g5sq = scalar_product(g5, g5, geo.g);
  double e2p = std::exp(2 * phi);
  bool einstein_frame = bg.frame_tag == Frame::einstein_frame;
  double cH = einstein_frame ? std::exp(-phi) : 1.0;
  double c1 = e2p;
  double c3 = einstein_frame ? std::exp(phi) : e2p;
  double c5 = einstein_frame ? 1.0 : e2p;

  double dil_rhs, scalar_onshell, trace_combo;
  if (einstein_frame) {
    dil_rhs = -0.5 * cH * h3sq + c1 * g1sq + 0.5 * c3 * g3sq;
    scalar_onshell = 0.5 * dphisq + 0.25 * cH * h3sq + 0.5 * c1 * g1sq + 0.25 * c3 * g3sq;
    trace_combo = scalar_onshell;
  } else {
    dil_rhs = 2 * dphisq - 0.5 * h3sq + e2p * g1sq + 0.5 * e2p * g3sq;
    scalar_onshell = -4 * dphisq + 2.5 * h3sq - 4 * e2p * g1sq - 2 * e2p * g3sq;
    trace_combo = -4.5 * lap + 5 * dphisq + 0.25 * h3sq + 0.5 * e2p * g1sq +
                  0.25 * e2p * g3sq;
  }
  double dil_res = lap - dil_rhs;

  PointResidualsIIB out;
  out.einstein = Mat<double>(n, n);
  out.ricci_form = Mat<double>(n, n);
  out.simplified = Mat<double>(n, n);
  double trace_e = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      auto X = column(geo.frame.vectors, a);
      auto Y = column(geo.frame.vectors, b);
      double ric = bilinear(geo.ricci, X, Y);
      double gxy = g_pair(geo.g, X, Y);
      double sH = stress_pair(h3, X, Y, geo.g);
      double s1 = stress_pair(g1, X, Y, geo.g);
      double s3 = stress_pair(g3, X, Y, geo.g);
      double s5 = stress_pair(g5, X, Y, geo.g);
      double full, rform, simp;
      if (einstein_frame) {
        double dpx = interior(X, dphi).coeff({}), dpy = interior(Y, dphi).coeff({});
        double common = 0.5 * dpx * dpy;
        full = ric - 0.5 * gxy * geo.scalar -
               (common - 0.25 * gxy * dphisq + 0.5 * cH * (sH - 0.5 * gxy * h3sq) +
                0.5 * c1 * (s1 - 0.5 * gxy * g1sq) +
                0.5 * c3 * (s3 - 0.5 * gxy * g3sq) + 0.25 * c5 * s5);
        rform = ric - (common + 0.5 * cH * (sH - 0.25 * gxy * h3sq) + 0.5 * c1 * s1 +
                       0.5 * c3 * (s3 - 0.25 * gxy * g3sq) + 0.25 * c5 * s5);
        simp = rform;
      } else {
        double hxy = bilinear(hphi, X, Y);
        full = ric - 0.5 * gxy * geo.scalar -
               (-2 * hxy + 2 * (lap - dphisq) * gxy + 0.5 * (sH - 0.5 * gxy * h3sq) +
                0.5 * e2p * (s1 - 0.5 * gxy * g1sq) +
                0.5 * e2p * (s3 - 0.5 * gxy * g3sq) + 0.25 * e2p * s5);
        rform = ric - (-2 * hxy - 0.25 * (lap - 2 * dphisq) * gxy +
                       0.5 * (sH - 0.25 * gxy * h3sq) + 0.5 * e2p * s1 +
                       0.5 * e2p * (s3 - 0.25 * gxy * g3sq) + 0.25 * e2p * s5);
        simp = ric - (-2 * hxy + 0.5 * sH + 0.5 * e2p * (s1 - 0.5 * gxy * g1sq) +
                      0.5 * e2p * (s3 - 0.5 * gxy * g3sq) + 0.25 * e2p * s5);
      }
      out.einstein(a, b) = out.einstein(b, a) = full;
      out.ricci_form(a, b) = out.ricci_form(b, a) = rform;
      out.simplified(a, b) = out.simplified(b, a) = simp;
      double vc = rform - simp - (einstein_frame ? 0.0 : 0.25 * gxy * dil_res);
      out.variant_consistency = std::max(out.variant_consistency, std::abs(vc));
      if (a == b) trace_e += geo.frame.eta[a] * full;
    }

  out.dilaton = dil_res;
  out.scalarR = geo.scalar - scalar_onshell;
  out.trace_identity = trace_e + 4 * (geo.scalar - trace_combo);

  auto metric_at = [&patch](const Point& q) { return patch.metric_at(q); };
  auto wphi = [&bg](double k, const Point& q) { return std::exp(k * bg.phi(q)); };
  FormField star_g1 = [&](const Point& q) {
    double w = einstein_frame ? wphi(2.0, q) : 1.0;
    return w * hodge_star(bg.G1(q), metric_at(q));
  };
  FormField star_g3 = [&](const Point& q) {
    double w = einstein_frame ? wphi(1.0, q) : 1.0;
    return w * hodge_star(bg.G3t(q), metric_at(q));
  };
  FormField star_g5 = [&](const Point& q) {
    return hodge_star(bg.G5t(q), metric_at(q));
  };
  FormField star_h3 = [&](const Point& q) {
    double w = einstein_frame ? wphi(-1.0, q) : wphi(-2.0, q);
    return w * hodge_star(bg.H3(q), metric_at(q));
  };
  Form<double> star_g3_p = hodge_star(g3, geo.g);
  double wH = einstein_frame ? std::exp(phi) : 1.0;
  out.maxwell_G1 = numeric_d(star_g1, n, 9, p, h) + wH * wedge(h3, star_g3_p);
  out.maxwell_G5 = numeric_d(star_g5, n, 5, p, h) - wedge(h3, g3);
  out.maxwell_G3 = numeric_d(star_g3, n, 7, p, h) + wedge(h3, g5);
  out.maxwell_H3 = numeric_d(star_h3, n, 7, p, h) - wedge(g3, g5) -
                   wH * wedge(g1, star_g3_p);
  out.self_duality = hodge_star(g5, geo.g) - g5;
  out.g5_norm = g5sq;
  out.bianchi_H3 = numeric_d(bg.H3, n, 3, p, h);
  out.bianchi_G1 = numeric_d(bg.G1, n, 1, p, h);
  out.bianchi_G3 = numeric_d(bg.G3t, n, 3, p, h) - wedge(h3, g1);
  out.bianchi_G5 = numeric_d(bg.G5t, n, 5, p, h) - wedge(h3, g3);
  return out;
}

ResidualReport residuals_iib(const BackgroundIIB& bg, const std::vector<Point>& points,
                             const ResidualOptions& opt) {
  if (!bg.H3 || !bg.G1 || !bg.G3t || !bg.G5t || !bg.phi || !bg.C0)
    throw std::invalid_argument("residuals_iib: incomplete field data");
  ResidualReport rep;
  for (const char* name :
       {"einstein", "einstein_ricci_form", "einstein_ricci_simplified", "dilaton",
        "maxwell_G1", "maxwell_G3", "maxwell_G5", "maxwell_H3", "self_duality",
        "g5_norm", "bianchi_H3", "bianchi_G1", "bianchi_G3", "bianchi_G5", "scalarR",
        "trace_identity", "variant_consistency"})
    rep.add(name, 0.0, opt.tolerance(name));
  bool pots = bool(bg.B2) || bool(bg.C2) || bool(bg.C4);
  if (pots) rep.add("potentials", 0.0, opt.tolerance("potentials"));

  const int n = bg.frame.patch.dim;
  const double h = bg.frame.patch.step;
  for (const Point& p : points) {
    PointResidualsIIB r = point_residuals_iib(bg, p, opt);
    rep.update("einstein", r.einstein.max_abs());
    rep.update("einstein_ricci_form", r.ricci_form.max_abs());
    rep.update("einstein_ricci_simplified", r.simplified.max_abs());
    rep.update("dilaton", r.dilaton);
    rep.update("maxwell_G1", r.maxwell_G1.max_abs());
    rep.update("maxwell_G3", r.maxwell_G3.max_abs());
    rep.update("maxwell_G5", r.maxwell_G5.max_abs());
    rep.update("maxwell_H3", r.maxwell_H3.max_abs());
    rep.update("self_duality", r.self_duality.max_abs());
    rep.update("g5_norm", r.g5_norm);
    rep.update("bianchi_H3", r.bianchi_H3.max_abs());
    rep.update("bianchi_G1", r.bianchi_G1.max_abs());
    rep.update("bianchi_G3", r.bianchi_G3.max_abs());
    rep.update("bianchi_G5", r.bianchi_G5.max_abs());
    rep.update("scalarR", r.scalarR);
    rep.update("trace_identity", r.trace_identity);
    rep.update("variant_consistency", r.variant_consistency);
    if (pots) {
      double worst = 0;
      if (bg.B2)
        worst = std::max(worst, (numeric_d(bg.B2, n, 2, p, h) - bg.H3(p)).max_abs());
      if (bg.C2) {
        Form<double> g3 = numeric_d(bg.C2, n, 2, p, h) - bg.C0(p) * bg.H3(p);
        worst = std::max(worst, (g3 - bg.G3t(p)).max_abs());
      }
      if (bg.C4 && bg.C2 && bg.B2) {
        Form<double> g3plain = numeric_d(bg.C2, n, 2, p, h);
        Form<double> g5 = numeric_d(bg.C4, n, 4, p, h) -
                          0.5 * wedge(bg.H3(p), bg.C2(p)) +
                          0.5 * wedge(g3plain, bg.B2(p));
        worst = std::max(worst, (g5 - bg.G5t(p)).max_abs());
      }
      rep.update("potentials", worst);
    }
  }
  return rep;
}

BackgroundIIB frame_convert_iib(const BackgroundIIB& bg) {
  BackgroundIIB out = bg;
  double dir = bg.frame_tag == Frame::string_frame ? -0.5 : 0.5;
  ScalarFn phi = bg.phi;
  MetricFn base = bg.frame.patch.metric;
  out.frame.patch.metric = [phi, base, dir](const Point& q) {
    double w = std::exp(dir * phi(q));
    Mat<double> g = base(q);
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j) g(i, j) *= w;
    return g;
  };
  out.frame_tag = bg.frame_tag == Frame::string_frame ? Frame::einstein_frame
                                                      : Frame::string_frame;
  out.analytic.reset();
  return out;
}

CForm operator+(const CForm& a, const CForm& b) {
  CForm r;
  r.re = a.re + b.re;
  r.im = a.im + b.im;
  return r;
}

CForm operator-(const CForm& a, const CForm& b) {
  CForm r;
  r.re = a.re - b.re;
  r.im = a.im - b.im;
  return r;
}

CForm operator*(std::complex<double> c, const CForm& f) {
  CForm r;
  r.re = c.real() * f.re - c.imag() * f.im;
  r.im = c.real() * f.im + c.imag() * f.re;
  return r;
}

CForm cwedge(const CForm& a, const CForm& b) {
  CForm r;
  r.re = wedge(a.re, b.re) - wedge(a.im, b.im);
  r.im = wedge(a.re, b.im) + wedge(a.im, b.re);
  return r;
}

CForm cconj(const CForm& f) {
  CForm r;
  r.re = f.re;
  r.im = -f.im;
  return r;
}

CForm cstar(const CForm& f, const Metric<double>& g) {
  CForm r;
  r.re = hodge_star(f.re, g);
  r.im = hodge_star(f.im, g);
  return r;
}

std::complex<double> cscalar_product(const CForm& a, const CForm& b,
                                     const Metric<double>& g) {
  // complex-bilinear extension of the real scalar product
  return {scalar_product(a.re, b.re, g) - scalar_product(a.im, b.im, g),
          scalar_product(a.re, b.im, g) + scalar_product(a.im, b.re, g)};
}

namespace {

CForm creal(const Form<double>& f) {
  CForm r;
  r.re = f;
  r.im = Form<double>(f.dim(), f.degree());
  return r;
}

// D_q f = df - i q Q ^ f, differentiated numerically componentwise.
CForm covariant_d(const CFormField& f, const FormField& q_field, double q,
                  int dim, int degree, const Point& p, double h) {
  FormField fre = [&f](const Point& x) { return f(x).re; };
  FormField fim = [&f](const Point& x) { return f(x).im; };
  CForm fp = f(p);
  Form<double> qp = q_field(p);
  CForm r;
  r.re = numeric_d(fre, dim, degree, p, h) + q * wedge(qp, fp.im);
  r.im = numeric_d(fim, dim, degree, p, h) - q * wedge(qp, fp.re);
  return r;
}

}  // namespace

SymmetricFieldsIIB symmetric_fields(const BackgroundIIB& bg) {
  if (bg.frame_tag != Frame::einstein_frame)
    throw std::invalid_argument("symmetric_fields: Einstein-frame background required");
  SymmetricFieldsIIB sf;
  sf.dim = bg.frame.patch.dim;
  sf.step = bg.frame.patch.step;
  sf.phi = bg.phi;
  sf.C0 = bg.C0;
  ScalarFn phi = bg.phi, c0 = bg.C0;
  FormField g1 = bg.G1, h3f = bg.H3, g3f = bg.G3t;
  int n = sf.dim;
  double h = sf.step;
  sf.tau = [phi, c0](const Point& q) {
    return std::complex<double>(c0(q), std::exp(-phi(q)));
  };
  sf.P = [phi, g1, n, h](const Point& q) {
    CForm r;
    r.re = 0.5 * one_form_d(phi, n, q, h);
    r.im = 0.5 * std::exp(phi(q)) * g1(q);
    return r;
  };
  sf.Q = [phi, g1](const Point& q) { return -0.5 * std::exp(phi(q)) * g1(q); };
  sf.G3p = [phi, h3f, g3f](const Point& q) {
    double ph = phi(q);
    CForm r;
    r.re = -std::exp(-0.5 * ph) * h3f(q);
    r.im = -std::exp(0.5 * ph) * g3f(q);
    return r;
  };
  sf.M = [phi, c0](const Point& q) {
    double ph = phi(q), a = c0(q);
    Mat<double> m(2, 2);
    m(0, 0) = std::exp(ph) * (a * a + std::exp(-2 * ph));
    m(0, 1) = m(1, 0) = -std::exp(ph) * a;
    m(1, 1) = std::exp(ph);
    return m;
  };
  sf.F3_1 = bg.H3;
  sf.F3_2 = [c0, h3f, g3f](const Point& q) {
    // untwisted G3 = G3t + C0 H3
    return g3f(q) + c0(q) * h3f(q);
  };
  sf.G5t = bg.G5t;
  return sf;
}

PointResidualsIIBSym point_residuals_iib_symmetric(const SymmetricFieldsIIB& sf,
                                                   const BackgroundIIB& bg,
                                                   const Point& p) {
  if (bg.frame_tag != Frame::einstein_frame)
    throw std::invalid_argument(
        "point_residuals_iib_symmetric: Einstein-frame background required");
  const int n = sf.dim;
  const double h = sf.step;
  const std::complex<double> I(0, 1);
  PointGeometry geo = geometry_at(bg.frame, bg.analytic, p);
  Metric<double>& g = geo.g;

  CForm pf = sf.P(p), g3p = sf.G3p(p);
  Form<double> g5 = sf.G5t(p);
  CForm g5c = creal(g5);

  PointResidualsIIBSym out;
  out.einstein = Mat<double>(n, n);
  double g3norm = cscalar_product(g3p, cconj(g3p), g).real();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      auto X = column(geo.frame.vectors, a);
      auto Y = column(geo.frame.vectors, b);
      double ric = bilinear(geo.ricci, X, Y);
      double gxy = g_pair(geo.g, X, Y);
      auto pc = [&](const std::vector<double>& v, const CForm& f) {
        return std::complex<double>(interior(v, f.re).coeff({}),
                                    interior(v, f.im).coeff({}));
      };
      std::complex<double> px = pc(X, pf), py = pc(Y, pf);
      double pterm = 2 * (px * std::conj(py)).real();
      CForm ixg3{interior(X, g3p.re), interior(X, g3p.im)};
      CForm iyg3c{interior(Y, g3p.re), -1.0 * interior(Y, g3p.im)};
      double g3term = 0.5 * cscalar_product(ixg3, iyg3c, g).real();
      double s5 = stress_pair(g5, X, Y, geo.g);
      double rhs = pterm + g3term - 0.125 * gxy * g3norm + 0.25 * s5;
      out.einstein(a, b) = out.einstein(b, a) = ric - rhs;
    }

  CFormField star_p = [&sf, &bg](const Point& q) {
    return cstar(sf.P(q), bg.frame.patch.metric_at(q));
  };
  CFormField star_g3p = [&sf, &bg](const Point& q) {
    return cstar(sf.G3p(q), bg.frame.patch.metric_at(q));
  };
  CForm starg3_p = cstar(g3p, g);
  out.maxwell_P = covariant_d(star_p, sf.Q, 2.0, n, n - 1, p, h) +
                  0.25 * std::complex<double>(1, 0) * cwedge(g3p, starg3_p);
  out.maxwell_G3p = covariant_d(star_g3p, sf.Q, 1.0, n, n - 3, p, h) -
                    cwedge(pf, cstar(cconj(g3p), g)) + I * cwedge(g3p, g5c);
  out.bianchi_P = covariant_d(sf.P, sf.Q, 2.0, n, 1, p, h);
  out.bianchi_G3p =
      covariant_d(sf.G3p, sf.Q, 1.0, n, 3, p, h) + cwedge(pf, cconj(g3p));
  out.bianchi_G5 =
      creal(numeric_d(sf.G5t, n, 5, p, h)) - (0.5 * I) * cwedge(g3p, cconj(g3p));

  // equivalence with the Einstein-frame equations, coefficients fixed by the
  // field dictionary
  PointResidualsIIB fr = point_residuals_iib(bg, p);
  double phi = bg.phi(p);
  Form<double> dvol = volume_form(g);
  CForm combo_p = (0.5 * I * std::exp(-phi)) * creal(fr.maxwell_G1) +
                  std::complex<double>(0.5 * fr.dilaton, 0) * creal(dvol);
  out.equiv_maxwell_P = (out.maxwell_P - combo_p).max_abs();
  CForm combo_g = (-I * std::exp(-0.5 * phi)) * creal(fr.maxwell_G3) +
                  std::complex<double>(-std::exp(0.5 * phi), 0) * creal(fr.maxwell_H3);
  out.equiv_maxwell_G3p = (out.maxwell_G3p - combo_g).max_abs();
  out.equiv_einstein = (out.einstein - fr.ricci_form).max_abs();
  return out;
}

ResidualReport residuals_iib_symmetric(const SymmetricFieldsIIB& sf,
                                       const BackgroundIIB& bg,
                                       const std::vector<Point>& points,
                                       const ResidualOptions& opt) {
  ResidualReport rep;
  for (const char* name :
       {"einstein_sym", "maxwell_P_re", "maxwell_P_im", "maxwell_G3p_re",
        "maxwell_G3p_im", "bianchi_P_re", "bianchi_P_im", "bianchi_G3p_re",
        "bianchi_G3p_im", "bianchi_G5_sym", "equiv_maxwell_P", "equiv_maxwell_G3p",
        "equiv_einstein"})
    rep.add(name, 0.0, opt.tolerance(name));
  for (const Point& p : points) {
    PointResidualsIIBSym r = point_residuals_iib_symmetric(sf, bg, p);
    rep.update("einstein_sym", r.einstein.max_abs());
    rep.update("maxwell_P_re", r.maxwell_P.re.max_abs());
    rep.update("maxwell_P_im", r.maxwell_P.im.max_abs());
    rep.update("maxwell_G3p_re", r.maxwell_G3p.re.max_abs());
    rep.update("maxwell_G3p_im", r.maxwell_G3p.im.max_abs());
    rep.update("bianchi_P_re", r.bianchi_P.re.max_abs());
    rep.update("bianchi_P_im", r.bianchi_P.im.max_abs());
    rep.update("bianchi_G3p_re", r.bianchi_G3p.re.max_abs());
    rep.update("bianchi_G3p_im", r.bianchi_G3p.im.max_abs());
    rep.update("bianchi_G5_sym", r.bianchi_G5.max_abs());
    rep.update("equiv_maxwell_P", r.equiv_maxwell_P);
    rep.update("equiv_maxwell_G3p", r.equiv_maxwell_G3p);
    rep.update("equiv_einstein", r.equiv_einstein);
  }
  return rep;
}

SymmetricFieldsIIB sl2_transform(const SymmetricFieldsIIB& sf, const Mat<double>& L) {
  double det = L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
  if (std::abs(det - 1.0) > 1e-12)
    throw std::invalid_argument("sl2_transform: det != 1");
  double a = L(0, 0), b = L(0, 1), c = L(1, 0), d = L(1, 1);

  SymmetricFieldsIIB out;
  out.dim = sf.dim;
  out.step = sf.step;
  CScalarFn tau0 = sf.tau;
  out.tau = [tau0, a, b, c, d](const Point& q) {
    std::complex<double> t = tau0(q);
    return (a * t + b) / (c * t + d);
  };
  CScalarFn tau = out.tau;
  out.phi = [tau](const Point& q) {
    double im = tau(q).imag();
    if (im <= 0) throw std::domain_error("sl2_transform: Im tau <= 0");
    return -std::log(im);
  };
  out.C0 = [tau](const Point& q) { return tau(q).real(); };
  // induced from the Moebius action: G3 - tau H3 picks up a factor 1/(c tau + d)
  FormField f1 = sf.F3_1, f2 = sf.F3_2;
  out.F3_1 = [f1, f2, c, d](const Point& q) { return d * f1(q) + c * f2(q); };
  out.F3_2 = [f1, f2, a, b](const Point& q) { return b * f1(q) + a * f2(q); };
  out.G5t = sf.G5t;

  // the derived fields are rebuilt from the transformed scalars and doublet
  ScalarFn phi = out.phi, c0 = out.C0;
  FormField h3 = out.F3_1, g3 = out.F3_2;
  int n = out.dim;
  double h = out.step;
  FormField g1 = [c0, n, h](const Point& q) { return one_form_d(c0, n, q, h); };
  out.Q = [phi, g1](const Point& q) { return -0.5 * std::exp(phi(q)) * g1(q); };
  out.P = [phi, g1, n, h](const Point& q) {
    CForm r;
    r.re = 0.5 * one_form_d(phi, n, q, h);
    r.im = 0.5 * std::exp(phi(q)) * g1(q);
    return r;
  };
  out.G3p = [phi, c0, h3, g3](const Point& q) {
    double ph = phi(q);
    Form<double> g3t = g3(q) - c0(q) * h3(q);
    CForm r;
    r.re = -std::exp(-0.5 * ph) * h3(q);
    r.im = -std::exp(0.5 * ph) * g3t;
    return r;
  };
  out.M = [phi, c0](const Point& q) {
    double ph = phi(q), x = c0(q);
    Mat<double> m(2, 2);
    m(0, 0) = std::exp(ph) * (x * x + std::exp(-2 * ph));
    m(0, 1) = m(1, 0) = -std::exp(ph) * x;
    m(1, 1) = std::exp(ph);
    return m;
  };
  return out;
}

SL2Invariants sl2_invariants(const SymmetricFieldsIIB& sf, const Patch& einstein_patch,
                             const Point& p) {
  const int n = sf.dim;
  const double h = sf.step;
  Metric<double> g = einstein_patch.metric_at(p);
  SL2Invariants out;

  ScalarFn tre = [&sf](const Point& q) { return sf.tau(q).real(); };
  ScalarFn tim = [&sf](const Point& q) { return sf.tau(q).imag(); };
  CForm dtau{one_form_d(tre, n, p, h), one_form_d(tim, n, p, h)};
  double imtau = sf.tau(p).imag();
  out.tau_kinetic =
      cscalar_product(dtau, cconj(dtau), g).real() / (2 * imtau * imtau);

  Mat<double> m = sf.M(p);
  Form<double> f[2] = {sf.F3_1(p), sf.F3_2(p)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.f3_kinetic += 0.5 * m(i, j) * scalar_product(f[i], f[j], g);

  Form<double> g5 = sf.G5t(p);
  out.g5_kinetic = 0.25 * scalar_product(g5, g5, g);
  return out;
}

}  // namespace sugra
