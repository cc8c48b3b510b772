#include "sugra/eom11.hpp"

namespace sugra {

PointResiduals11 point_residuals_11(const Background11& bg, const Point& p,
                                    const Options11& opt) {
  const int n = bg.frame.patch.dim;
  if (n != 11) throw std::invalid_argument("point_residuals_11: dim != 11");
  PointGeometry geo = geometry_at(bg.frame, bg.analytic, p);
  Form<double> g4 = bg.G(p);
  double g4sq = scalar_product(g4, g4, geo.g);

  PointResiduals11 out;
  out.einstein = Mat<double>(n, n);
  out.ricci_form = Mat<double>(n, n);
  double einstein_trace = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      auto X = column(geo.frame.vectors, a);
      auto Y = column(geo.frame.vectors, b);
      double ric = bilinear(geo.ricci, X, Y);
      double gxy = g_pair(geo.g, X, Y);
      double str = stress_pair(g4, X, Y, geo.g);
      double full = ric - 0.5 * gxy * geo.scalar - (0.5 * str - 0.25 * gxy * g4sq);
      double rform = ric - (0.5 * str - gxy * g4sq / 6.0);
      out.einstein(a, b) = out.einstein(b, a) = full;
      out.ricci_form(a, b) = out.ricci_form(b, a) = rform;
      if (a == b) einstein_trace += geo.frame.eta[a] * full;
    }

  double h = bg.frame.patch.step;
  FormField star_g = [&bg](const Point& q) {
    return hodge_star(bg.G(q), bg.frame.patch.metric_at(q));
  };
  double cs = opt.flip_cs_sign ? -0.5 : 0.5;
  out.maxwell = numeric_d(star_g, n, n - 4, p, h) + cs * wedge(g4, g4);
  if (opt.anomaly) out.maxwell = out.maxwell + bg.beta * x8_form(bg, p);
  out.bianchi = numeric_d(bg.G, n, 4, p, h);
  out.scalar = geo.scalar - g4sq / 6.0;
  out.trace_consistency = einstein_trace + 4.5 * out.scalar;
  return out;
}

ResidualReport residuals_11(const Background11& bg, const std::vector<Point>& points,
                            const Options11& opt) {
  if (!bg.G) throw std::invalid_argument("residuals_11: missing field strength");
  if (!bg.analytic && !bg.frame.patch.metric)
    throw std::invalid_argument("residuals_11: missing curvature data");
  ResidualReport rep;
  for (const char* name : {"einstein", "einstein_ricci_form", "maxwell", "bianchi",
                           "scalar_curvature", "trace_consistency"})
    rep.add(name, 0.0, opt.tolerance(name));
  if (bg.C) rep.add("potential", 0.0, opt.tolerance("potential"), "G = dC");

  for (const Point& p : points) {
    PointResiduals11 r = point_residuals_11(bg, p, opt);
    rep.update("einstein", r.einstein.max_abs());
    rep.update("einstein_ricci_form", r.ricci_form.max_abs());
    rep.update("maxwell", r.maxwell.max_abs());
    rep.update("bianchi", r.bianchi.max_abs());
    rep.update("scalar_curvature", r.scalar);
    rep.update("trace_consistency", r.trace_consistency);
    if (bg.C) {
      Form<double> dc = numeric_d(bg.C, 11, 3, p, bg.frame.patch.step);
      rep.update("potential", (dc - bg.G(p)).max_abs());
    }
  }
  return rep;
}

Form<double> x8_form(const Background11& bg, const Point& p) {
  const int n = bg.frame.patch.dim;
  auto om = bg.frame.curvature_2forms(p);
  FormMatrix<double> omega(n, n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) omega(a, b) = om[a][b];
  const double inv_pi_sq = 1.0 / (M_PI * M_PI);
  return pontryagin_forms(omega, inv_pi_sq).x8;
}

ResidualReport x8_check(const Background11& bg, const std::vector<Point>& points,
                        const Options11& opt) {
  ResidualReport rep;
  Options11 with_anomaly = opt;
  with_anomaly.anomaly = true;
  rep.add("anomaly_maxwell", 0.0, opt.tolerance("anomaly_maxwell"));
  rep.add("x8_frame_invariance", 0.0, opt.tolerance("x8_frame_invariance"));
  rep.add("x8_value", 0.0, opt.tolerance("x8_value"),
          "vanishes on flat backgrounds");

  const int n = bg.frame.patch.dim;
  // fixed well-conditioned change of frame for the invariance probe
  Mat<double> a = Mat<double>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) += 0.1 / (1.0 + i + 2 * j);

  for (const Point& p : points) {
    rep.update("anomaly_maxwell",
               point_residuals_11(bg, p, with_anomaly).maxwell.max_abs());
    auto om = bg.frame.curvature_2forms(p);
    FormMatrix<double> omega(n, n, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) omega(i, j) = om[i][j];
    const double inv_pi_sq = 1.0 / (M_PI * M_PI);
    Form<double> x8 = pontryagin_forms(omega, inv_pi_sq).x8;
    Form<double> x8c = pontryagin_forms(omega.conjugated(a), inv_pi_sq).x8;
    rep.update("x8_frame_invariance", (x8 - x8c).max_abs());
    rep.update("x8_value", x8.max_abs());
  }
  return rep;
}

Background11 freund_rubin_background(double f) {
  Background11 bg;
  bg.frame.patch.dim = 11;
  bg.frame.patch.metric = [](const Point&) {
    Mat<double> g(11, 11);
    g(0, 0) = -1;
    for (int i = 1; i < 11; ++i) g(i, i) = 1;
    return g;
  };
  bg.G = [f](const Point&) {
    Form<double> g4(11, 4);
    g4.add({0, 1, 2, 3}, f);
    return g4;
  };
  AnalyticCurvature curv;
  curv.ricci = [f](const Point&) {
    Mat<double> r(11, 11);
    r(0, 0) = f * f / 3.0;  // -(1/3) f^2 g_{00}
    for (int i = 1; i < 4; ++i) r(i, i) = -f * f / 3.0;
    for (int i = 4; i < 11; ++i) r(i, i) = f * f / 6.0;
    return r;
  };
  curv.scalar = [f](const Point&) { return -f * f / 6.0; };
  bg.analytic = curv;
  return bg;
}

}  // namespace sugra
