#include "sugra/variation.hpp"

#include <cmath>

namespace sugra {

namespace {

// |G|^2 * dvol coefficient as a function of the (not necessarily symmetric)
// inverse-metric matrix; the metric components are its matrix inverse.
double density(const Form<double>& g_form, Mat<double> ginv, int orientation) {
  int n = ginv.rows();
  Mat<double> gcomp = ginv.inverse();
  double det = gcomp.determinant();
  double vol = std::sqrt(std::abs(det)) * orientation;
  // scalar_product written out against the raw inverse entries
  int k = g_form.degree();
  double total = 0;
  for (const auto& [i, fv] : g_form.coeffs())
    for (const auto& [j, gv] : g_form.coeffs()) {
      Mat<double> m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = ginv(i[a], j[b]);
      total += fv * gv * m.determinant();
    }
  (void)n;
  return total * vol;
}

}  // namespace

MetricVariationReport metric_variation_check(const Form<double>& g_form,
                                             const Metric<double>& g, int mu, int nu,
                                             double step) {
  MetricVariationReport rep;
  auto fd_at = [&](double h) {
    Mat<double> up = g.inverse, dn = g.inverse;
    up(mu, nu) += h;
    dn(mu, nu) -= h;
    return (density(g_form, up, g.orientation) - density(g_form, dn, g.orientation)) /
           (2 * h);
  };
  // Two Richardson levels on the 2nd-order central difference.
  double d0 = fd_at(step), d1 = fd_at(step / 2), d2 = fd_at(step / 4);
  double r1 = (4 * d1 - d0) / 3, r2 = (4 * d2 - d1) / 3;
  rep.fd = (16 * r2 - r1) / 15;
  // Convergence order diagnosed at a step where truncation dominates roundoff.
  double h0 = std::max(step, 1e-2);
  double c0 = fd_at(h0), c1 = fd_at(h0 / 2), c2 = fd_at(h0 / 4);
  double e0 = std::abs(c1 - c0), e1 = std::abs(c2 - c1);
  rep.richardson_order = (e0 > 1e-13 && e1 > 1e-13) ? std::log2(e0 / e1) : 4.0;
  double level_scale = std::max({std::abs(r1), std::abs(r2), 1.0});
  rep.step_warning = std::abs(r2 - r1) > 1e-6 * level_scale;

  double vol = sqrt_scalar<double>(g.det_abs) * g.orientation;
  std::vector<double> emu(g.dim, 0.0), enu(g.dim, 0.0);
  emu[mu] = 1;
  enu[nu] = 1;
  double bracket = scalar_product(interior(emu, g_form), interior(enu, g_form), g) -
                   0.5 * g.components(mu, nu) * scalar_product(g_form, g_form, g);
  rep.formula = bracket * vol;
  double scale = std::max({std::abs(rep.formula), std::abs(rep.fd), 1e-12});
  rep.rel_err = std::abs(rep.fd - rep.formula) / scale;
  return rep;
}

FormVariationReport form_variation_check(const PolyForm& c, const PolyForm& delta_c,
                                         const Metric<Rat>& g) {
  int k = c.degree();
  PolyForm dc = exterior_derivative(c);
  PolyForm star_dc = hodge_star_const_metric(dc, g);
  PolyForm d_delta = exterior_derivative(delta_c);

  FormVariationReport rep;
  PolyRat two(2);
  rep.lhs = two * wedge(d_delta, star_dc);
  PolyForm boundary = exterior_derivative(wedge(delta_c, star_dc));
  PolyForm d_star_dc = exterior_derivative(star_dc);
  PolyRat sign(k % 2 == 0 ? 2 : -2);
  rep.rhs = two * boundary - sign * wedge(delta_c, d_star_dc);
  rep.exact_match = (rep.lhs == rep.rhs);
  return rep;
}

}  // namespace sugra
