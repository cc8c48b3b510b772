#pragma once

#include "sugra/background.hpp"

namespace sugra {

/// Eleven-dimensional supergravity background: metric patch with a 4-form
/// field strength G and optional 3-form potential C with G = dC.
struct Background11 {
  FramePatch frame;  // dim 11
  FormField G;       // degree 4, coordinate components
  FormField C;       // degree 3, may be empty
  double kappa11 = 1;  // reporting only; the field equations are kappa-free
  double beta = 0;     // coefficient of the anomaly 8-form
  std::optional<AnalyticCurvature> analytic;
};

struct Options11 : ResidualOptions {
  bool anomaly = false;
  // Alternate action convention C -> -C: the quadratic Maxwell term enters
  // with the opposite sign, d*G - 1/2 G^G.
  bool flip_cs_sign = false;
};

struct PointResiduals11 {
  // einstein(a,b) = (Ric - 1/2 g R - stress)(e_a, e_b); ricci_form likewise
  // for the trace-adjusted version.
  Mat<double> einstein;
  Mat<double> ricci_form;
  Form<double> maxwell;   // d*G + 1/2 G^G (+ beta X8 with the anomaly on)
  Form<double> bianchi;   // dG
  double scalar = 0;      // R - |G|^2/6
  double trace_consistency = 0;  // g-trace(einstein) + 9/2 * scalar
};

PointResiduals11 point_residuals_11(const Background11& bg, const Point& p,
                                    const Options11& opt = {});

ResidualReport residuals_11(const Background11& bg, const std::vector<Point>& points,
                            const Options11& opt = {});

/// X8 = 1/192 (p1^2 - 4 p2) of the numeric curvature 2-forms at a point.
Form<double> x8_form(const Background11& bg, const Point& p);

ResidualReport x8_check(const Background11& bg, const std::vector<Point>& points,
                        const Options11& opt = {});

/// Product chart R^{1,3} x R^7 with flat coordinates, G = f dvol_4 and the
/// closed-form product curvature Ric = -f^2/3 g on the first factor and
/// +f^2/6 g on the second.
Background11 freund_rubin_background(double f);

}  // namespace sugra
