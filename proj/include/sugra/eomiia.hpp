#pragma once

#include "sugra/background.hpp"

namespace sugra {

/// Type IIA background in ten dimensions. G4t is the twisted field strength
/// (dC3 - C1 ^ H3 in potentials mode); the Bianchi identity dG4t = H3 ^ G2
/// is reported as an equation, not assumed.
struct BackgroundIIA {
  FramePatch frame;  // dim 10, metric of the frame named by frame_tag
  ScalarFn phi;
  FormField H3, G2, G4t;
  FormField B2, C1, C3;  // optional potentials
  Frame frame_tag = Frame::string_frame;
  double kappa10 = 1;
  std::optional<AnalyticCurvature> analytic;
};

struct PointResidualsIIA {
  Mat<double> einstein;      // full equation with -1/2 g R
  Mat<double> ricci_form;    // trace-adjusted version
  Mat<double> simplified;    // Ricci form after the dilaton substitution
  double dilaton = 0;
  Form<double> maxwell_G2, maxwell_G4, maxwell_H3;
  Form<double> bianchi_H3, bianchi_G2, bianchi_G4;
  double scalarR = 0;          // R minus its on-shell value
  double trace_identity = 0;   // g-trace(einstein) + 4 * (R - trace combination)
  double variant_consistency = 0;  // ricci_form - simplified - 1/4 g * dilaton
};

PointResidualsIIA point_residuals_iia(const BackgroundIIA& bg, const Point& p,
                                      const ResidualOptions& opt = {});

ResidualReport residuals_iia(const BackgroundIIA& bg, const std::vector<Point>& points,
                             const ResidualOptions& opt = {});

/// Weyl transition between the string and Einstein frames, g_E = e^{-phi/2} g.
/// Field strengths and the dilaton are carried over unchanged.
BackgroundIIA frame_convert_iia(const BackgroundIIA& bg);

}  // namespace sugra
