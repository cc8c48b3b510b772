#pragma once

#include "sugra/patch.hpp"
#include "sugra/residual.hpp"

#include <map>
#include <optional>
#include <string>

namespace sugra {

enum class Frame { string_frame, einstein_frame };

/// Closed-form Ricci/scalar curvature for backgrounds whose curvature is
/// known exactly (constant-curvature product blocks); bypasses numeric
/// differentiation of the metric.
struct AnalyticCurvature {
  std::function<Mat<double>(const Point&)> ricci;  // coordinate components
  ScalarFn scalar;
};

/// Metric, orthonormal frame and curvature collected at one probe point.
struct PointGeometry {
  Metric<double> g;
  FramePatch::FrameAt frame;
  Mat<double> ricci;
  double scalar = 0;
};

inline PointGeometry geometry_at(const FramePatch& fp,
                                 const std::optional<AnalyticCurvature>& analytic,
                                 const Point& p) {
  PointGeometry out;
  out.g = fp.patch.metric_at(p);
  out.frame = fp.frame_at(p);
  if (analytic) {
    out.ricci = analytic->ricci(p);
    out.scalar = analytic->scalar(p);
  } else {
    out.ricci = ricci_tensor(fp.patch, p);
    out.scalar = scalar_curvature(fp.patch, p);
  }
  return out;
}

inline std::vector<double> column(const Mat<double>& m, int j) {
  std::vector<double> v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

/// <i_X F, i_Y F> for a vector pair; degree-1 F degenerates to F(X)F(Y).
inline double stress_pair(const Form<double>& f, const std::vector<double>& x,
                          const std::vector<double>& y, const Metric<double>& g) {
  return scalar_product(interior(x, f), interior(y, f), g);
}

inline double bilinear(const Mat<double>& t, const std::vector<double>& x,
                       const std::vector<double>& y) {
  double s = 0;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) s += t(i, j) * x[i] * y[j];
  return s;
}

inline double g_pair(const Metric<double>& g, const std::vector<double>& x,
                     const std::vector<double>& y) {
  return bilinear(g.components, x, y);
}

struct ResidualOptions {
  double tol = 1e-8;
  std::map<std::string, double> tol_override;

  double tolerance(const std::string& name) const {
    auto it = tol_override.find(name);
    return it == tol_override.end() ? tol : it->second;
  }
};

}  // namespace sugra
