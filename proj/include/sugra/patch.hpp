#pragma once

#include "sugra/form.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sugra {

using Point = std::vector<double>;
using ScalarFn = std::function<double(const Point&)>;
using MetricFn = std::function<Mat<double>(const Point&)>;
using FormField = std::function<Form<double>(const Point&)>;

struct Tensor3 {
  int d = 0;
  std::vector<double> v;
  explicit Tensor3(int dim = 0) : d(dim), v(size_t(dim) * dim * dim, 0.0) {}
  double& operator()(int a, int b, int c) { return v[(size_t(a) * d + b) * d + c]; }
  double operator()(int a, int b, int c) const { return v[(size_t(a) * d + b) * d + c]; }
  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) {
    for (size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
    return a;
  }
  friend Tensor3 operator-(Tensor3 a) {
    for (auto& x : a.v) x = -x;
    return a;
  }
  friend Tensor3 operator*(double s, Tensor3 a) {
    for (auto& x : a.v) x *= s;
    return a;
  }
};

struct Tensor4 {
  int d = 0;
  std::vector<double> v;
  explicit Tensor4(int dim = 0) : d(dim), v(size_t(dim) * dim * dim * dim, 0.0) {}
  double& operator()(int a, int b, int c, int e) {
    return v[((size_t(a) * d + b) * d + c) * d + e];
  }
  double operator()(int a, int b, int c, int e) const {
    return v[((size_t(a) * d + b) * d + c) * d + e];
  }
};

/// 4th-order central difference d/dx_mu of a vector-space-valued field.
/// V needs +, -, and double*V.
template <class V>
V central_diff(const std::function<V(const Point&)>& f, const Point& p, int mu,
               double h) {
  Point a = p, b = p, c = p, d = p;
  a[mu] += 2 * h;
  b[mu] += h;
  c[mu] -= h;
  d[mu] -= 2 * h;
  return (1.0 / (12 * h)) * (-(f(a)) + 8.0 * f(b) + (-8.0) * f(c) + f(d));
}

inline double central_diff_scalar(const ScalarFn& f, const Point& p, int mu, double h) {
  Point a = p, b = p, c = p, d = p;
  a[mu] += 2 * h;
  b[mu] += h;
  c[mu] -= h;
  d[mu] -= 2 * h;
  return (-f(a) + 8 * f(b) - 8 * f(c) + f(d)) / (12 * h);
}

/// 4th-order second derivative; direct stencil on the diagonal, nested first
/// derivatives off it.
inline double central_diff2_scalar(const ScalarFn& f, const Point& p, int mu, int nu,
                                   double h) {
  if (mu == nu) {
    Point a = p, b = p, c = p, d = p;
    a[mu] += 2 * h;
    b[mu] += h;
    c[mu] -= h;
    d[mu] -= 2 * h;
    return (-f(a) + 16 * f(b) - 30 * f(p) + 16 * f(c) - f(d)) / (12 * h * h);
  }
  ScalarFn dnu = [&](const Point& q) { return central_diff_scalar(f, q, nu, h); };
  return central_diff_scalar(dnu, p, mu, h);
}

/// A coordinate patch carrying a metric evaluator. Numeric mode only; the
/// exact polynomial layer lives in poly.hpp with constant metrics.
struct Patch {
  int dim = 0;
  MetricFn metric;
  double step = 1e-4;
  int orientation = 1;
  std::function<bool(const Point&)> in_domain;  // empty = everywhere

  Metric<double> metric_at(const Point& p) const {
    return Metric<double>::from_components(metric(p), orientation);
  }

  // True when the full difference stencil around p stays inside the chart.
  bool stencil_ok(const Point& p) const {
    if (!in_domain) return true;
    for (int mu = 0; mu < dim; ++mu)
      for (int s : {-2, -1, 1, 2}) {
        Point q = p;
        q[mu] += s * step;
        if (!in_domain(q)) return false;
      }
    return true;
  }
};

struct CurvatureData {
  int dim = 0;
  Tensor4 riemann;           // R^rho_{sigma mu nu}
  Mat<double> ricci;         // R_{mu nu}
  double scalar = 0;         // g^{mu nu} R_{mu nu}
  Tensor3 frame_omega;       // omega_{cab} = g(nabla_{e_c} e_a, e_b)
  std::vector<std::vector<Form<double>>> curvature_2forms;  // Omega_{ab}, coord forms
  bool reduced_accuracy = false;
};

Tensor3 christoffel(const Patch& patch, const Point& p);
Tensor4 riemann_tensor(const Patch& patch, const Point& p);
Mat<double> ricci_tensor(const Patch& patch, const Point& p);
double scalar_curvature(const Patch& patch, const Point& p);
Mat<double> hessian(const ScalarFn& phi, const Patch& patch, const Point& p);
double laplacian(const ScalarFn& phi, const Patch& patch, const Point& p);
double laplacian_via_hodge(const ScalarFn& phi, const Patch& patch, const Point& p);

/// Coordinate differential of a scalar field, d phi = sum_mu (d_mu phi) dx^mu.
Form<double> one_form_d(const ScalarFn& phi, int dim, const Point& p, double h);
/// Numeric exterior derivative of a form-valued field, d f = sum_mu dx^mu ^ d_mu f.
Form<double> numeric_d(const FormField& f, int dim, int degree, const Point& p,
                       double h);

/// Orthonormal frame from a signature-aware triangular factorization
/// g = L eta L^T; frame vectors are the columns of L^{-T}, so the frame
/// depends smoothly on the metric as long as the signature pattern is stable.
struct FramePatch {
  Patch patch;

  struct FrameAt {
    Mat<double> vectors;   // column a = components of e_a
    Mat<double> coframe;   // row a = components of alpha^a
    std::vector<int> eta;  // eta_{aa} signs
  };

  FrameAt frame_at(const Point& p) const;
  // omega_{cab} from the Koszul formula (constant-eta form):
  // 2 omega_{cab} = g([e_c,e_a],e_b) - g([e_c,e_b],e_a) - g([e_a,e_b],e_c).
  Tensor3 frame_connection(const Point& p) const;
  // Connection 1-forms omega_{ab} with coordinate components, and the frame
  // curvature 2-forms Omega_{ab}(X,Y) = g(R(X,Y)e_a, e_b).
  std::vector<std::vector<Form<double>>> connection_1forms(const Point& p) const;
  std::vector<std::vector<Form<double>>> curvature_2forms(const Point& p) const;
};

CurvatureData curvature(const FramePatch& fp, const Point& p);

/// Koszul connection coefficients omega_{cab} = g(nabla_{e_c} e_a, e_b) for an
/// explicitly given frame field (column a = components of e_a); the frame is
/// differentiated numerically.
Tensor3 koszul_frame_connection(const Patch& patch,
                                const std::function<Mat<double>(const Point&)>& frame,
                                const Point& p);

/// Pointwise check data for the Weyl rescaling g_E = e^{-phi/2} g.
struct ConformalReport {
  double scalar_direct = 0;     // R_E from differentiating e^{-phi/2} g
  double scalar_formula = 0;    // e^{phi/2}(R + (n-1)/2 lap(phi) - (n-1)(n-2)/16 |dphi|^2)
  double dvol_ratio = 0;        // coefficient ratio dvol_E / dvol
  double dvol_expected = 0;     // e^{-dim*phi/4}
  double norm_ratio = 0;        // |F|^2_E / |F|^2 for the probe form
  double norm_expected = 0;     // e^{k phi/2}
  double star_max_err = 0;      // max | *F - e^{(dim/2-k) phi/2} *_E F |
};

ConformalReport conformal_rescale_check(const Patch& patch, const ScalarFn& phi,
                                        const Point& p, const Form<double>& probe);

/// Square matrix of forms under the wedge product; all entries share one
/// degree so wedge powers stay homogeneous.
template <class T>
class FormMatrix {
 public:
  FormMatrix(int n, int dim, int degree)
      : n_(n), entries_(n, std::vector<Form<T>>(n, Form<T>(dim, degree))) {}

  int size() const { return n_; }
  Form<T>& operator()(int i, int j) { return entries_[i][j]; }
  const Form<T>& operator()(int i, int j) const { return entries_[i][j]; }

  friend FormMatrix wedge_mul(const FormMatrix& a, const FormMatrix& b) {
    int dim = a.entries_[0][0].dim();
    FormMatrix r(a.n_, dim, a.entries_[0][0].degree() + b.entries_[0][0].degree());
    for (int i = 0; i < a.n_; ++i)
      for (int j = 0; j < a.n_; ++j)
        for (int k = 0; k < a.n_; ++k)
          r(i, j) = r(i, j) + wedge(a(i, k), b(k, j));
    return r;
  }

  Form<T> trace() const {
    Form<T> t = entries_[0][0];
    for (int i = 1; i < n_; ++i) t = t + entries_[i][i];
    return t;
  }

  // Conjugation Omega -> A Omega A^{-1} by a scalar matrix.
  FormMatrix conjugated(const Mat<T>& a) const {
    Mat<T> ai = a.inverse();
    int dim = entries_[0][0].dim();
    FormMatrix r(n_, dim, entries_[0][0].degree());
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l)
            r(i, j) = r(i, j) + (a(i, k) * ai(l, j)) * entries_[k][l];
    return r;
  }

 private:
  int n_;
  std::vector<std::vector<Form<T>>> entries_;
};

template <class T>
struct PontryaginForms {
  Form<T> p1, p2, x8;
};

/// p1 = -1/(8 pi^2) tr Omega^2, p2 = -1/(64 pi^4) tr Omega^4
/// + 1/(128 pi^4) (tr Omega^2)^2, X8 = 1/192 (p1^2 - 4 p2).
/// The scale carries the 1/pi^2 factors so the exact layer can pass 1.
template <class T>
PontryaginForms<T> pontryagin_forms(const FormMatrix<T>& omega, T inv_pi_sq) {
  FormMatrix<T> om2 = wedge_mul(omega, omega);
  FormMatrix<T> om4 = wedge_mul(om2, om2);
  Form<T> tr2 = om2.trace(), tr4 = om4.trace();
  T c1 = T(-1) * inv_pi_sq / T(8);
  Form<T> p1 = c1 * tr2;
  T pi4 = inv_pi_sq * inv_pi_sq;
  Form<T> p2 = (T(-1) * pi4 / T(64)) * tr4 + (pi4 / T(128)) * wedge(tr2, tr2);
  Form<T> x8 = (T(1) / T(192)) * (wedge(p1, p1) - T(4) * p2);
  return {p1, p2, x8};
}

}  // namespace sugra
