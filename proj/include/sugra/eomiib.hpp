#pragma once

#include "sugra/background.hpp"

#include <complex>

namespace sugra {

/// Type IIB background in ten dimensions. G3t and G5t are the twisted field
/// strengths (G3 - C0 H3 and G5 - 1/2 H3^C2 + 1/2 G3^B2 in potentials mode);
/// self-duality of G5t is reported as a residual, never assumed.
struct BackgroundIIB {
  FramePatch frame;  // dim 10, metric of the frame named by frame_tag
  ScalarFn phi, C0;
  FormField H3, G1, G3t, G5t;
  FormField B2, C2, C4;  // optional potentials
  Frame frame_tag = Frame::string_frame;
  double kappa10 = 1;
  std::optional<AnalyticCurvature> analytic;
};

struct PointResidualsIIB {
  Mat<double> einstein;
  Mat<double> ricci_form;
  Mat<double> simplified;
  double dilaton = 0;
  Form<double> maxwell_G1, maxwell_G3, maxwell_G5, maxwell_H3;
  Form<double> self_duality;  // *G5t - G5t
  double g5_norm = 0;         // |G5t|^2, zero whenever G5t is self-dual
  Form<double> bianchi_H3, bianchi_G1, bianchi_G3, bianchi_G5;
  double scalarR = 0;
  double trace_identity = 0;
  double variant_consistency = 0;
};

PointResidualsIIB point_residuals_iib(const BackgroundIIB& bg, const Point& p,
                                      const ResidualOptions& opt = {});

ResidualReport residuals_iib(const BackgroundIIB& bg, const std::vector<Point>& points,
                             const ResidualOptions& opt = {});

BackgroundIIB frame_convert_iib(const BackgroundIIB& bg);

/// Complex-coefficient form stored as a pair of real forms.
struct CForm {
  Form<double> re, im;
  CForm() = default;
  CForm(int dim, int k) : re(dim, k), im(dim, k) {}
  CForm(Form<double> r, Form<double> i) : re(std::move(r)), im(std::move(i)) {}
  double max_abs() const { return std::max(re.max_abs(), im.max_abs()); }
};

CForm operator+(const CForm& a, const CForm& b);
CForm operator-(const CForm& a, const CForm& b);
CForm operator*(std::complex<double> c, const CForm& f);
CForm cwedge(const CForm& a, const CForm& b);
CForm cconj(const CForm& f);
CForm cstar(const CForm& f, const Metric<double>& g);
std::complex<double> cscalar_product(const CForm& a, const CForm& b,
                                     const Metric<double>& g);

using CFormField = std::function<CForm(const Point&)>;
using CScalarFn = std::function<std::complex<double>(const Point&)>;

/// The axion-dilaton dictionary: tau = C0 + i e^{-phi},
/// P = i/2 e^phi G1 + 1/2 dphi, Q = -1/2 e^phi G1,
/// G3' = i e^{phi/2}(tau H3 - G3), with the doublet F3 = (H3, G3) and the
/// kinetic matrix M = e^phi [[C0^2 + e^{-2phi}, -C0], [-C0, 1]].
struct SymmetricFieldsIIB {
  ScalarFn phi, C0;
  CScalarFn tau;
  CFormField P;
  FormField Q;
  CFormField G3p;
  std::function<Mat<double>(const Point&)> M;
  FormField F3_1, F3_2;  // doublet components H3, G3
  FormField G5t;
  int dim = 10;
  double step = 1e-4;
};

/// Requires an Einstein-frame background.
SymmetricFieldsIIB symmetric_fields(const BackgroundIIB& bg);

struct PointResidualsIIBSym {
  Mat<double> einstein;     // real by construction of the right side
  CForm maxwell_P;          // D_2 *P + 1/4 G3'^*G3'
  CForm maxwell_G3p;        // D_1 *G3' - P^*G3'* + i G3'^G5t
  CForm bianchi_P;          // D_2 P
  CForm bianchi_G3p;        // D_1 G3' + P^G3'*
  CForm bianchi_G5;         // dG5t - i/2 G3'^G3'*
  // differences against the equivalent combinations of the frame equations
  double equiv_maxwell_P = 0, equiv_maxwell_G3p = 0, equiv_einstein = 0;
};

PointResidualsIIBSym point_residuals_iib_symmetric(const SymmetricFieldsIIB& sf,
                                                   const BackgroundIIB& bg,
                                                   const Point& p);

ResidualReport residuals_iib_symmetric(const SymmetricFieldsIIB& sf,
                                       const BackgroundIIB& bg,
                                       const std::vector<Point>& points,
                                       const ResidualOptions& opt = {});

/// tau' = (a tau + b)/(c tau + d), M' = L M L^T, F' = (L^T)^{-1} F; phi, C0
/// and the derived fields P, Q, G3' are rebuilt from tau' and the new doublet.
SymmetricFieldsIIB sl2_transform(const SymmetricFieldsIIB& sf, const Mat<double>& L);

/// The three scalar summands of the symmetric-notation Lagrangian density at
/// a point; each is SL(2,R)-invariant.
struct SL2Invariants {
  double tau_kinetic = 0;  // 1/(2 Im(tau)^2) <dtau, dtau*>
  double f3_kinetic = 0;   // 1/2 M_ij <F^i, F^j>
  double g5_kinetic = 0;   // 1/4 |G5t|^2
};

SL2Invariants sl2_invariants(const SymmetricFieldsIIB& sf, const Patch& einstein_patch,
                             const Point& p);

/// Exact Moebius action on the upper half plane.
inline CxRat mobius(const Mat<Rat>& l, const CxRat& tau) {
  return (Cx<Rat>(l(0, 0)) * tau + Cx<Rat>(l(0, 1))) /
         (Cx<Rat>(l(1, 0)) * tau + Cx<Rat>(l(1, 1)));
}

}  // namespace sugra
