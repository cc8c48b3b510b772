#pragma once

#include "sugra/gamma.hpp"

namespace sugra {

/// Pointwise Killing-spinor operators as explicit matrices on spinor space,
/// in orthonormal-frame components with exact rational field data. The
/// gravitino operators carry only the algebraic part here; the derivative
/// term and the spin-connection term -1/4 omega_{ab}(X) Gamma^{ab} are
/// supplied by the caller (see spin_connection_matrix).
struct KillingOperator {
  enum class Kind { gravitino, dilatino };
  Kind kind = Kind::dilatino;
  CMat algebraic;
};

/// Clifford multiplication by a vector with contravariant frame components:
/// X . psi = sum_a X^a Gamma_a psi.
CMat vector_clifford(const GammaRep& rep, const std::vector<Rat>& x);

/// X-flat as a 1-form in frame components, (X^flat)_a = eta_{aa} X^a.
Form<Rat> flat_frame(const GammaRep& rep, const std::vector<Rat>& x);

// The algebraic part of the 11d gravitino operator in its three printed
// shapes; all three are the same matrix.
CMat gravitino11_wedge_form(const GammaRep& rep, const Form<Rat>& g,
                            const std::vector<Rat>& x);  // 1/12 (X^flat ^ G - 2 i_X G) .
CMat gravitino11_contraction_form(const GammaRep& rep, const Form<Rat>& g,
                                  const std::vector<Rat>& x);  // 1/12 (X.(G.) - 3 (i_X G).)
CMat gravitino11_symmetric_form(const GammaRep& rep, const Form<Rat>& g,
                                const std::vector<Rat>& x);  // 1/24 (3 G.(X.) - X.(G.))

KillingOperator gravitino11_operator(const GammaRep& rep, const Form<Rat>& g,
                                     const std::vector<Rat>& x);

/// Rational field data of a IIA background at a point, frame components;
/// ephi stands in for e^phi so the matrices stay exact.
struct IIAKillingData {
  Rat ephi = 1;
  Form<Rat> dphi{10, 1};
  Form<Rat> H3{10, 3};
  Form<Rat> G2{10, 2};
  Form<Rat> G4t{10, 4};
};

KillingOperator iia_gravitino_operator(const GammaRep& rep, const IIAKillingData& f,
                                       const std::vector<Rat>& x);
KillingOperator iia_dilatino_operator(const GammaRep& rep, const IIAKillingData& f);

struct IIBKillingData {
  Rat ephi = 1;
  Form<Rat> dphi{10, 1};
  Form<Rat> H3{10, 3};
  Form<Rat> G1{10, 1};
  Form<Rat> G3t{10, 3};
  Form<Rat> G5t{10, 5};
};

// Doublet formulation: matrices act on stacked (eps1; eps2), dimension 64.
KillingOperator iib_gravitino_doublet(const GammaRep& rep, const IIBKillingData& f,
                                      const std::vector<Rat>& x);
KillingOperator iib_dilatino_doublet(const GammaRep& rep, const IIBKillingData& f);

// Complex formulation applied to eps_c = eps2 + i eps1 with the formal
// conjugate eps_c^* = eps2 - i eps1 passed alongside. Returns the value of
// the algebraic part of the corresponding equation.
Spinor iib_gravitino_complex(const GammaRep& rep, const IIBKillingData& f,
                             const std::vector<Rat>& x, const Spinor& eps1,
                             const Spinor& eps2);
Spinor iib_dilatino_complex(const GammaRep& rep, const IIBKillingData& f,
                            const Spinor& eps1, const Spinor& eps2);

/// -1/4 omega_{ab}(X) Gamma^{ab} with numeric connection coefficients
/// omega(a, b) = omega_{ab}(X).
Mat<Cx<double>> spin_connection_matrix(const GammaRep& rep, const Mat<double>& omega);

/// Real dimension (and a rational basis in stacked (Re, Im) coordinates) of
/// the joint kernel of the given operators intersected with the fixed space
/// of the real structure, applied componentwise to `copies` copies of the
/// spinor space. Exact elimination; the dimension counts over R.
struct KernelResult {
  int dim = 0;
  Mat<Rat> basis;
};
KernelResult susy_kernel(const std::vector<CMat>& ops, const RealStructure& rs,
                         int copies = 1);

/// Float variant for numeric operators; rank thresholding at tol.
int susy_kernel_dim(const std::vector<Mat<Cx<double>>>& ops, const RealStructure& rs,
                    int copies = 1, double tol = 1e-10);

}  // namespace sugra
