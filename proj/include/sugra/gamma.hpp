#pragma once

#include "sugra/form.hpp"
#include "sugra/matrix.hpp"

namespace sugra {

using CMat = Mat<CxRat>;
using Spinor = Mat<CxRat>;  // column vector

/// Gamma matrices for signature (-,+,...,+), Gaussian-rational entries,
/// Gamma_a Gamma_b + Gamma_b Gamma_a = 2 eta_{ab} Id exactly.
struct GammaRep {
  int d = 0;
  int spinor_dim = 0;
  std::vector<CMat> gammas;
  int odd_dim_sign = 1;  // d odd: sign of the product Gamma_0...Gamma_{d-1}
};

// For odd d the product Gamma_0...Gamma_{d-1} is central and equals
// odd_dim_sign * Id when d = 3 mod 4 (in particular +Id for d = 11),
// odd_dim_sign * (+-i) * Id when d = 1 mod 4.
GammaRep build_gamma_rep(int d, int odd_dim_sign = 1);

/// Antisymmetrized upper-index product Gamma^{a1...ak} = Gamma^{a1}...Gamma^{ak}
/// with Gamma^a = eta^{aa} Gamma_a; the plain product when indices are
/// distinct, zero on a repeated index.
CMat antisym_gamma(const GammaRep& rep, const IndexTuple& indices);

/// i^{1-k} Gamma_0...Gamma_{d-1} for even d = 2k; squares to Id.
CMat chirality_operator(const GammaRep& rep);

/// Matrix of the Clifford action F -> sum_{a1<...<ak} F_{a1...ak}
/// Gamma^{a1}...Gamma^{ak} for a form in orthonormal-frame components.
CMat clifford_action(const Form<CxRat>& f, const GammaRep& rep);
CMat clifford_action(const Form<Rat>& f, const GammaRep& rep);

std::pair<Spinor, Spinor> weyl_split(const GammaRep& rep, const Spinor& psi);

struct RealStructure {
  enum class Kind { majorana, symplectic, none };
  Kind kind = Kind::none;
  CMat b;              // sigma(psi) = B conj(psi)
  int sigma_sq = 0;    // sign s in B conj(B) = s Id
  int gamma_sign = 0;  // sign e in B conj(Gamma_a) = e Gamma_a B
  bool weyl_compatible = false;  // sigma preserves chirality halves (d even)
};

RealStructure real_structure(const GammaRep& rep);

/// Minimal real dimension of a spinor representation compatible with the
/// constructed structure (fixed points for Majorana, realification for
/// symplectic, halved when the structure respects the Weyl split).
int minimal_real_dimension(const GammaRep& rep, const RealStructure& rs);

}  // namespace sugra
