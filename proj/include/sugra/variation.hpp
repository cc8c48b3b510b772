#pragma once

#include "sugra/form.hpp"
#include "sugra/poly.hpp"

namespace sugra {

/// Finite-difference check of the pointwise variation of |G|^2 dvol with
/// respect to a single inverse-metric entry g^{mu nu}:
///   d(|G|^2 dvol)/dg^{mu nu} = (<i_mu G, i_nu G> - 1/2 g_{mu nu} |G|^2) dvol.
struct MetricVariationReport {
  double fd = 0;            // Richardson-extrapolated central difference
  double formula = 0;
  double rel_err = 0;
  double richardson_order = 0;  // observed convergence order, from 3 step sizes
  bool step_warning = false;    // Richardson levels disagree: step too large
};

MetricVariationReport metric_variation_check(const Form<double>& g_form,
                                             const Metric<double>& g, int mu, int nu,
                                             double step = 1e-5);

/// Exact polynomial form-variation identity with constant metric, G = dC:
///   2 d(deltaC) ^ *dC = 2 d(deltaC ^ *dC) - 2(-1)^k deltaC ^ d*dC.
struct FormVariationReport {
  bool exact_match = false;
  PolyForm lhs, rhs;
};

FormVariationReport form_variation_check(const PolyForm& c, const PolyForm& delta_c,
                                         const Metric<Rat>& g);

}  // namespace sugra
