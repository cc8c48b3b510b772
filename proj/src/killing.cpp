#include "sugra/killing.hpp"

namespace sugra {

namespace {

Rat eta_sign(int a) { return a == 0 ? Rat(-1) : Rat(1); }

CMat lam1() {
  CMat m(2, 2);
  m(0, 1) = m(1, 0) = CxRat(Rat(1));
  return m;
}

CMat lam2() {  // i sigma_2, real
  CMat m(2, 2);
  m(0, 1) = CxRat(Rat(1));
  m(1, 0) = CxRat(Rat(-1));
  return m;
}

CMat lam3() {
  CMat m(2, 2);
  m(0, 0) = CxRat(Rat(1));
  m(1, 1) = CxRat(Rat(-1));
  return m;
}

CMat id2() {
  CMat m(2, 2);
  m(0, 0) = m(1, 1) = CxRat(Rat(1));
  return m;
}

}  // namespace

CMat vector_clifford(const GammaRep& rep, const std::vector<Rat>& x) {
  if (int(x.size()) != rep.d)
    throw std::invalid_argument("vector_clifford: dimension mismatch");
  CMat m(rep.spinor_dim, rep.spinor_dim);
  for (int a = 0; a < rep.d; ++a)
    if (x[a] != 0) m = m + CxRat(x[a]) * rep.gammas[a];
  return m;
}

Form<Rat> flat_frame(const GammaRep& rep, const std::vector<Rat>& x) {
  Form<Rat> f(rep.d, 1);
  for (int a = 0; a < rep.d; ++a)
    if (x[a] != 0) f.add({a}, eta_sign(a) * x[a]);
  return f;
}

CMat gravitino11_wedge_form(const GammaRep& rep, const Form<Rat>& g,
                            const std::vector<Rat>& x) {
  CMat m = clifford_action(wedge(flat_frame(rep, x), g), rep) -
           CxRat(Rat(2)) * clifford_action(interior(x, g), rep);
  return CxRat(Rat(1, 12)) * m;
}

CMat gravitino11_contraction_form(const GammaRep& rep, const Form<Rat>& g,
                                  const std::vector<Rat>& x) {
  CMat xc = vector_clifford(rep, x);
  CMat gc = clifford_action(g, rep);
  CMat ixgc = clifford_action(interior(x, g), rep);
  return CxRat(Rat(1, 12)) * (xc * gc - CxRat(Rat(3)) * ixgc);
}

CMat gravitino11_symmetric_form(const GammaRep& rep, const Form<Rat>& g,
                                const std::vector<Rat>& x) {
  CMat xc = vector_clifford(rep, x);
  CMat gc = clifford_action(g, rep);
  return CxRat(Rat(1, 24)) * (CxRat(Rat(3)) * (gc * xc) - xc * gc);
}

KillingOperator gravitino11_operator(const GammaRep& rep, const Form<Rat>& g,
                                     const std::vector<Rat>& x) {
  return {KillingOperator::Kind::gravitino, gravitino11_wedge_form(rep, g, x)};
}

KillingOperator iia_gravitino_operator(const GammaRep& rep, const IIAKillingData& f,
                                       const std::vector<Rat>& x) {
  CMat g11 = chirality_operator(rep);
  CMat xc = vector_clifford(rep, x);
  CMat m = CxRat(Rat(-1, 4)) * (clifford_action(interior(x, f.H3), rep) * g11) +
           CxRat(f.ephi / 8) * (clifford_action(f.G4t, rep) * xc +
                                clifford_action(f.G2, rep) * xc * g11);
  return {KillingOperator::Kind::gravitino, m};
}

KillingOperator iia_dilatino_operator(const GammaRep& rep, const IIAKillingData& f) {
  CMat g11 = chirality_operator(rep);
  CMat m = CxRat(f.ephi / 4) * clifford_action(f.G2, rep) -
           CxRat(Rat(1, 3)) * (clifford_action(f.dphi, rep) * g11) +
           CxRat(f.ephi / 12) * (clifford_action(f.G4t, rep) * g11) +
           CxRat(Rat(1, 6)) * clifford_action(f.H3, rep);
  return {KillingOperator::Kind::dilatino, m};
}

KillingOperator iib_gravitino_doublet(const GammaRep& rep, const IIBKillingData& f,
                                      const std::vector<Rat>& x) {
  CMat xc = vector_clifford(rep, x);
  CMat m = CxRat(Rat(1, 4)) *
               kron(lam3(), clifford_action(interior(x, f.H3), rep)) +
           CxRat(f.ephi / 8) *
               (kron(lam2(), clifford_action(f.G1, rep) * xc) -
                kron(lam1(), clifford_action(f.G3t, rep) * xc) +
                CxRat(Rat(1, 2)) * kron(lam2(), clifford_action(f.G5t, rep) * xc));
  return {KillingOperator::Kind::gravitino, m};
}

KillingOperator iib_dilatino_doublet(const GammaRep& rep, const IIBKillingData& f) {
  CMat m = kron(id2(), clifford_action(f.dphi, rep)) +
           CxRat(Rat(1, 2)) * kron(lam3(), clifford_action(f.H3, rep)) +
           CxRat(f.ephi) * (CxRat(Rat(1, 2)) * kron(lam1(), clifford_action(f.G3t, rep)) -
                            kron(lam2(), clifford_action(f.G1, rep)));
  return {KillingOperator::Kind::dilatino, m};
}

Spinor iib_gravitino_complex(const GammaRep& rep, const IIBKillingData& f,
                             const std::vector<Rat>& x, const Spinor& eps1,
                             const Spinor& eps2) {
  CxRat i = cxrat_i();
  Spinor ec = eps2 + i * eps1;
  Spinor ecs = eps2 - i * eps1;
  CMat xc = vector_clifford(rep, x);
  Spinor out = CxRat(Rat(-1, 4)) * (clifford_action(interior(x, f.H3), rep) * ecs);
  out = out + (i * CxRat(f.ephi / 8)) *
                  (clifford_action(f.G1, rep) * (xc * ec) -
                   clifford_action(f.G3t, rep) * (xc * ecs) +
                   CxRat(Rat(1, 2)) * (clifford_action(f.G5t, rep) * (xc * ec)));
  return out;
}

Spinor iib_dilatino_complex(const GammaRep& rep, const IIBKillingData& f,
                            const Spinor& eps1, const Spinor& eps2) {
  CxRat i = cxrat_i();
  Spinor ec = eps2 + i * eps1;
  Spinor ecs = eps2 - i * eps1;
  Spinor out = clifford_action(f.dphi, rep) * ec -
               CxRat(Rat(1, 2)) * (clifford_action(f.H3, rep) * ecs);
  out = out + (i * CxRat(f.ephi)) *
                  (CxRat(Rat(1, 2)) * (clifford_action(f.G3t, rep) * ecs) -
                   clifford_action(f.G1, rep) * ec);
  return out;
}

Mat<Cx<double>> spin_connection_matrix(const GammaRep& rep, const Mat<double>& omega) {
  int n = rep.spinor_dim;
  Mat<Cx<double>> out(n, n);
  for (int a = 0; a < rep.d; ++a)
    for (int b = a + 1; b < rep.d; ++b) {
      if (omega(a, b) == 0.0 && omega(b, a) == 0.0) continue;
      CMat gab = antisym_gamma(rep, {a, b});
      // -1/4 over the full antisymmetric index sum = -1/2 over a < b
      double w = -0.25 * (omega(a, b) - omega(b, a));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          const CxRat& v = gab(r, c);
          if (v == CxRat())
            continue;
          out(r, c) += Cx<double>(w * to_double(v.re), w * to_double(v.im));
        }
    }
  return out;
}

KernelResult susy_kernel(const std::vector<CMat>& ops, const RealStructure& rs,
                         int copies) {
  int n = rs.b.rows() * copies;
  std::vector<Mat<Rat>> parts;
  for (const CMat& op : ops) {
    if (op.cols() != n)
      throw std::invalid_argument("susy_kernel: operator dimension mismatch");
    parts.push_back(realify(op));
  }
  // fixed-point condition sigma(psi) = psi, sigma acting on each copy
  CMat minus_id(n, n), b_full = rs.b;
  for (int j = 0; j < n; ++j) minus_id(j, j) = CxRat(Rat(-1));
  if (copies > 1) b_full = kron(CMat::identity(copies), rs.b);
  parts.push_back(realify(minus_id, b_full));

  KernelResult out;
  out.basis = Mat<Rat>::vstack(parts).nullspace();
  out.dim = out.basis.cols();
  return out;
}

int susy_kernel_dim(const std::vector<Mat<Cx<double>>>& ops, const RealStructure& rs,
                    int copies, double tol) {
  int n = rs.b.rows() * copies;
  std::vector<Mat<double>> parts;
  for (const auto& op : ops) parts.push_back(realify(op));
  Mat<Cx<double>> minus_id(n, n), b_full(n, n);
  for (int j = 0; j < n; ++j) minus_id(j, j) = Cx<double>(-1.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const CxRat& v = rs.b(r % rs.b.rows(), c % rs.b.cols());
      if (r / rs.b.rows() == c / rs.b.cols())
        b_full(r, c) = Cx<double>(to_double(v.re), to_double(v.im));
    }
  parts.push_back(realify(minus_id, b_full));
  Mat<double> stacked = Mat<double>::vstack(parts);
  return 2 * n - stacked.rank(tol);
}

}  // namespace sugra
