#include "sugra/patch.hpp"

namespace sugra {

namespace {

double sqrt_abs_det(const Mat<double>& g) { return std::sqrt(std::abs(g.determinant())); }

}  // namespace

Form<double> one_form_d(const ScalarFn& phi, int dim, const Point& p, double h) {
  Form<double> r(dim, 1);
  for (int mu = 0; mu < dim; ++mu) {
    double v = central_diff_scalar(phi, p, mu, h);
    if (v != 0) r.add({mu}, v);
  }
  return r;
}

Form<double> numeric_d(const FormField& f, int dim, int degree, const Point& p,
                       double h) {
  Form<double> r(dim, degree + 1);
  for (int mu = 0; mu < dim; ++mu) {
    Form<double> df = central_diff<Form<double>>(f, p, mu, h);
    r = r + wedge(Form<double>::basis(dim, {mu}), df);
  }
  return r;
}

Tensor3 christoffel(const Patch& patch, const Point& p) {
  int n = patch.dim;
  Mat<double> g = patch.metric(p);
  Mat<double> gi = g.inverse();
  std::vector<Mat<double>> dg;  // dg[mu] = d_mu g
  dg.reserve(n);
  for (int mu = 0; mu < n; ++mu)
    dg.push_back(central_diff<Mat<double>>(patch.metric, p, mu, patch.step));
  Tensor3 gamma(n);
  for (int lam = 0; lam < n; ++lam)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        double s = 0;
        for (int rho = 0; rho < n; ++rho)
          s += gi(lam, rho) * (dg[mu](rho, nu) + dg[nu](rho, mu) - dg[rho](mu, nu));
        gamma(lam, mu, nu) = 0.5 * s;
      }
  return gamma;
}

Tensor4 riemann_tensor(const Patch& patch, const Point& p) {
  int n = patch.dim;
  std::function<Tensor3(const Point&)> gm = [&](const Point& q) {
    return christoffel(patch, q);
  };
  Tensor3 gamma = gm(p);
  std::vector<Tensor3> dgamma;
  dgamma.reserve(n);
  for (int mu = 0; mu < n; ++mu)
    dgamma.push_back(central_diff<Tensor3>(gm, p, mu, patch.step));
  // R^rho_{sigma mu nu} = d_mu G^rho_{nu sigma} - d_nu G^rho_{mu sigma}
  //   + G^rho_{mu lam} G^lam_{nu sigma} - G^rho_{nu lam} G^lam_{mu sigma}
  Tensor4 r(n);
  for (int rho = 0; rho < n; ++rho)
    for (int sig = 0; sig < n; ++sig)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double s = dgamma[mu](rho, nu, sig) - dgamma[nu](rho, mu, sig);
          for (int lam = 0; lam < n; ++lam)
            s += gamma(rho, mu, lam) * gamma(lam, nu, sig) -
                 gamma(rho, nu, lam) * gamma(lam, mu, sig);
          r(rho, sig, mu, nu) = s;
        }
  return r;
}

Mat<double> ricci_tensor(const Patch& patch, const Point& p) {
  int n = patch.dim;
  Tensor4 rm = riemann_tensor(patch, p);
  // Ric(X,Y) = tr(Z -> R(Z,X)Y)
  Mat<double> ric(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      double s = 0;
      for (int rho = 0; rho < n; ++rho) s += rm(rho, nu, rho, mu);
      ric(mu, nu) = s;
    }
  return ric;
}

double scalar_curvature(const Patch& patch, const Point& p) {
  int n = patch.dim;
  Mat<double> gi = patch.metric(p).inverse();
  Mat<double> ric = ricci_tensor(patch, p);
  double s = 0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) s += gi(mu, nu) * ric(mu, nu);
  return s;
}

Mat<double> hessian(const ScalarFn& phi, const Patch& patch, const Point& p) {
  int n = patch.dim;
  Tensor3 gamma = christoffel(patch, p);
  std::vector<double> dphi(n);
  for (int mu = 0; mu < n; ++mu) dphi[mu] = central_diff_scalar(phi, p, mu, patch.step);
  Mat<double> h(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      double s = central_diff2_scalar(phi, p, mu, nu, patch.step);
      for (int lam = 0; lam < n; ++lam) s -= gamma(lam, mu, nu) * dphi[lam];
      h(mu, nu) = s;
    }
  return h;
}

double laplacian(const ScalarFn& phi, const Patch& patch, const Point& p) {
  int n = patch.dim;
  double div = 0;
  for (int mu = 0; mu < n; ++mu) {
    ScalarFn flux = [&, mu](const Point& q) {
      Mat<double> g = patch.metric(q);
      Mat<double> gi = g.inverse();
      double s = 0;
      for (int nu = 0; nu < n; ++nu)
        s += gi(mu, nu) * central_diff_scalar(phi, q, nu, patch.step);
      return sqrt_abs_det(g) * s;
    };
    div += central_diff_scalar(flux, p, mu, patch.step);
  }
  return div / sqrt_abs_det(patch.metric(p));
}

double laplacian_via_hodge(const ScalarFn& phi, const Patch& patch, const Point& p) {
  int n = patch.dim;
  std::function<Form<double>(const Point&)> star_dphi = [&](const Point& q) {
    return hodge_star(one_form_d(phi, n, q, patch.step), patch.metric_at(q));
  };
  Form<double> top = numeric_d(star_dphi, n, n - 1, p, patch.step);
  IndexTuple all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  double vol = sqrt_abs_det(patch.metric(p)) * patch.orientation;
  return top.coeff(all) / vol;
}

FramePatch::FrameAt FramePatch::frame_at(const Point& p) const {
  int n = patch.dim;
  Mat<double> g = patch.metric(p);
  // g = L eta L^T with L lower triangular, eta = diag(+-1).
  Mat<double> l(n, n);
  std::vector<int> eta(n);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= eta[k] * l(j, k) * l(j, k);
    if (std::abs(d) < 1e-14) throw std::runtime_error("frame_at: degenerate metric");
    eta[j] = d > 0 ? 1 : -1;
    l(j, j) = std::sqrt(std::abs(d));
    for (int i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= eta[k] * l(i, k) * l(j, k);
      l(i, j) = s / (eta[j] * l(j, j));
    }
  }
  Mat<double> coframe = l.transposed();        // alpha^a_mu = L^T(a, mu)
  Mat<double> vectors = coframe.inverse();     // e_a^mu, column a
  return {vectors, coframe, eta};
}

Tensor3 FramePatch::frame_connection(const Point& p) const {
  return koszul_frame_connection(
      patch, [this](const Point& q) { return frame_at(q).vectors; }, p);
}

Tensor3 koszul_frame_connection(const Patch& patch,
                                const std::function<Mat<double>(const Point&)>& frame_fn,
                                const Point& p) {
  int n = patch.dim;
  Mat<double> g = patch.metric(p);
  Mat<double> e = frame_fn(p);
  std::vector<Mat<double>> de(n, Mat<double>(n, n));
  for (int nu = 0; nu < n; ++nu)
    de[nu] = central_diff<Mat<double>>(frame_fn, p, nu, patch.step);
  // comm(a,b)^mu = [e_a, e_b]^mu
  auto comm = [&](int a, int b, int mu) {
    double s = 0;
    for (int nu = 0; nu < n; ++nu)
      s += e(nu, a) * de[nu](mu, b) - e(nu, b) * de[nu](mu, a);
    return s;
  };
  Tensor3 omega(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        // 2 w_{cab} = g([e_c,e_a],e_b) - g([e_c,e_b],e_a) - g([e_a,e_b],e_c)
        double s = 0;
        for (int mu = 0; mu < n; ++mu)
          for (int nu = 0; nu < n; ++nu)
            s += g(mu, nu) * (comm(c, a, mu) * e(nu, b) - comm(c, b, mu) * e(nu, a) -
                              comm(a, b, mu) * e(nu, c));
        omega(c, a, b) = 0.5 * s;
      }
  return omega;
}

std::vector<std::vector<Form<double>>> FramePatch::connection_1forms(const Point& p) const {
  int n = patch.dim;
  Tensor3 w = frame_connection(p);
  Mat<double> coframe = frame_at(p).coframe;
  std::vector<std::vector<Form<double>>> out(n, std::vector<Form<double>>(n, Form<double>(n, 1)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int mu = 0; mu < n; ++mu) {
        double s = 0;
        for (int c = 0; c < n; ++c) s += w(c, a, b) * coframe(c, mu);
        if (s != 0) out[a][b].add({mu}, s);
      }
      out[a][b].prune();
    }
  return out;
}

std::vector<std::vector<Form<double>>> FramePatch::curvature_2forms(const Point& p) const {
  int n = patch.dim;
  Tensor4 rm = riemann_tensor(patch, p);
  Mat<double> g = patch.metric(p);
  Mat<double> e = frame_at(p).vectors;
  std::vector<std::vector<Form<double>>> out(n, std::vector<Form<double>>(n, Form<double>(n, 2)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // Omega_{ab}(d_mu, d_nu) = g(R(d_mu,d_nu) e_a, e_b)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu) {
          double s = 0;
          for (int rho = 0; rho < n; ++rho)
            for (int sig = 0; sig < n; ++sig)
              for (int tau = 0; tau < n; ++tau)
                s += g(rho, tau) * rm(rho, sig, mu, nu) * e(sig, a) * e(tau, b);
          if (s != 0) out[a][b].add({mu, nu}, s);
        }
      out[a][b].prune();
    }
  return out;
}

CurvatureData curvature(const FramePatch& fp, const Point& p) {
  const Patch& patch = fp.patch;
  CurvatureData cd;
  cd.dim = patch.dim;
  cd.riemann = riemann_tensor(patch, p);
  int n = patch.dim;
  Mat<double> gi = patch.metric(p).inverse();
  cd.ricci = Mat<double>(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      double s = 0;
      for (int rho = 0; rho < n; ++rho) s += cd.riemann(rho, nu, rho, mu);
      cd.ricci(mu, nu) = s;
    }
  cd.scalar = 0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) cd.scalar += gi(mu, nu) * cd.ricci(mu, nu);
  cd.frame_omega = fp.frame_connection(p);
  cd.curvature_2forms = fp.curvature_2forms(p);
  cd.reduced_accuracy = !patch.stencil_ok(p);
  return cd;
}

ConformalReport conformal_rescale_check(const Patch& patch, const ScalarFn& phi,
                                        const Point& p, const Form<double>& probe) {
  int n = patch.dim;
  double ph = phi(p);
  Patch resc = patch;
  resc.metric = [patch, phi](const Point& q) {
    return std::exp(-phi(q) / 2) * patch.metric(q);
  };

  ConformalReport rep;
  rep.scalar_direct = scalar_curvature(resc, p);
  double lap = laplacian(phi, patch, p);
  Mat<double> gi = patch.metric(p).inverse();
  double dphi2 = 0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      dphi2 += gi(mu, nu) * central_diff_scalar(phi, p, mu, patch.step) *
               central_diff_scalar(phi, p, nu, patch.step);
  double r = scalar_curvature(patch, p);
  rep.scalar_formula =
      std::exp(ph / 2) *
      (r + 0.5 * (n - 1) * lap - (n - 1) * (n - 2) / 16.0 * dphi2);

  rep.dvol_ratio = sqrt_abs_det(resc.metric(p)) / sqrt_abs_det(patch.metric(p));
  rep.dvol_expected = std::exp(-n * ph / 4.0);

  int k = probe.degree();
  Metric<double> g0 = patch.metric_at(p);
  Metric<double> ge = resc.metric_at(p);
  double n0 = scalar_product(probe, probe, g0);
  rep.norm_ratio = scalar_product(probe, probe, ge) / n0;
  rep.norm_expected = std::exp(k * ph / 2.0);

  // *F = e^{(n-2k) phi/4} *_E F; in dimension 10 this is e^{(5-k) phi/2}.
  Form<double> diff =
      hodge_star(probe, g0) - std::exp((n - 2 * k) * ph / 4.0) * hodge_star(probe, ge);
  rep.star_max_err = diff.max_abs();
  return rep;
}

}  // namespace sugra
