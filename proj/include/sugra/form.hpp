#pragma once

#include "sugra/matrix.hpp"
#include "sugra/scalar.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace sugra {

using IndexTuple = std::vector<int>;

/// Pointwise metric data: components g_{mu nu}, inverse, |det g| and an
/// orientation sign. Signature is expected Lorentzian (-,+,...,+) but only
/// nondegeneracy is enforced here.
template <class T>
struct Metric {
  int dim = 0;
  Mat<T> components;
  Mat<T> inverse;
  T det_abs{};
  int orientation = 1;

  static Metric from_components(const Mat<T>& g, int orientation = 1) {
    Metric m;
    m.dim = g.rows();
    m.components = g;
    m.inverse = g.inverse();
    T det = g.determinant();
    m.det_abs = magnitude_sign(det) < 0 ? -det : det;
    m.orientation = orientation;
    return m;
  }

  static Metric minkowski(int dim, int orientation = 1) {
    Mat<T> g(dim, dim);
    g(0, 0) = T(-1);
    for (int i = 1; i < dim; ++i) g(i, i) = T(1);
    return from_components(g, orientation);
  }

 private:
  static int magnitude_sign(const T& x);
};

template <>
inline int Metric<Rat>::magnitude_sign(const Rat& x) { return x < 0 ? -1 : 1; }
template <>
inline int Metric<double>::magnitude_sign(const double& x) { return x < 0 ? -1 : 1; }
// Complexified metrics carry real data; the sign lives in the real part.
template <>
inline int Metric<Cx<Rat>>::magnitude_sign(const Cx<Rat>& x) { return x.re < 0 ? -1 : 1; }

/// Antisymmetric degree-k coefficient table over one tangent space.
/// Coefficients are stored on strictly increasing index tuples only; any
/// insertion through set()/add() normalizes order and sign.
template <class T>
class Form {
 public:
  Form() = default;
  Form(int dim, int degree) : dim_(dim), degree_(degree) {
    if (degree < 0 || degree > dim)
      throw std::invalid_argument("Form: degree out of range");
  }

  static Form scalar(int dim, T value) {
    Form f(dim, 0);
    f.coeffs_[{}] = std::move(value);
    return f;
  }

  /// The coordinate basis form dx^{i1} ^ ... ^ dx^{ik}.
  static Form basis(int dim, IndexTuple idx) {
    Form f(dim, int(idx.size()));
    f.add(idx, T(1));
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<IndexTuple, T>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& [k, v] : coeffs_)
      if (!ScalarTraits<T>::is_zero(v)) return false;
    return true;
  }

  T coeff(const IndexTuple& idx) const {
    auto [sorted, sign] = normalize(idx);
    if (sign == 0) return T{};
    auto it = coeffs_.find(sorted);
    if (it == coeffs_.end()) return T{};
    return sign > 0 ? it->second : -it->second;
  }

  void add(const IndexTuple& idx, const T& value) {
    if (int(idx.size()) != degree_)
      throw std::invalid_argument("Form::add: tuple length != degree");
    auto [sorted, sign] = normalize(idx);
    if (sign == 0) return;
    coeffs_[sorted] += sign > 0 ? value : -value;
  }

  void set(const IndexTuple& idx, const T& value) {
    auto [sorted, sign] = normalize(idx);
    if (sign == 0)
      throw std::invalid_argument("Form::set: repeated index");
    coeffs_[sorted] = sign > 0 ? value : -value;
  }

  void prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
      it = ScalarTraits<T>::is_zero(it->second) ? coeffs_.erase(it) : std::next(it);
  }

  friend Form operator+(const Form& a, const Form& b) {
    check_compatible(a, b);
    Form r = a;
    for (const auto& [k, v] : b.coeffs_) r.coeffs_[k] += v;
    return r;
  }
  friend Form operator-(const Form& a, const Form& b) {
    check_compatible(a, b);
    Form r = a;
    for (const auto& [k, v] : b.coeffs_) r.coeffs_[k] -= v;
    return r;
  }
  friend Form operator-(const Form& a) {
    Form r = a;
    for (auto& [k, v] : r.coeffs_) v = -v;
    return r;
  }
  friend Form operator*(const T& s, const Form& a) {
    Form r = a;
    for (auto& [k, v] : r.coeffs_) v = s * v;
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& [k, v] : coeffs_) m = std::max(m, magnitude(v));
    return m;
  }

  /// Exact equality after pruning zeros.
  friend bool operator==(const Form& a, const Form& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_) return false;
    Form x = a, y = b;
    x.prune();
    y.prune();
    return x.coeffs_ == y.coeffs_;
  }

  static std::pair<IndexTuple, int> normalize(IndexTuple idx) {
    int sign = 1;
    // insertion sort, tracking transposition parity
    for (size_t i = 1; i < idx.size(); ++i)
      for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
        if (idx[j - 1] == idx[j]) return {{}, 0};
        std::swap(idx[j - 1], idx[j]);
        sign = -sign;
      }
    return {idx, sign};
  }

 private:
  static void check_compatible(const Form& a, const Form& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
      throw std::invalid_argument("Form: dimension/degree mismatch");
  }

  int dim_ = 0;
  int degree_ = 0;
  std::map<IndexTuple, T> coeffs_;
};

/// Enumerate strictly increasing k-tuples in [0, dim) in lexicographic order.
std::vector<IndexTuple> increasing_tuples(int dim, int k);

/// Sign of the permutation sending (a..., b...) to 0..n-1; 0 if not disjoint
/// or not a full cover.
int complement_sign(const IndexTuple& a, const IndexTuple& b, int dim);

template <class T>
Form<T> wedge(const Form<T>& f, const Form<T>& g) {
  if (f.dim() != g.dim())
    throw std::invalid_argument("wedge: dimension mismatch");
  if (f.degree() + g.degree() > f.dim())
    throw std::invalid_argument("wedge: degree overflow");
  Form<T> r(f.dim(), f.degree() + g.degree());
  for (const auto& [i, fv] : f.coeffs()) {
    if (ScalarTraits<T>::is_zero(fv)) continue;
    for (const auto& [j, gv] : g.coeffs()) {
      if (ScalarTraits<T>::is_zero(gv)) continue;
      IndexTuple merged = i;
      merged.insert(merged.end(), j.begin(), j.end());
      r.add(merged, fv * gv);
    }
  }
  r.prune();
  return r;
}

/// Contraction i_X F with a vector X given by components X^mu.
template <class T>
Form<T> interior(const std::vector<T>& x, const Form<T>& f) {
  if (int(x.size()) != f.dim())
    throw std::invalid_argument("interior: vector length mismatch");
  if (f.degree() == 0)
    throw std::invalid_argument("interior: cannot contract a 0-form");
  Form<T> r(f.dim(), f.degree() - 1);
  for (const auto& [idx, v] : f.coeffs()) {
    for (size_t p = 0; p < idx.size(); ++p) {
      if (ScalarTraits<T>::is_zero(x[idx[p]])) continue;
      IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (size_t q = 0; q < idx.size(); ++q)
        if (q != p) rest.push_back(idx[q]);
      T term = x[idx[p]] * v;
      r.add(rest, (p % 2 == 0) ? term : -term);
    }
  }
  r.prune();
  return r;
}

/// X -> g(X, .) as a 1-form.
template <class T>
Form<T> flat(const std::vector<T>& x, const Metric<T>& g) {
  Form<T> r(g.dim, 1);
  for (int mu = 0; mu < g.dim; ++mu) {
    T v{};
    for (int nu = 0; nu < g.dim; ++nu) v += g.components(mu, nu) * x[nu];
    if (!ScalarTraits<T>::is_zero(v)) r.add({mu}, v);
  }
  return r;
}

template <class T>
std::vector<T> sharp(const Form<T>& alpha, const Metric<T>& g) {
  if (alpha.degree() != 1)
    throw std::invalid_argument("sharp: expects a 1-form");
  std::vector<T> x(g.dim);
  for (int mu = 0; mu < g.dim; ++mu) {
    T v{};
    for (int nu = 0; nu < g.dim; ++nu) v += g.inverse(mu, nu) * alpha.coeff({nu});
    x[mu] = v;
  }
  return x;
}

/// <F,G> = sum over increasing tuples of F_I G^I. With sparse storage this is
/// sum_{I,J} F_I G_J det(g^{I_a J_b}).
template <class T>
T scalar_product(const Form<T>& f, const Form<T>& g, const Metric<T>& metric) {
  if (f.degree() != g.degree())
    throw std::invalid_argument("scalar_product: degree mismatch");
  if (f.degree() == 0) {
    T a = f.coeff({}), b = g.coeff({});
    return a * b;
  }
  int k = f.degree();
  T total{};
  for (const auto& [i, fv] : f.coeffs()) {
    if (ScalarTraits<T>::is_zero(fv)) continue;
    for (const auto& [j, gv] : g.coeffs()) {
      if (ScalarTraits<T>::is_zero(gv)) continue;
      Mat<T> m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = metric.inverse(i[a], j[b]);
      total += fv * gv * m.determinant();
    }
  }
  return total;
}

template <class T>
T sqrt_scalar(const T& x);
template <>
inline double sqrt_scalar(const double& x) { return std::sqrt(x); }
template <>
inline Rat sqrt_scalar(const Rat& x) {
  auto r = exact_sqrt(x);
  if (!r)
    throw std::runtime_error("sqrt_scalar: |det g| has no exact rational root");
  return *r;
}

/// dvol = sqrt|g| dx^0 ^ ... ^ dx^n times the orientation sign.
template <class T>
Form<T> volume_form(const Metric<T>& g) {
  Form<T> r(g.dim, g.dim);
  IndexTuple top(g.dim);
  for (int i = 0; i < g.dim; ++i) top[i] = i;
  T c = sqrt_scalar<T>(g.det_abs);
  r.add(top, g.orientation > 0 ? c : -c);
  return r;
}

/// Hodge star in the convention F ^ *G = <F,G> dvol, read off the defining
/// relation on the degree-k basis. dx^I ^ dx^{I^c} hits the volume tuple with
/// exactly one sign, so no linear solve is needed: the coefficient of *G on
/// the complement of I is complement_sign(I, I^c) * <dx^I, G> * sqrt|g|.
template <class T>
Form<T> hodge_star(const Form<T>& g_form, const Metric<T>& metric) {
  int n1 = metric.dim, k = g_form.degree();
  auto i_basis = increasing_tuples(n1, k);
  T vol_coeff = sqrt_scalar<T>(metric.det_abs);
  if (metric.orientation < 0) vol_coeff = -vol_coeff;
  Form<T> result(n1, n1 - k);
  for (const auto& idx : i_basis) {
    Form<T> fi = Form<T>::basis(n1, idx);
    T sp = scalar_product(fi, g_form, metric);
    if (ScalarTraits<T>::is_zero(sp)) continue;
    IndexTuple comp;
    comp.reserve(n1 - k);
    for (int i = 0, p = 0; i < n1; ++i) {
      while (p < k && idx[p] < i) ++p;
      if (p == k || idx[p] != i) comp.push_back(i);
    }
    int s = complement_sign(idx, comp, n1);
    T term = sp * vol_coeff;
    result.add(comp, s > 0 ? term : T(-term));
  }
  result.prune();
  return result;
}

}  // namespace sugra
