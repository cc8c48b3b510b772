#pragma once

#include "sugra/form.hpp"

#include <map>
#include <vector>

namespace sugra {

/// Multivariate polynomial, exponent-vector keyed. The exact layer of the
/// patch calculus: closed under +, *, and partial differentiation.
template <class T>
class Poly {
 public:
  Poly() = default;
  Poly(int c) { if (c != 0) coeffs_[{}] = T(c); }
  explicit Poly(T c) {
    if (!ScalarTraits<T>::is_zero(c)) coeffs_[{}] = std::move(c);
  }

  static Poly variable(int v) {
    Poly p;
    std::vector<int> e(v + 1, 0);
    e[v] = 1;
    p.coeffs_[e] = T(1);
    return p;
  }

  static Poly monomial(std::vector<int> exps, T c) {
    Poly p;
    if (!ScalarTraits<T>::is_zero(c)) p.coeffs_[trim(std::move(exps))] = std::move(c);
    return p;
  }

  const std::map<std::vector<int>, T>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& [e, c] : coeffs_)
      if (!ScalarTraits<T>::is_zero(c)) return false;
    return true;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.coeffs_) r.coeffs_[e] += c;
    r.prune();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [e, c] : b.coeffs_) r.coeffs_[e] -= c;
    r.prune();
    return r;
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) {
        std::vector<int> e(std::max(ea.size(), eb.size()), 0);
        for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.coeffs_[trim(std::move(e))] += ca * cb;
      }
    r.prune();
    return r;
  }
  Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
  Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
  Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(int v) const {
    Poly r;
    for (const auto& [e, c] : coeffs_) {
      if (int(e.size()) <= v || e[v] == 0) continue;
      std::vector<int> d = e;
      d[v] -= 1;
      r.coeffs_[trim(std::move(d))] += T(e[v]) * c;
    }
    r.prune();
    return r;
  }

  template <class U>
  U evaluate(const std::vector<U>& point) const {
    U total{};
    for (const auto& [e, c] : coeffs_) {
      U term = convert_coeff<U>(c);
      for (size_t v = 0; v < e.size(); ++v)
        for (int p = 0; p < e[v]; ++p) term = term * point[v];
      total += term;
    }
    return total;
  }

  double magnitude_sum() const {
    double m = 0;
    for (const auto& [e, c] : coeffs_) m += magnitude(c);
    return m;
  }

  void prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
      it = ScalarTraits<T>::is_zero(it->second) ? coeffs_.erase(it) : std::next(it);
  }

 private:
  template <class U>
  static U convert_coeff(const T& c) {
    if constexpr (std::is_same_v<U, T>) return c;
    else return U(to_double(c));
  }
  static std::vector<int> trim(std::vector<int> e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
  }
  std::map<std::vector<int>, T> coeffs_;
};

template <class T>
struct ScalarTraits<Poly<T>> {
  static constexpr bool exact = ScalarTraits<T>::exact;
  static double magnitude(const Poly<T>& p) { return p.magnitude_sum(); }
  static bool is_zero(const Poly<T>& p) { return p.is_zero(); }
};

using PolyRat = Poly<Rat>;
/// A differential form with polynomial coefficients (exact mode).
using PolyForm = Form<PolyRat>;

/// Exterior derivative; exact, d(dF) = 0 identically.
template <class T>
Form<Poly<T>> exterior_derivative(const Form<Poly<T>>& f) {
  Form<Poly<T>> r(f.dim(), f.degree() + 1);
  for (const auto& [idx, p] : f.coeffs()) {
    for (int v = 0; v < f.dim(); ++v) {
      Poly<T> dp = p.derivative(v);
      if (dp.is_zero()) continue;
      IndexTuple ext;
      ext.push_back(v);
      ext.insert(ext.end(), idx.begin(), idx.end());
      r.add(ext, dp);
    }
  }
  r.prune();
  return r;
}

/// Scalar product of polynomial forms with a constant metric, exact.
template <class T>
Poly<T> scalar_product_const_metric(const Form<Poly<T>>& f, const Form<Poly<T>>& g,
                                    const Metric<T>& metric) {
  if (f.degree() != g.degree())
    throw std::invalid_argument("scalar_product_const_metric: degree mismatch");
  int k = f.degree();
  Poly<T> total;
  for (const auto& [i, fv] : f.coeffs())
    for (const auto& [j, gv] : g.coeffs()) {
      if (k == 0) { total += fv * gv; continue; }
      Mat<T> m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = metric.inverse(i[a], j[b]);
      T det = m.determinant();
      if (ScalarTraits<T>::is_zero(det)) continue;
      total += fv * gv * Poly<T>(det);
    }
  return total;
}

/// Hodge star of a polynomial form with a constant metric: apply the basis
/// star coefficientwise.
template <class T>
Form<Poly<T>> hodge_star_const_metric(const Form<Poly<T>>& f, const Metric<T>& metric) {
  Form<Poly<T>> r(f.dim(), metric.dim - f.degree());
  for (const auto& [idx, p] : f.coeffs()) {
    Form<T> star_basis = hodge_star(Form<T>::basis(metric.dim, idx), metric);
    for (const auto& [jdx, c] : star_basis.coeffs())
      r.add(jdx, p * Poly<T>(c));
  }
  r.prune();
  return r;
}

/// Evaluate a polynomial form at a chart point, giving a numeric Form.
template <class T>
Form<double> evaluate_form(const Form<Poly<T>>& f, const std::vector<double>& point) {
  Form<double> r(f.dim(), f.degree());
  for (const auto& [idx, p] : f.coeffs()) {
    double v = p.template evaluate<double>(point);
    if (v != 0.0) r.add(idx, v);
  }
  return r;
}

}  // namespace sugra
