#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace sugra {

/// Exact rational scalar used throughout the exact-arithmetic layer.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Complex number over an arbitrary commutative ring (std::complex is
/// specified for floating point only).
template <class T>
struct Cx {
  T re{};
  T im{};

  Cx() = default;
  Cx(T r) : re(std::move(r)) {}
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator/(const Cx& a, const Cx& b) {
    T n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Cx& operator+=(const Cx& b) { *this = *this + b; return *this; }
  Cx& operator-=(const Cx& b) { *this = *this - b; return *this; }
  Cx& operator*=(const Cx& b) { *this = *this * b; return *this; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }
};

template <class T>
Cx<T> conj(const Cx<T>& z) { return {z.re, -z.im}; }

using CxRat = Cx<Rat>;

inline CxRat cxrat_i() { return CxRat(Rat(0), Rat(1)); }

// --- scalar traits used by the generic linear algebra -----------------------

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static constexpr bool exact = true;
  static double magnitude(const Rat& x) { return std::abs(x.convert_to<double>()); }
  static bool is_zero(const Rat& x) { return x == 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double magnitude(double x) { return std::abs(x); }
  static bool is_zero(double x) { return x == 0.0; }
};

template <class T>
struct ScalarTraits<Cx<T>> {
  static constexpr bool exact = ScalarTraits<T>::exact;
  static double magnitude(const Cx<T>& z) {
    return ScalarTraits<T>::magnitude(z.re) + ScalarTraits<T>::magnitude(z.im);
  }
  static bool is_zero(const Cx<T>& z) {
    return ScalarTraits<T>::is_zero(z.re) && ScalarTraits<T>::is_zero(z.im);
  }
};

template <class T>
double magnitude(const T& x) { return ScalarTraits<T>::magnitude(x); }

/// Exact rational square root; empty when the argument is not a perfect
/// square of a rational.
std::optional<Rat> exact_sqrt(const Rat& x);

double to_double(const Rat& x);
inline double to_double(double x) { return x; }

}  // namespace sugra
