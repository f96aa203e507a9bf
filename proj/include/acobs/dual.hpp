#pragma once

#include <cmath>
#include <concepts>
#include <type_traits>

namespace acobs {

// Forward-mode dual number a + b·ε with ε² = 0. Nesting Dual<Dual<double>>
// yields mixed second partials: seed the outer ε along one coordinate and the
// inner ε along another.
template <class T>
struct Dual {
  T re{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(double v) : re(v), eps(0.0) {}  // NOLINT(implicit)
  template <class U>
    requires(!std::same_as<U, double> && std::is_convertible_v<U, T>)
  constexpr Dual(const U& v) : re(v), eps(0.0) {}  // NOLINT(implicit)
  constexpr Dual(const T& r, const T& e) : re(r), eps(e) {}

  constexpr Dual& operator+=(const Dual& o) {
    re += o.re;
    eps += o.eps;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    re -= o.re;
    eps -= o.eps;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    eps = eps * o.re + re * o.eps;
    re = re * o.re;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    const T inv = T(1.0) / o.re;
    eps = (eps - re * inv * o.eps) * inv;
    re = re * inv;
    return *this;
  }
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

inline constexpr double value_of(double x) { return x; }
template <class T>
constexpr double value_of(const Dual<T>& x) {
  return value_of(x.re);
}

template <class T> constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.re, -a.eps}; }
template <class T> constexpr Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> constexpr Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> constexpr Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> constexpr Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <class T> constexpr Dual<T> operator+(Dual<T> a, double b) { a.re += b; return a; }
template <class T> constexpr Dual<T> operator+(double b, Dual<T> a) { a.re += b; return a; }
template <class T> constexpr Dual<T> operator-(Dual<T> a, double b) { a.re -= b; return a; }
template <class T> constexpr Dual<T> operator-(double b, const Dual<T>& a) { return {b - a.re, -a.eps}; }
template <class T> constexpr Dual<T> operator*(const Dual<T>& a, double b) { return {a.re * b, a.eps * b}; }
template <class T> constexpr Dual<T> operator*(double b, const Dual<T>& a) { return {a.re * b, a.eps * b}; }
template <class T> constexpr Dual<T> operator/(const Dual<T>& a, double b) { return {a.re / b, a.eps / b}; }
template <class T> constexpr Dual<T> operator/(double b, const Dual<T>& a) { return Dual<T>(b) / a; }

template <class T> constexpr bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> constexpr bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }
template <class T> constexpr bool operator<(const Dual<T>& a, double b) { return value_of(a) < b; }
template <class T> constexpr bool operator>(const Dual<T>& a, double b) { return value_of(a) > b; }

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.re);
  return {s, a.eps / (2.0 * s)};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  const T e = exp(a.re);
  return {e, e * a.eps};
}

template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  return {log(a.re), a.eps / a.re};
}

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.re), cos(a.re) * a.eps};
}

template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.re), -sin(a.re) * a.eps};
}

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;

}  // namespace acobs
