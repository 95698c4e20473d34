#pragma once

// Forward-mode automatic differentiation by nested dual numbers.
//
// Dual<T> carries a value and one partial per chart direction. Nesting
// Dual<Dual<double>> gives exact second derivatives, three levels give
// third derivatives. The outer partial of a Jet<K> is itself a Jet<K-1>
// holding the derivatives of that partial, so derivative tensors can be
// peeled off level by level.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <type_traits>

namespace nchv {

/// Largest chart dimension the AD payload is sized for.
inline constexpr int kMaxChartDim = 5;

template <typename T>
struct Dual {
  T v{};
  std::array<T, kMaxChartDim> d{};

  constexpr Dual() = default;
  constexpr Dual(double c) : v(c) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(const T& value, const std::array<T, kMaxChartDim>& partials)
      : v(value), d(partials) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < kMaxChartDim; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < kMaxChartDim; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < kMaxChartDim; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator*=(double c) {
    v *= c;
    for (auto& x : d) x *= c;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const T q = v / o.v;
    for (int i = 0; i < kMaxChartDim; ++i) d[i] = (d[i] - q * o.d[i]) / o.v;
    v = q;
    return *this;
  }
};

template <typename T>
struct is_dual : std::false_type {};
template <typename T>
struct is_dual<Dual<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_dual_v = is_dual<T>::value;

namespace detail {
template <int K>
struct JetOf {
  using type = Dual<typename JetOf<K - 1>::type>;
};
template <>
struct JetOf<0> {
  using type = double;
};
}  // namespace detail

/// Scalar carrying all partial derivatives up to total order K.
template <int K>
using Jet = typename detail::JetOf<K>::type;

template <typename T>
Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <typename T>
Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <typename T>
Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <typename T>
Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

template <typename T>
Dual<T> operator-(Dual<T> a) {
  a.v = -a.v;
  for (auto& x : a.d) x = -x;
  return a;
}
template <typename T>
Dual<T> operator+(Dual<T> a) { return a; }

template <typename T>
Dual<T> operator+(Dual<T> a, double c) { a.v += c; return a; }
template <typename T>
Dual<T> operator+(double c, Dual<T> a) { a.v += c; return a; }
template <typename T>
Dual<T> operator-(Dual<T> a, double c) { a.v -= c; return a; }
template <typename T>
Dual<T> operator-(double c, const Dual<T>& a) { return -a + c; }
template <typename T>
Dual<T> operator*(Dual<T> a, double c) { return a *= c; }
template <typename T>
Dual<T> operator*(double c, Dual<T> a) { return a *= c; }
template <typename T>
Dual<T> operator/(Dual<T> a, double c) { return a *= (1.0 / c); }
template <typename T>
Dual<T> operator/(double c, const Dual<T>& a) { return Dual<T>(c) / a; }

/// Plain value at the innermost level.
inline double value_of(double x) { return x; }
template <typename T>
double value_of(const Dual<T>& x) { return value_of(x.v); }

template <typename T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.v);
  const T scale = 0.5 / s;
  Dual<T> r;
  r.v = s;
  for (int i = 0; i < kMaxChartDim; ++i) r.d[i] = x.d[i] * scale;
  return r;
}

template <typename T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  const T c = cos(x.v);
  Dual<T> r;
  r.v = sin(x.v);
  for (int i = 0; i < kMaxChartDim; ++i) r.d[i] = x.d[i] * c;
  return r;
}

template <typename T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  const T s = -sin(x.v);
  Dual<T> r;
  r.v = cos(x.v);
  for (int i = 0; i < kMaxChartDim; ++i) r.d[i] = x.d[i] * s;
  return r;
}

template <typename T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  const T e = exp(x.v);
  Dual<T> r;
  r.v = e;
  for (int i = 0; i < kMaxChartDim; ++i) r.d[i] = x.d[i] * e;
  return r;
}

template <typename T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  const T inv = 1.0 / x.v;
  Dual<T> r;
  r.v = log(x.v);
  for (int i = 0; i < kMaxChartDim; ++i) r.d[i] = x.d[i] * inv;
  return r;
}

/// Chart coordinate `x` seeded as the independent variable `axis` at every
/// nesting level.
template <typename S>
S seed_variable(double x, int axis) {
  if constexpr (std::is_same_v<S, double>) {
    (void)axis;
    return x;
  } else {
    using Inner = decltype(S{}.v);
    S r;
    r.v = seed_variable<Inner>(x, axis);
    r.d[axis] = Inner(1.0);
    return r;
  }
}

template <typename S>
std::array<S, kMaxChartDim> seed_point(std::span<const double> x) {
  std::array<S, kMaxChartDim> out{};
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = seed_variable<S>(x[i], static_cast<int>(i));
  return out;
}

}  // namespace nchv
