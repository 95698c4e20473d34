#pragma once

// Dense tensor components on a chart and small fixed-capacity vectors for
// pointwise work.

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "nchv/jet.hpp"

namespace nchv {

/// Base of all errors raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Metric not invertible (or not positive) at a chart point.
class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

/// Point outside the chart domain, or a value of the wrong kind.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A frame that is not orthonormal, or a projection without full rank.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// The almost contact data fails its own axioms.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A residual came out NaN or infinite.
class NumericalError : public Error {
 public:
  using Error::Error;
};

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxChartDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxChartDim, kMaxChartDim>;

/// Components of an (r,s) tensor in chart coordinates.
///
/// Index order is all contravariant slots first, then the covariant ones,
/// flattened row-major with base `dim`. Derivative indices appended by the
/// calculus routines always go last.
template <typename S>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int up, int down)
      : dim_(dim), up_(up), down_(down), c_(flat_size(dim, up + down), S(0.0)) {}

  int dim() const { return dim_; }
  int up() const { return up_; }
  int down() const { return down_; }
  int rank() const { return up_ + down_; }
  std::size_t size() const { return c_.size(); }

  S& operator[](std::size_t i) { return c_[i]; }
  const S& operator[](std::size_t i) const { return c_[i]; }

  template <typename... I>
  S& operator()(I... idx) { return c_[offset({static_cast<int>(idx)...})]; }
  template <typename... I>
  const S& operator()(I... idx) const { return c_[offset({static_cast<int>(idx)...})]; }

  std::vector<S>& data() { return c_; }
  const std::vector<S>& data() const { return c_; }

  static std::size_t flat_size(int dim, int rank) {
    std::size_t n = 1;
    for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
    return n;
  }

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return o;
  }

  int dim_ = 0;
  int up_ = 0;
  int down_ = 0;
  std::vector<S> c_;
};

using TensorValue = Tensor<double>;

/// Drops one level of differentiation: the values of a Dual-valued tensor.
template <typename S>
Tensor<S> value_part(const Tensor<Dual<S>>& t) {
  Tensor<S> out(t.dim(), t.up(), t.down());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].v;
  return out;
}

/// Partial derivatives of a Dual-valued tensor, with the derivative index
/// appended as a trailing covariant slot. The result is a component array,
/// not a tensor.
template <typename S>
Tensor<S> partials(const Tensor<Dual<S>>& t) {
  const int n = t.dim();
  Tensor<S> out(n, t.up(), t.down() + 1);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int c = 0; c < n; ++c) out[i * static_cast<std::size_t>(n) + c] = t[i].d[c];
  return out;
}

inline Vec to_vec(const Tensor<double>& t) {
  Vec v(t.dim());
  for (int i = 0; i < t.dim(); ++i) v[i] = t[i];
  return v;
}

inline Mat to_mat(const Tensor<double>& t) {
  const int n = t.dim();
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
  return m;
}

}  // namespace nchv
