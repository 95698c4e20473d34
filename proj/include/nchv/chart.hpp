#pragma once

#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "nchv/jet.hpp"
#include "nchv/tensor.hpp"

namespace nchv {

using Point = std::vector<double>;

/// Axis-aligned coordinate box.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> x) const;
  /// The box with `fraction` of each side's width removed at both ends.
  Box shrunk(double fraction) const;
};

/// Scalar type of a `std::span<const S>` argument inside generic field
/// lambdas.
template <typename Span>
using scalar_of = std::remove_cv_t<typename Span::element_type>;

template <typename S>
using FieldFn = std::function<Tensor<S>(std::span<const S>)>;

/// A smooth tensor field on a chart, evaluable at plain points and at
/// jets of order 1 to 3.
///
/// Constructed from a generic callable taking `std::span<const S>` and
/// returning `Tensor<S>`; one instantiation per scalar type is stored.
class TensorField {
 public:
  TensorField() = default;

  template <typename F>
  TensorField(int up, int down, F f) : up_(up), down_(down), fns_(f, f, f, f) {}

  int up() const { return up_; }
  int down() const { return down_; }
  bool empty() const { return !std::get<0>(fns_); }

  template <typename S>
  Tensor<S> operator()(std::span<const S> x) const {
    return std::get<FieldFn<S>>(fns_)(x);
  }

  /// Evaluates at `x` with every coordinate seeded as an AD variable.
  template <typename S>
  Tensor<S> at(std::span<const double> x) const {
    const auto seeded = seed_point<S>(x);
    return (*this)(std::span<const S>(seeded.data(), x.size()));
  }

 private:
  int up_ = 0;
  int down_ = 0;
  std::tuple<FieldFn<double>, FieldFn<Jet<1>>, FieldFn<Jet<2>>, FieldFn<Jet<3>>> fns_;
};

/// Extra membership test for charts whose domain is not a full box.
/// `margin` is the fraction of the region to exclude near its boundary or
/// near chart-singular loci.
using RegionTest = std::function<bool(std::span<const double> x, double margin)>;

/// A single coordinate chart with a Riemannian metric.
class ChartManifold {
 public:
  static constexpr double kSamplingMargin = 0.1;

  ChartManifold() = default;
  ChartManifold(std::string name, Box domain, TensorField metric, RegionTest region = {});

  const std::string& name() const { return name_; }
  int dim() const { return domain_.dim(); }
  const Box& domain() const { return domain_; }
  const TensorField& metric() const { return metric_; }

  bool contains(std::span<const double> x) const;
  /// Sub-box from which sample points are drawn.
  Box sampling_box() const { return domain_.shrunk(kSamplingMargin); }
  /// True if `x` is an admissible sample point (margin and singular loci
  /// excluded).
  bool admits_sample(std::span<const double> x) const;

  /// Throws DomainError unless `x` lies in the chart domain.
  void require_point(std::span<const double> x) const;

 private:
  std::string name_;
  Box domain_;
  TensorField metric_;
  RegionTest region_;
};

/// A tangent vector: chart components at a base point.
struct TangentVector {
  Point base;
  Vec v;
};

}  // namespace nchv
