#pragma once

// Almost contact metric structures (θ, ξ, η) on a chart and the pointwise
// geometry built from them.

#include <span>
#include <string>
#include <vector>

#include "nchv/calculus.hpp"
#include "nchv/chart.hpp"
#include "nchv/tensor.hpp"

namespace nchv {

class AlmostContactStructure {
 public:
  AlmostContactStructure() = default;
  /// theta is a (1,1) field, xi a (1,0) field, eta a (0,1) field.
  AlmostContactStructure(ChartManifold manifold, TensorField theta, TensorField xi, TensorField eta);

  const ChartManifold& manifold() const { return manifold_; }
  const TensorField& theta() const { return theta_; }
  const TensorField& xi() const { return xi_; }
  const TensorField& eta() const { return eta_; }
  int dim() const { return manifold_.dim(); }
  /// n with dim = 2n + 1.
  int half_rank() const { return (dim() - 1) / 2; }

 private:
  ChartManifold manifold_;
  TensorField theta_;
  TensorField xi_;
  TensorField eta_;
};

/// Everything needed at one point, evaluated once: g, θ, ξ, η, Γ, R and the
/// first two covariant derivatives of θ and ξ.
///
/// Conventions for the stored derivative arrays (derivative indices last):
///   dtheta(a,b,c)    = ∇_c θ^a_b
///   ddtheta(a,b,c,d) = ∇_d ∇_c θ^a_b
///   dxi(a,c)         = ∇_c ξ^a
///   ddxi(a,c,d)      = ∇_d ∇_c ξ^a
class LocalStructure {
 public:
  LocalStructure(const AlmostContactStructure& acs, std::span<const double> x);

  const Point& point() const { return x_; }
  int dim() const { return n_; }

  const Mat& metric() const { return g_; }
  const Mat& theta_matrix() const { return theta_; }
  const Vec& xi() const { return xi_; }
  const Vec& eta() const { return eta_; }
  const Tensor<double>& christoffel() const { return gamma_; }
  const Tensor<double>& riemann() const { return riemann_; }
  const Tensor<double>& dtheta() const { return dtheta_; }
  const Tensor<double>& ddtheta() const { return ddtheta_; }
  const Tensor<double>& dxi() const { return dxi_; }
  const Tensor<double>& ddxi() const { return ddxi_; }

  double inner(const Vec& a, const Vec& b) const { return a.dot(g_ * b); }
  double norm(const Vec& a) const;
  double eta_of(const Vec& a) const { return eta_.dot(a); }
  Vec theta(const Vec& a) const { return theta_ * a; }
  /// P = Id - η⊗ξ.
  Vec project(const Vec& a) const { return a - eta_of(a) * xi_; }

  /// ∇_X ξ
  Vec nabla_xi(const Vec& X) const;
  /// (∇_X θ) Y
  Vec nabla_theta(const Vec& X, const Vec& Y) const;
  /// (∇²_{X,Y} θ) Z
  Vec hessian_theta(const Vec& X, const Vec& Y, const Vec& Z) const;
  /// ∇²_{X,Y} ξ
  Vec hessian_xi(const Vec& X, const Vec& Y) const;
  /// R(X,Y)Z
  Vec curvature(const Vec& X, const Vec& Y, const Vec& Z) const;
  /// g(R(X,Y)Z, W)
  double curvature4(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) const {
    return inner(curvature(X, Y, Z), W);
  }

 private:
  Point x_;
  int n_ = 0;
  Mat g_;
  Mat theta_;
  Vec xi_;
  Vec eta_;
  Tensor<double> gamma_;
  Tensor<double> riemann_;
  Tensor<double> dtheta_;
  Tensor<double> ddtheta_;
  Tensor<double> dxi_;
  Tensor<double> ddxi_;
};

struct AxiomResiduals {
  double theta_squared = 0.0;   // |θ² + Id - η⊗ξ|
  double eta_of_xi = 0.0;       // |η(ξ) - 1|
  double xi_unit = 0.0;         // ||ξ| - 1|
  double compatibility = 0.0;   // |g(θ·,θ·) - g + η⊗η|
  double eta_dual = 0.0;        // |η - g(·,ξ)|

  double max() const;
};

/// Norms are taken with respect to g, so the values do not depend on the
/// chart scaling.
AxiomResiduals axiom_residuals(const AlmostContactStructure& acs, std::span<const double> x);
AxiomResiduals axiom_residuals(const LocalStructure& ls);

/// (∇_X θ)(Y).
TangentVector nabla_theta(const AlmostContactStructure& acs, const TangentVector& X, const TangentVector& Y);

struct VectorPair {
  Vec first;
  Vec second;
};

/// max over pairs of |(∇_Xθ)Y + (∇_Yθ)X| / max(1, |(∇_Xθ)Y|, |(∇_Yθ)X|).
double nearly_cosymplectic_residual(const LocalStructure& ls, std::span<const VectorPair> pairs);

struct KillingGeodesic {
  double killing = 0.0;   // max |g(∇_Xξ,Y) + g(∇_Yξ,X)|
  double geodesic = 0.0;  // |∇_ξ ξ|
};

KillingGeodesic killing_geodesic_residuals(const LocalStructure& ls, std::span<const VectorPair> pairs);

/// A point with an orthonormal frame of ker η, completed by ξ.
struct FramePoint {
  Point x;
  std::vector<Vec> horizontal;
  Vec xi;

  /// {F_1, ..., F_2n, ξ}
  std::vector<Vec> full() const;
};

/// Gram-Schmidt on P applied to the coordinate vectors, processed in
/// ascending index order (or in `order` when given). The vector with the
/// smallest residual is dropped and the rest re-orthonormalized.
FramePoint orthonormal_frame(const LocalStructure& ls, std::span<const int> order = {});
FramePoint orthonormal_frame(const AlmostContactStructure& acs, std::span<const double> x);

/// {θF_i} together with ξ.
FramePoint theta_frame(const LocalStructure& ls, const FramePoint& fp);

/// Replaces the horizontal frame by R·F for an orthogonal 2n×2n matrix R.
FramePoint rotate_frame(const FramePoint& fp, const Mat& rotation);

/// Throws FrameError unless {F_i, ξ} is orthonormal to `tol` and η(F_i) = 0.
void check_frame(const LocalStructure& ls, const FramePoint& fp, double tol = 1e-12);

}  // namespace nchv
