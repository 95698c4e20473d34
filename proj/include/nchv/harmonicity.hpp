#pragma once

// The projected connection ∇̄ = P∘∇ on the horizontal bundle F = ker η, its
// curvature, the Ricci-* form and the harmonic section / harmonic map
// equations of an almost contact structure.
//
// J is θ restricted to F, extended by Jξ = 0. Frame sums run over the
// horizontal frame {F_i} or over {F_i, ξ} as noted.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "nchv/contact.hpp"

namespace nchv {

/// Left-minus-right accumulator for a scalar identity. The residual is
/// |Σ terms| / max(1, max |term|).
struct ScalarTerms {
  double sum = 0.0;
  double scale = 0.0;

  ScalarTerms& operator+=(double t) {
    sum += t;
    scale = std::max(scale, std::abs(t));
    return *this;
  }
  ScalarTerms& operator-=(double t) { return *this += -t; }
  double residual() const { return std::abs(sum) / std::max(1.0, scale); }
};

/// Same for vector-valued identities, with g-norms.
class VectorTerms {
 public:
  explicit VectorTerms(const LocalStructure& ls) : ls_(&ls), sum_(Vec::Zero(ls.dim())) {}

  VectorTerms& operator+=(const Vec& t) {
    sum_ += t;
    scale_ = std::max(scale_, ls_->norm(t));
    return *this;
  }
  VectorTerms& operator-=(const Vec& t) { return *this += Vec(-t); }
  const Vec& sum() const { return sum_; }
  double scale() const { return scale_; }
  double residual() const { return ls_->norm(sum_) / std::max(1.0, scale_); }

 private:
  const LocalStructure* ls_;
  Vec sum_;
  double scale_ = 0.0;
};

/// (∇̄_X J)(s) = P((∇_X θ) s) for horizontal s.
Vec bar_nabla_J(const LocalStructure& ls, const Vec& X, const Vec& s);

/// (∇̄²_{X,Y} J)(s) for horizontal s, from ∇θ, ∇²θ and ∇ξ:
/// P(∇²_{X,Y}θ)s - g(s, θ∇_Yξ)∇_Xξ - g(s, ∇_Xξ) P((∇_Yθ)ξ).
Vec bar_hessian_J(const LocalStructure& ls, const Vec& X, const Vec& Y, const Vec& s);

/// R̄(X,Y)s = P(R(X,Y)s) + g(∇_Yξ, s)∇_Xξ - g(∇_Xξ, s)∇_Yξ.
Vec bar_curvature(const LocalStructure& ls, const Vec& X, const Vec& Y, const Vec& s);

/// ∇̄_X s = P(∇_X s) for a horizontal section field s.
TangentVector bar_cov_deriv(const AlmostContactStructure& acs, const TensorField& section, const TangentVector& X);

/// (∇̄_X J)(s) through the definition P(∇_X(Js)) - J P(∇_X s), with the
/// section extended as the field `section`.
TangentVector bar_cov_deriv_J(const AlmostContactStructure& acs, const TensorField& section, const TangentVector& X);

TangentVector bar_curvature(const AlmostContactStructure& acs, const TangentVector& X, const TangentVector& Y,
                            const TangentVector& s);

/// ∇̄ extended to TM by a flat connection on the ξ-line, written as
/// ∂ + A_a in the chart and differentiated directly. Independent of the
/// closed forms above; used to cross-check them.
class ProjectedConnection {
 public:
  ProjectedConnection(const AlmostContactStructure& acs, std::span<const double> x);

  /// R̄(X,Y)s from the curvature of ∂ + A.
  Vec curvature(const Vec& X, const Vec& Y, const Vec& s) const;
  /// (∇̄_X J)(s)
  Vec nabla_J(const Vec& X, const Vec& s) const;
  /// (∇̄²_{X,Y} J)(s)
  Vec hessian_J(const Vec& X, const Vec& Y, const Vec& s) const;

 private:
  int n_ = 0;
  Tensor<double> curvature_;  // F^i_j(c,d)
  Tensor<double> dtheta_;     // (D_b θ)^i_j
  Tensor<double> ddtheta_;    // (D²_{a,b} θ)^i_j
};

/// Matrix of an endomorphism of F in the horizontal frame:
/// M(i,j) = g(F_i, A F_j).
template <typename Op>
Mat horizontal_matrix(const LocalStructure& ls, const FramePoint& fp, Op&& A) {
  const int m = static_cast<int>(fp.horizontal.size());
  Mat M(m, m);
  for (int j = 0; j < m; ++j) {
    const Vec Aj = A(fp.horizontal[static_cast<std::size_t>(j)]);
    for (int i = 0; i < m; ++i) M(i, j) = ls.inner(fp.horizontal[static_cast<std::size_t>(i)], Aj);
  }
  return M;
}

/// ricci*(X,Y) = Σ_i g(R(X,F_i)θF_i, θY).
double ricci_star(const LocalStructure& ls, const FramePoint& fp, const Vec& X, const Vec& Y);

/// Σ_i (∇̄_{F_i} J)(F_i).
Vec divergence_J(const LocalStructure& ls, const FramePoint& fp);

/// ∇̄*∇̄J applied to horizontal s, traced over {F_i, ξ}.
Vec rough_laplacian_J(const LocalStructure& ls, const FramePoint& fp, const Vec& s);

/// ∇*∇ξ traced over {F_i, ξ}.
Vec rough_laplacian_xi(const LocalStructure& ls, const FramePoint& fp);

/// |∇ξ|² traced over {F_i, ξ}.
double grad_xi_squared(const LocalStructure& ls, const FramePoint& fp);

/// Σ_i (∇̄_{F_i} J)(∇_{F_i} ξ); `with_xi` adds the ξ term of the full trace.
Vec trace_bar_J_nabla_xi(const LocalStructure& ls, const FramePoint& fp, bool with_xi = false);

/// Σ_i R(F_i, θF_i) ξ.
Vec curvature_trace_xi(const LocalStructure& ls, const FramePoint& fp);

/// Commutator [∇̄*∇̄J, J] as a horizontal matrix.
Mat hse1_commutator(const LocalStructure& ls, const FramePoint& fp);

/// 2ricci*(θF_j,θF_i) - 2ricci*(F_j,F_i) arranged like hse1_commutator.
/// Equal to -[∇̄*∇̄J, J] on nearly cosymplectic structures.
Mat hse1_ricci_matrix(const LocalStructure& ls, const FramePoint& fp);

/// Frobenius norm of [∇̄*∇̄J, J] over max(1, |∇̄*∇̄J ∘ J|, |J ∘ ∇̄*∇̄J|).
double hse1_residual(const LocalStructure& ls, const FramePoint& fp);

/// Same quantity by the Ricci-* route: Frobenius norm of hse1_ricci_matrix,
/// normalized by the largest ricci* term.
double hse1_ricci_residual(const LocalStructure& ls, const FramePoint& fp);

struct Hse2Residuals {
  /// ∇*∇ξ - |∇ξ|²ξ + ½θ Σ_i(∇̄_{F_i}J)(∇_{F_i}ξ)
  double trace_form = 0.0;
  /// ∇*∇ξ - |∇ξ|²ξ - ½θ Σ_i R(F_i,θF_i)ξ
  double curvature_form = 0.0;
};

Hse2Residuals hse2_residual(const LocalStructure& ls, const FramePoint& fp);

struct HarmonicMapTerms {
  /// Σ_{E,F_j} g((∇̄_E J)F_j, [R(E,X),θ]F_j)
  ScalarTerms term1;
  /// Same with R̄ in place of R.
  ScalarTerms term1_bar;
  /// Σ_E g(∇_E ξ, R(E,X)ξ)
  ScalarTerms term2;
};

/// E runs over {F_i, ξ}.
HarmonicMapTerms harmonic_map_terms(const LocalStructure& ls, const FramePoint& fp, const Vec& X);

struct HarmonicMapResidual {
  double term1 = 0.0;
  double term2 = 0.0;
};

HarmonicMapResidual harmonic_map_residual(const LocalStructure& ls, const FramePoint& fp, const Vec& X);

}  // namespace nchv
