#pragma once

// Levi-Civita calculus on a single chart.
//
// Curvature sign: R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_[X,Y] Z, stored as
// R^a_bcd with R(∂_c,∂_d)∂_b = R^a_bcd ∂_a.

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "nchv/chart.hpp"
#include "nchv/jet.hpp"
#include "nchv/tensor.hpp"

namespace nchv {

/// Inverse of a symmetric (0,2) tensor, returned as a (2,0) tensor.
/// Gauss-Jordan with partial pivoting on the plain values.
template <typename S>
Tensor<S> inverse_metric(const Tensor<S>& g) {
  const int n = g.dim();
  std::vector<S> a(g.data());
  std::vector<S> inv(static_cast<std::size_t>(n * n), S(0.0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = S(1.0);

  double scale = 0.0;
  for (const auto& x : a) scale = std::max(scale, std::abs(value_of(x)));
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DegenerateMetricError("metric is zero or non-finite");

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(value_of(a[r * n + col])) > std::abs(value_of(a[piv * n + col]))) piv = r;
    if (std::abs(value_of(a[piv * n + col])) < 1e-13 * scale)
      throw DegenerateMetricError("metric is singular at this point");
    if (piv != col) {
      for (int k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    }
    const S p = S(1.0) / a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] *= p;
      inv[col * n + k] *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const S f = a[r * n + col];
      if (value_of(f) == 0.0 && !is_dual_v<S>) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  Tensor<S> out(n, 2, 0);
  out.data() = std::move(inv);
  return out;
}

/// Γ^a_bc = ½ g^ad (∂_b g_dc + ∂_c g_bd - ∂_d g_bc), one derivative order
/// below the metric jet.
template <typename S>
Tensor<S> christoffel_from(const Tensor<Dual<S>>& g) {
  const int n = g.dim();
  const Tensor<S> gv = value_part(g);
  const Tensor<S> ginv = inverse_metric(gv);
  // First-kind symbols Γ_dbc.
  Tensor<S> first(n, 0, 3);
  for (int d = 0; d < n; ++d)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        S v = (g(d, c).d[b] + g(b, d).d[c] - g(b, c).d[d]) * 0.5;
        first(d, b, c) = v;
        first(d, c, b) = v;
      }
  Tensor<S> gamma(n, 1, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        S acc(0.0);
        for (int d = 0; d < n; ++d) acc += ginv(a, d) * first(d, b, c);
        gamma(a, b, c) = acc;
        gamma(a, c, b) = acc;
      }
  return gamma;
}

/// ∇T for a field given as a Dual-valued component array, using Γ at the
/// same differentiation level as the result. The derivative index is
/// appended last.
template <typename S>
Tensor<S> covariant_derivative(const Tensor<Dual<S>>& t, const Tensor<S>& gamma) {
  const int n = t.dim();
  const int r = t.up();
  const int rank = t.rank();
  std::vector<std::size_t> stride(static_cast<std::size_t>(rank));
  {
    std::size_t st = 1;
    for (int k = rank - 1; k >= 0; --k) {
      stride[k] = st;
      st *= static_cast<std::size_t>(n);
    }
  }
  Tensor<S> out(n, r, t.down() + 1);
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rem = flat;
    for (int k = 0; k < rank; ++k) {
      idx[k] = static_cast<int>(rem / stride[k]);
      rem %= stride[k];
    }
    for (int c = 0; c < n; ++c) {
      S acc = t[flat].d[c];
      for (int k = 0; k < rank; ++k) {
        const std::size_t base = flat - static_cast<std::size_t>(idx[k]) * stride[k];
        for (int e = 0; e < n; ++e) {
          const S& comp = t[base + static_cast<std::size_t>(e) * stride[k]].v;
          if (k < r)
            acc += gamma(idx[k], c, e) * comp;
          else
            acc -= gamma(e, c, idx[k]) * comp;
        }
      }
      out[flat * static_cast<std::size_t>(n) + c] = acc;
    }
  }
  return out;
}

/// R^a_bcd = ∂_c Γ^a_db - ∂_d Γ^a_cb + Γ^a_ce Γ^e_db - Γ^a_de Γ^e_cb.
template <typename S>
Tensor<S> riemann_from(const Tensor<Dual<S>>& gamma) {
  const int n = gamma.dim();
  Tensor<S> R(n, 1, 3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          S acc = gamma(a, d, b).d[c] - gamma(a, c, b).d[d];
          for (int e = 0; e < n; ++e)
            acc += gamma(a, c, e).v * gamma(e, d, b).v - gamma(a, d, e).v * gamma(e, c, b).v;
          R(a, b, c, d) = acc;
          R(a, b, d, c) = -acc;
        }
  return R;
}

/// Contracts the trailing index of `t` with `v`.
Tensor<double> contract_last(const Tensor<double>& t, const Vec& v);

// ---------------------------------------------------------------------------
// Chart-level operations.

/// Metric components g_ab at x; validates symmetry and positivity.
Tensor<double> metric_at(const ChartManifold& m, std::span<const double> x);

/// Throws DegenerateMetricError unless `g` is symmetric to 1e-14 (relative)
/// and positive definite.
void check_metric(const Tensor<double>& g);

Tensor<double> christoffel_at(const ChartManifold& m, std::span<const double> x);

/// R^a_bcd at x.
Tensor<double> riemann_tensor_at(const ChartManifold& m, std::span<const double> x);

/// ∇_e R^a_bcd at x (derivative index last). Needs third metric derivatives.
Tensor<double> nabla_riemann_at(const ChartManifold& m, std::span<const double> x);

/// R(X,Y)Z.
TangentVector riemann_at(const ChartManifold& m, const TangentVector& X, const TangentVector& Y,
                         const TangentVector& Z);

/// g(R(X,Y)Z, W).
double riemann4_at(const ChartManifold& m, const TangentVector& X, const TangentVector& Y,
                   const TangentVector& Z, const TangentVector& W);

/// g(R(X,Y)Y,X) / (|X|²|Y|² - g(X,Y)²).
double sectional_curvature(const ChartManifold& m, const TangentVector& X, const TangentVector& Y);

/// ∇_X T for a smooth tensor field T.
Tensor<double> cov_deriv_tensor(const ChartManifold& m, const TensorField& field, const TangentVector& X);

/// ∇²_{X,Y} T = ∇_X(∇_Y T) - ∇_{∇_X Y} T.
Tensor<double> second_cov_deriv(const ChartManifold& m, const TensorField& field, const TangentVector& X,
                                const TangentVector& Y);

/// Throws FrameError unless the vectors are g-orthonormal at x to `tol`.
void require_orthonormal(const Mat& g, std::span<const Vec> frame, double tol = 1e-12);

/// ∇*∇T = -Σ_i ∇²_{E_i,E_i} T over an orthonormal frame of T_xM.
Tensor<double> rough_laplacian(const ChartManifold& m, const TensorField& field, std::span<const double> x,
                               std::span<const Vec> frame);

}  // namespace nchv
