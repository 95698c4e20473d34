#include "nchv/harmonicity.hpp"

#include <cmath>

namespace nchv {

Vec bar_nabla_J(const LocalStructure& ls, const Vec& X, const Vec& s) { return ls.project(ls.nabla_theta(X, s)); }

Vec bar_hessian_J(const LocalStructure& ls, const Vec& X, const Vec& Y, const Vec& s) {
  const Vec dx = ls.nabla_xi(X);
  return ls.project(ls.hessian_theta(X, Y, s)) - ls.inner(s, ls.theta(ls.nabla_xi(Y))) * dx -
         ls.inner(s, dx) * ls.project(ls.nabla_theta(Y, ls.xi()));
}

Vec bar_curvature(const LocalStructure& ls, const Vec& X, const Vec& Y, const Vec& s) {
  const Vec u = ls.nabla_xi(X);
  const Vec v = ls.nabla_xi(Y);
  return ls.project(ls.curvature(X, Y, s)) + ls.inner(v, s) * u - ls.inner(u, s) * v;
}

namespace {

void require_horizontal(const LocalStructure& ls, const Vec& s) {
  if (std::abs(ls.eta_of(s)) > 1e-10 * std::max(1.0, ls.norm(s)))
    throw DomainError("section value is not horizontal (eta(s) = " + std::to_string(ls.eta_of(s)) + ")");
}

}  // namespace

TangentVector bar_cov_deriv(const AlmostContactStructure& acs, const TensorField& section, const TangentVector& X) {
  if (section.up() != 1 || section.down() != 0) throw DomainError("section must be a vector field");
  const LocalStructure ls(acs, X.base);
  require_horizontal(ls, to_vec(section(std::span<const double>(X.base))));
  return {X.base, ls.project(to_vec(cov_deriv_tensor(acs.manifold(), section, X)))};
}

TangentVector bar_cov_deriv_J(const AlmostContactStructure& acs, const TensorField& section, const TangentVector& X) {
  if (section.up() != 1 || section.down() != 0) throw DomainError("section must be a vector field");
  const LocalStructure ls(acs, X.base);
  require_horizontal(ls, to_vec(section(std::span<const double>(X.base))));
  const int n = acs.dim();
  TensorField js(1, 0, [th = acs.theta(), s = section, n](auto x) {
    using S = scalar_of<decltype(x)>;
    const Tensor<S> t = th(x);
    const Tensor<S> v = s(x);
    Tensor<S> out(n, 1, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(a) += t(a, b) * v(b);
    return out;
  });
  const Vec d_js = to_vec(cov_deriv_tensor(acs.manifold(), js, X));
  const Vec d_s = to_vec(cov_deriv_tensor(acs.manifold(), section, X));
  return {X.base, ls.project(d_js) - ls.theta(ls.project(d_s))};
}

TangentVector bar_curvature(const AlmostContactStructure& acs, const TangentVector& X, const TangentVector& Y,
                            const TangentVector& s) {
  if (X.base != Y.base || X.base != s.base) throw DomainError("tangent vectors live at different base points");
  const LocalStructure ls(acs, X.base);
  require_horizontal(ls, s.v);
  return {X.base, bar_curvature(ls, X.v, Y.v, s.v)};
}

ProjectedConnection::ProjectedConnection(const AlmostContactStructure& acs, std::span<const double> x)
    : n_(acs.dim()) {
  const ChartManifold& m = acs.manifold();
  m.require_point(x);
  const int n = n_;

  const Tensor<Jet<1>> gamma1 = christoffel_from<Jet<1>>(m.metric().at<Jet<2>>(x));
  const Tensor<double> gamma0 = value_part(gamma1);
  const Tensor<Jet<2>> xi2 = acs.xi().at<Jet<2>>(x);
  const Tensor<Jet<2>> eta2 = acs.eta().at<Jet<2>>(x);
  const Tensor<Jet<2>> th2 = acs.theta().at<Jet<2>>(x);
  const Tensor<Jet<1>> xi1 = value_part(xi2);
  const Tensor<Jet<1>> eta1 = value_part(eta2);
  const Tensor<Jet<1>> th1 = value_part(th2);

  Tensor<Jet<1>> P(n, 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P(i, j) = (i == j ? Jet<1>(1.0) : Jet<1>(0.0)) - xi1(i) * eta1(j);

  // A_a = -P(∂_a ξ) ⊗ η + P Γ_a P + ξ ⊗ ∂_a η, stored as A(i, j, a).
  Tensor<Jet<1>> A(n, 1, 2);
  for (int a = 0; a < n; ++a) {
    std::vector<Jet<1>> pdxi(static_cast<std::size_t>(n), Jet<1>(0.0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) pdxi[i] += P(i, k) * xi2(k).d[a];
    Tensor<Jet<1>> pg(n, 1, 1);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) pg(i, l) += P(i, k) * gamma1(k, a, l);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet<1> v = xi1(i) * eta2(j).d[a] - pdxi[i] * eta1(j);
        for (int l = 0; l < n; ++l) v += pg(i, l) * P(l, j);
        A(i, j, a) = v;
      }
  }

  curvature_ = Tensor<double>(n, 1, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = A(i, j, d).d[c] - A(i, j, c).d[d];
          for (int k = 0; k < n; ++k) v += A(i, k, c).v * A(k, j, d).v - A(i, k, d).v * A(k, j, c).v;
          curvature_(i, j, c, d) = v;
        }

  // D_b θ = ∂_b θ + [A_b, θ]
  Tensor<Jet<1>> dth(n, 1, 2);
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet<1> v = th2(i, j).d[b];
        for (int k = 0; k < n; ++k) v += A(i, k, b) * th1(k, j) - th1(i, k) * A(k, j, b);
        dth(i, j, b) = v;
      }
  dtheta_ = value_part(dth);

  // D²_{a,b} θ = ∂_a(D_b θ) + [A_a, D_b θ] - Γ^c_ab D_c θ
  ddtheta_ = Tensor<double>(n, 1, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double v = dth(i, j, b).d[a];
          for (int k = 0; k < n; ++k) v += A(i, k, a).v * dtheta_(k, j, b) - dtheta_(i, k, b) * A(k, j, a).v;
          for (int c = 0; c < n; ++c) v -= gamma0(c, a, b) * dtheta_(i, j, c);
          ddtheta_(i, j, a, b) = v;
        }
}

Vec ProjectedConnection::curvature(const Vec& X, const Vec& Y, const Vec& s) const {
  Vec out = Vec::Zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) out[i] += curvature_(i, j, c, d) * s[j] * X[c] * Y[d];
  return out;
}

Vec ProjectedConnection::nabla_J(const Vec& X, const Vec& s) const {
  Vec out = Vec::Zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int b = 0; b < n_; ++b) out[i] += dtheta_(i, j, b) * s[j] * X[b];
  return out;
}

Vec ProjectedConnection::hessian_J(const Vec& X, const Vec& Y, const Vec& s) const {
  Vec out = Vec::Zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) out[i] += ddtheta_(i, j, a, b) * s[j] * X[a] * Y[b];
  return out;
}

double ricci_star(const LocalStructure& ls, const FramePoint& fp, const Vec& X, const Vec& Y) {
  const Vec tY = ls.theta(Y);
  double acc = 0.0;
  for (const Vec& f : fp.horizontal) acc += ls.inner(ls.curvature(X, f, ls.theta(f)), tY);
  return acc;
}

Vec divergence_J(const LocalStructure& ls, const FramePoint& fp) {
  Vec acc = Vec::Zero(ls.dim());
  for (const Vec& f : fp.horizontal) acc += bar_nabla_J(ls, f, f);
  return acc;
}

Vec rough_laplacian_J(const LocalStructure& ls, const FramePoint& fp, const Vec& s) {
  Vec acc = Vec::Zero(ls.dim());
  for (const Vec& e : fp.full()) acc -= bar_hessian_J(ls, e, e, s);
  return acc;
}

Vec rough_laplacian_xi(const LocalStructure& ls, const FramePoint& fp) {
  Vec acc = Vec::Zero(ls.dim());
  for (const Vec& e : fp.full()) acc -= ls.hessian_xi(e, e);
  return acc;
}

double grad_xi_squared(const LocalStructure& ls, const FramePoint& fp) {
  double acc = 0.0;
  for (const Vec& e : fp.full()) {
    const Vec d = ls.nabla_xi(e);
    acc += ls.inner(d, d);
  }
  return acc;
}

Vec trace_bar_J_nabla_xi(const LocalStructure& ls, const FramePoint& fp, bool with_xi) {
  Vec acc = Vec::Zero(ls.dim());
  for (const Vec& f : fp.horizontal) acc += bar_nabla_J(ls, f, ls.nabla_xi(f));
  if (with_xi) acc += bar_nabla_J(ls, fp.xi, ls.project(ls.nabla_xi(fp.xi)));
  return acc;
}

Vec curvature_trace_xi(const LocalStructure& ls, const FramePoint& fp) {
  Vec acc = Vec::Zero(ls.dim());
  for (const Vec& f : fp.horizontal) acc += ls.curvature(f, ls.theta(f), ls.xi());
  return acc;
}

Mat hse1_commutator(const LocalStructure& ls, const FramePoint& fp) {
  return horizontal_matrix(ls, fp, [&](const Vec& v) {
    return Vec(rough_laplacian_J(ls, fp, ls.theta(v)) - ls.theta(rough_laplacian_J(ls, fp, v)));
  });
}

Mat hse1_ricci_matrix(const LocalStructure& ls, const FramePoint& fp) {
  const int m = static_cast<int>(fp.horizontal.size());
  Mat N(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vec& Z = fp.horizontal[static_cast<std::size_t>(j)];
      const Vec& W = fp.horizontal[static_cast<std::size_t>(i)];
      N(i, j) = 2.0 * ricci_star(ls, fp, ls.theta(Z), ls.theta(W)) - 2.0 * ricci_star(ls, fp, Z, W);
    }
  return N;
}

double hse1_residual(const LocalStructure& ls, const FramePoint& fp) {
  const Mat LJ = horizontal_matrix(ls, fp, [&](const Vec& v) { return rough_laplacian_J(ls, fp, ls.theta(v)); });
  const Mat JL = horizontal_matrix(ls, fp, [&](const Vec& v) { return Vec(ls.theta(rough_laplacian_J(ls, fp, v))); });
  return (LJ - JL).norm() / std::max({1.0, LJ.norm(), JL.norm()});
}

double hse1_ricci_residual(const LocalStructure& ls, const FramePoint& fp) {
  double scale = 0.0;
  const int m = static_cast<int>(fp.horizontal.size());
  Mat N(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vec& Z = fp.horizontal[static_cast<std::size_t>(j)];
      const Vec& W = fp.horizontal[static_cast<std::size_t>(i)];
      const double a = 2.0 * ricci_star(ls, fp, ls.theta(Z), ls.theta(W));
      const double b = 2.0 * ricci_star(ls, fp, Z, W);
      N(i, j) = a - b;
      scale = std::max({scale, std::abs(a), std::abs(b)});
    }
  return N.norm() / std::max(1.0, scale);
}

Hse2Residuals hse2_residual(const LocalStructure& ls, const FramePoint& fp) {
  const Vec lap = rough_laplacian_xi(ls, fp);
  const Vec n2xi = grad_xi_squared(ls, fp) * ls.xi();

  VectorTerms a(ls);
  a += lap;
  a -= n2xi;
  a += Vec(0.5 * ls.theta(trace_bar_J_nabla_xi(ls, fp)));

  VectorTerms b(ls);
  b += lap;
  b -= n2xi;
  b -= Vec(0.5 * ls.theta(curvature_trace_xi(ls, fp)));

  return {a.residual(), b.residual()};
}

HarmonicMapTerms harmonic_map_terms(const LocalStructure& ls, const FramePoint& fp, const Vec& X) {
  HarmonicMapTerms t;
  for (const Vec& e : fp.full()) {
    for (const Vec& f : fp.horizontal) {
      const Vec h = bar_nabla_J(ls, e, f);
      const Vec tf = ls.theta(f);
      t.term1 += ls.inner(h, ls.curvature(e, X, tf) - ls.theta(ls.curvature(e, X, f)));
      t.term1_bar += ls.inner(h, bar_curvature(ls, e, X, tf) - ls.theta(bar_curvature(ls, e, X, f)));
    }
    t.term2 += ls.inner(ls.nabla_xi(e), ls.curvature(e, X, ls.xi()));
  }
  return t;
}

HarmonicMapResidual harmonic_map_residual(const LocalStructure& ls, const FramePoint& fp, const Vec& X) {
  const auto t = harmonic_map_terms(ls, fp, X);
  return {t.term1.residual(), t.term2.residual()};
}

}  // namespace nchv
