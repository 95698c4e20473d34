#include "nchv/calculus.hpp"

#include <cmath>
#include <string>

namespace nchv {

namespace {

void require_same_base(const TangentVector& a, const TangentVector& b) {
  if (a.base != b.base) throw DomainError("tangent vectors live at different base points");
}

void require_dim(const ChartManifold& m, const TangentVector& v) {
  if (v.v.size() != m.dim() || static_cast<int>(v.base.size()) != m.dim())
    throw DomainError("tangent vector dimension does not match the chart");
}

Vec apply_riemann(const Tensor<double>& R, const Vec& X, const Vec& Y, const Vec& Z) {
  const int n = R.dim();
  Vec out = Vec::Zero(n);
  for (int a = 0; a < n; ++a) {
    double acc = 0.0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) acc += R(a, b, c, d) * Z[b] * X[c] * Y[d];
    out[a] = acc;
  }
  return out;
}

}  // namespace

Tensor<double> contract_last(const Tensor<double>& t, const Vec& v) {
  if (t.down() < 1) throw DomainError("no covariant slot to contract");
  const int n = t.dim();
  Tensor<double> out(n, t.up(), t.down() - 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (int c = 0; c < n; ++c) acc += t[i * static_cast<std::size_t>(n) + c] * v[c];
    out[i] = acc;
  }
  return out;
}

void check_metric(const Tensor<double>& g) {
  const int n = g.dim();
  double scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g[i])) throw DegenerateMetricError("metric has non-finite components");
    scale = std::max(scale, std::abs(g[i]));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(g(i, j) - g(j, i)) > 1e-14 * std::max(1.0, scale))
        throw DegenerateMetricError("metric is not symmetric");
  Eigen::LLT<Mat> llt(to_mat(g));
  if (llt.info() != Eigen::Success) throw DegenerateMetricError("metric is not positive definite");
}

Tensor<double> metric_at(const ChartManifold& m, std::span<const double> x) {
  m.require_point(x);
  Tensor<double> g = m.metric()(x);
  check_metric(g);
  return g;
}

Tensor<double> christoffel_at(const ChartManifold& m, std::span<const double> x) {
  m.require_point(x);
  return christoffel_from<double>(m.metric().at<Jet<1>>(x));
}

Tensor<double> riemann_tensor_at(const ChartManifold& m, std::span<const double> x) {
  m.require_point(x);
  return riemann_from<double>(christoffel_from<Jet<1>>(m.metric().at<Jet<2>>(x)));
}

Tensor<double> nabla_riemann_at(const ChartManifold& m, std::span<const double> x) {
  m.require_point(x);
  const Tensor<Jet<2>> gamma2 = christoffel_from<Jet<2>>(m.metric().at<Jet<3>>(x));
  const Tensor<Jet<1>> R1 = riemann_from<Jet<1>>(gamma2);
  return covariant_derivative<double>(R1, value_part(value_part(gamma2)));
}

TangentVector riemann_at(const ChartManifold& m, const TangentVector& X, const TangentVector& Y,
                         const TangentVector& Z) {
  require_dim(m, X);
  require_same_base(X, Y);
  require_same_base(X, Z);
  const Tensor<double> R = riemann_tensor_at(m, X.base);
  return {X.base, apply_riemann(R, X.v, Y.v, Z.v)};
}

double riemann4_at(const ChartManifold& m, const TangentVector& X, const TangentVector& Y, const TangentVector& Z,
                   const TangentVector& W) {
  require_same_base(X, W);
  const TangentVector r = riemann_at(m, X, Y, Z);
  const Mat g = to_mat(metric_at(m, X.base));
  return r.v.dot(g * W.v);
}

double sectional_curvature(const ChartManifold& m, const TangentVector& X, const TangentVector& Y) {
  require_same_base(X, Y);
  const Mat g = to_mat(metric_at(m, X.base));
  const double xx = X.v.dot(g * X.v);
  const double yy = Y.v.dot(g * Y.v);
  const double xy = X.v.dot(g * Y.v);
  const double area = xx * yy - xy * xy;
  if (!(area > 1e-14 * xx * yy)) throw DomainError("sectional curvature of a degenerate plane");
  return riemann4_at(m, X, Y, Y, X) / area;
}

Tensor<double> cov_deriv_tensor(const ChartManifold& m, const TensorField& field, const TangentVector& X) {
  require_dim(m, X);
  m.require_point(X.base);
  const Tensor<double> gamma = christoffel_from<double>(m.metric().at<Jet<1>>(X.base));
  return contract_last(covariant_derivative<double>(field.at<Jet<1>>(X.base), gamma), X.v);
}

namespace {

Tensor<double> hessian_components(const ChartManifold& m, const TensorField& field, std::span<const double> x) {
  m.require_point(x);
  const Tensor<Jet<1>> gamma1 = christoffel_from<Jet<1>>(m.metric().at<Jet<2>>(x));
  const Tensor<Jet<1>> dT = covariant_derivative<Jet<1>>(field.at<Jet<2>>(x), gamma1);
  return covariant_derivative<double>(dT, value_part(gamma1));
}

}  // namespace

Tensor<double> second_cov_deriv(const ChartManifold& m, const TensorField& field, const TangentVector& X,
                                const TangentVector& Y) {
  require_dim(m, X);
  require_same_base(X, Y);
  return contract_last(contract_last(hessian_components(m, field, X.base), X.v), Y.v);
}

void require_orthonormal(const Mat& G, std::span<const Vec> frame, double tol) {
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i; j < frame.size(); ++j) {
      const double want = i == j ? 1.0 : 0.0;
      const double got = frame[i].dot(G * frame[j]);
      if (std::abs(got - want) > tol)
        throw FrameError("frame is not orthonormal: <E" + std::to_string(i) + ",E" + std::to_string(j) +
                         "> = " + std::to_string(got));
    }
}

Tensor<double> rough_laplacian(const ChartManifold& m, const TensorField& field, std::span<const double> x,
                               std::span<const Vec> frame) {
  if (static_cast<int>(frame.size()) != m.dim()) throw FrameError("frame does not span the tangent space");
  require_orthonormal(to_mat(metric_at(m, x)), frame);
  const Tensor<double> H = hessian_components(m, field, x);
  Tensor<double> out(m.dim(), field.up(), field.down());
  for (const Vec& e : frame) {
    const Tensor<double> h = contract_last(contract_last(H, e), e);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= h[i];
  }
  return out;
}

}  // namespace nchv
