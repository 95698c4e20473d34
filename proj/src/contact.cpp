#include "nchv/contact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nchv {

AlmostContactStructure::AlmostContactStructure(ChartManifold manifold, TensorField theta, TensorField xi,
                                               TensorField eta)
    : manifold_(std::move(manifold)), theta_(std::move(theta)), xi_(std::move(xi)), eta_(std::move(eta)) {
  if (dim() % 2 != 1) throw StructureError("almost contact structures need odd dimension");
  if (theta_.up() != 1 || theta_.down() != 1) throw StructureError("theta must be a (1,1) field");
  if (xi_.up() != 1 || xi_.down() != 0) throw StructureError("xi must be a vector field");
  if (eta_.up() != 0 || eta_.down() != 1) throw StructureError("eta must be a covector field");
}

LocalStructure::LocalStructure(const AlmostContactStructure& acs, std::span<const double> x)
    : x_(x.begin(), x.end()), n_(acs.dim()) {
  const ChartManifold& m = acs.manifold();
  m.require_point(x);

  const Tensor<Jet<2>> g2 = m.metric().at<Jet<2>>(x);
  const Tensor<double> g0 = value_part(value_part(g2));
  check_metric(g0);
  g_ = to_mat(g0);

  const Tensor<Jet<1>> gamma1 = christoffel_from<Jet<1>>(g2);
  gamma_ = value_part(gamma1);
  riemann_ = riemann_from<double>(gamma1);

  const Tensor<Jet<2>> theta2 = acs.theta().at<Jet<2>>(x);
  const Tensor<Jet<1>> dtheta1 = covariant_derivative<Jet<1>>(theta2, gamma1);
  dtheta_ = value_part(dtheta1);
  ddtheta_ = covariant_derivative<double>(dtheta1, gamma_);
  theta_ = to_mat(value_part(value_part(theta2)));

  const Tensor<Jet<2>> xi2 = acs.xi().at<Jet<2>>(x);
  const Tensor<Jet<1>> dxi1 = covariant_derivative<Jet<1>>(xi2, gamma1);
  dxi_ = value_part(dxi1);
  ddxi_ = covariant_derivative<double>(dxi1, gamma_);
  xi_ = to_vec(value_part(value_part(xi2)));

  eta_ = to_vec(acs.eta()(x));
}

double LocalStructure::norm(const Vec& a) const { return std::sqrt(std::max(inner(a, a), 0.0)); }

Vec LocalStructure::nabla_xi(const Vec& X) const {
  Vec out = Vec::Zero(n_);
  for (int a = 0; a < n_; ++a)
    for (int c = 0; c < n_; ++c) out[a] += dxi_(a, c) * X[c];
  return out;
}

Vec LocalStructure::nabla_theta(const Vec& X, const Vec& Y) const {
  Vec out = Vec::Zero(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c) out[a] += dtheta_(a, b, c) * Y[b] * X[c];
  return out;
}

Vec LocalStructure::hessian_theta(const Vec& X, const Vec& Y, const Vec& Z) const {
  Vec out = Vec::Zero(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (Z[b] == 0.0) continue;
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) out[a] += ddtheta_(a, b, c, d) * Z[b] * Y[c] * X[d];
    }
  return out;
}

Vec LocalStructure::hessian_xi(const Vec& X, const Vec& Y) const {
  Vec out = Vec::Zero(n_);
  for (int a = 0; a < n_; ++a)
    for (int c = 0; c < n_; ++c)
      for (int d = 0; d < n_; ++d) out[a] += ddxi_(a, c, d) * Y[c] * X[d];
  return out;
}

Vec LocalStructure::curvature(const Vec& X, const Vec& Y, const Vec& Z) const {
  Vec out = Vec::Zero(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (Z[b] == 0.0) continue;
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d) out[a] += riemann_(a, b, c, d) * Z[b] * X[c] * Y[d];
    }
  return out;
}

double AxiomResiduals::max() const {
  return std::max({theta_squared, eta_of_xi, xi_unit, compatibility, eta_dual});
}

AxiomResiduals axiom_residuals(const LocalStructure& ls) {
  const int n = ls.dim();
  const Mat& g = ls.metric();
  const Mat ginv = g.inverse();
  const Mat& th = ls.theta_matrix();
  const Mat id = Mat::Identity(n, n);

  // g-norm of a (1,1) tensor A: sqrt(tr(Aᵀ g A g⁻¹)); of a (0,2) tensor B:
  // sqrt(tr(g⁻¹ B g⁻¹ Bᵀ)).
  auto endo_norm = [&](const Mat& A) { return std::sqrt(std::max((A.transpose() * g * A * ginv).trace(), 0.0)); };
  auto form_norm = [&](const Mat& B) {
    return std::sqrt(std::max((ginv * B * ginv * B.transpose()).trace(), 0.0));
  };

  AxiomResiduals r;
  r.theta_squared = endo_norm(th * th + id - ls.xi() * ls.eta().transpose());
  r.eta_of_xi = std::abs(ls.eta_of(ls.xi()) - 1.0);
  r.xi_unit = std::abs(ls.norm(ls.xi()) - 1.0);
  r.compatibility = form_norm(th.transpose() * g * th - g + ls.eta() * ls.eta().transpose());
  const Vec d = ls.eta() - g * ls.xi();
  r.eta_dual = std::sqrt(std::max(d.dot(ginv * d), 0.0));
  return r;
}

AxiomResiduals axiom_residuals(const AlmostContactStructure& acs, std::span<const double> x) {
  return axiom_residuals(LocalStructure(acs, x));
}

TangentVector nabla_theta(const AlmostContactStructure& acs, const TangentVector& X, const TangentVector& Y) {
  if (X.base != Y.base) throw DomainError("tangent vectors live at different base points");
  const Tensor<double> dtheta = cov_deriv_tensor(acs.manifold(), acs.theta(), X);
  return {X.base, to_mat(dtheta) * Y.v};
}

double nearly_cosymplectic_residual(const LocalStructure& ls, std::span<const VectorPair> pairs) {
  if (pairs.empty()) throw DomainError("nearly cosymplectic residual needs at least one vector pair");
  double worst = 0.0;
  for (const auto& p : pairs) {
    const Vec a = ls.nabla_theta(p.first, p.second);
    const Vec b = ls.nabla_theta(p.second, p.first);
    const double scale = std::max({1.0, ls.norm(a), ls.norm(b)});
    worst = std::max(worst, ls.norm(a + b) / scale);
  }
  return worst;
}

KillingGeodesic killing_geodesic_residuals(const LocalStructure& ls, std::span<const VectorPair> pairs) {
  KillingGeodesic r;
  for (const auto& p : pairs) {
    const double k = ls.inner(ls.nabla_xi(p.first), p.second) + ls.inner(ls.nabla_xi(p.second), p.first);
    r.killing = std::max(r.killing, std::abs(k));
  }
  r.geodesic = ls.norm(ls.nabla_xi(ls.xi()));
  return r;
}

std::vector<Vec> FramePoint::full() const {
  std::vector<Vec> e = horizontal;
  e.push_back(xi);
  return e;
}

namespace {

// Orthogonalizes v against `basis` twice (for accuracy) and returns the
// residual norm before normalization.
double orthogonalize(const LocalStructure& ls, Vec& v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Vec& w : basis) v -= ls.inner(v, w) * w;
  return ls.norm(v);
}

}  // namespace

FramePoint orthonormal_frame(const LocalStructure& ls, std::span<const int> order) {
  const int n = ls.dim();
  std::vector<int> idx(static_cast<std::size_t>(n));
  if (order.empty()) {
    std::iota(idx.begin(), idx.end(), 0);
  } else {
    if (static_cast<int>(order.size()) != n) throw FrameError("frame order must list every coordinate once");
    idx.assign(order.begin(), order.end());
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
      if (sorted[i] != i) throw FrameError("frame order must be a permutation of the coordinates");
  }

  auto projected = [&](int k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    return ls.project(e);
  };

  // First pass finds the most redundant coordinate direction.
  std::vector<Vec> basis;
  int drop = -1;
  double smallest = 0.0;
  for (int k : idx) {
    Vec v = projected(k);
    const double scale = std::max(ls.norm(v), 1e-300);
    const double r = orthogonalize(ls, v, basis);
    const double rel = r / scale;
    if (drop < 0 || rel < smallest) {
      drop = k;
      smallest = rel;
    }
    if (rel > 1e-10) basis.push_back(v / r);
  }

  FramePoint fp;
  fp.x = ls.point();
  fp.xi = ls.xi();
  for (int k : idx) {
    if (k == drop) continue;
    Vec v = projected(k);
    const double scale = ls.norm(v);
    const double r = orthogonalize(ls, v, fp.horizontal);
    if (!(r > 1e-8 * std::max(scale, 1e-300)) || !(scale > 1e-12))
      throw FrameError("projected coordinate frame has rank below " + std::to_string(n - 1));
    fp.horizontal.push_back(v / r);
  }
  check_frame(ls, fp);
  return fp;
}

FramePoint orthonormal_frame(const AlmostContactStructure& acs, std::span<const double> x) {
  return orthonormal_frame(LocalStructure(acs, x));
}

FramePoint theta_frame(const LocalStructure& ls, const FramePoint& fp) {
  FramePoint out;
  out.x = fp.x;
  out.xi = fp.xi;
  for (const Vec& f : fp.horizontal) out.horizontal.push_back(ls.theta(f));
  try {
    check_frame(ls, out, 1e-9);
  } catch (const FrameError& e) {
    throw StructureError(std::string("theta does not preserve the frame: ") + e.what());
  }
  return out;
}

FramePoint rotate_frame(const FramePoint& fp, const Mat& rotation) {
  const int m = static_cast<int>(fp.horizontal.size());
  if (rotation.rows() != m || rotation.cols() != m) throw FrameError("rotation size does not match the frame");
  FramePoint out;
  out.x = fp.x;
  out.xi = fp.xi;
  for (int i = 0; i < m; ++i) {
    Vec v = Vec::Zero(fp.xi.size());
    for (int j = 0; j < m; ++j) v += rotation(i, j) * fp.horizontal[static_cast<std::size_t>(j)];
    out.horizontal.push_back(v);
  }
  return out;
}

void check_frame(const LocalStructure& ls, const FramePoint& fp, double tol) {
  if (static_cast<int>(fp.horizontal.size()) != ls.dim() - 1)
    throw FrameError("horizontal frame must have " + std::to_string(ls.dim() - 1) + " vectors");
  const std::vector<Vec> e = fp.full();
  require_orthonormal(ls.metric(), e, tol);
  for (const Vec& f : fp.horizontal)
    if (std::abs(ls.eta_of(f)) > tol) throw FrameError("frame vector is not horizontal");
}

}  // namespace nchv
