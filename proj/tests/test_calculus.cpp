#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fd_oracle.hpp"
#include "nchv/calculus.hpp"
#include "nchv/models.hpp"
#include "support.hpp"

using namespace nchv;
using testing_support::sample_points;

namespace {

fd::MetricFn metric_callback(const ChartManifold& m) {
  return [&m](const fd::Point& x) { return m.metric()(std::span<const double>(x)).data(); };
}

// Independent metric formulas for the oracle comparisons.
std::vector<double> s2_metric(const fd::Point& x) { return {1.0, 0.0, 0.0, std::sin(x[0]) * std::sin(x[0])}; }

std::vector<double> hemisphere_metric(const fd::Point& u) {
  double r2 = 0.0;
  for (double c : u) r2 += c * c;
  std::vector<double> g(25);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) g[a * 5 + b] = (a == b ? 1.0 : 0.0) + u[a] * u[b] / (1.0 - r2);
  return g;
}

double max_abs_diff(const Tensor<double>& t, const std::vector<double>& ref) {
  REQUIRE(t.size() == ref.size());
  double m = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) m = std::max(m, std::abs(t[i] - ref[i]));
  return m;
}

TangentVector tv(const Point& x, std::initializer_list<double> c) {
  Vec v(static_cast<int>(c.size()));
  int i = 0;
  for (double a : c) v[i++] = a;
  return {x, v};
}

}  // namespace

TEST_CASE("flat metric has vanishing connection and curvature") {
  const auto acs = make_flat_cosymplectic_r5();
  const auto& m = acs.manifold();
  for (const auto& x : sample_points(m, 10)) {
    const auto G = christoffel_at(m, x);
    const auto R = riemann_tensor_at(m, x);
    for (std::size_t i = 0; i < G.size(); ++i) CHECK(G[i] == 0.0);
    for (std::size_t i = 0; i < R.size(); ++i) CHECK(R[i] == 0.0);
  }
}

TEST_CASE("round sphere connection at polar angle pi/3") {
  const auto s2 = make_round_s2();
  const Point x = {std::numbers::pi / 3, 0.0};
  const auto G = christoffel_at(s2, x);
  CHECK(G(0, 1, 1) == doctest::Approx(-0.4330127018922194).epsilon(1e-14));
  CHECK(G(1, 0, 1) == doctest::Approx(0.577350269189626).epsilon(1e-14));
  CHECK(G(1, 1, 0) == doctest::Approx(0.577350269189626).epsilon(1e-14));
  CHECK(G(0, 0, 0) == 0.0);
  CHECK(G(1, 1, 1) == 0.0);
  // Same numbers from the finite-difference oracle.
  CHECK(max_abs_diff(G, fd::christoffel(s2_metric, x)) <= 1e-5);
}

TEST_CASE("connection is unchanged by a constant rescaling of the metric") {
  const auto s2 = make_round_s2();
  TensorField scaled(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    using std::sin;
    Tensor<S> g(2, 0, 2);
    g(0, 0) = S(9.0);
    g(1, 1) = sin(x[0]) * sin(x[0]) * 9.0;
    return g;
  });
  const ChartManifold big("big-s2", s2.domain(), scaled);
  for (const auto& x : sample_points(s2, 20)) {
    const auto a = christoffel_at(s2, x);
    const auto b = christoffel_at(big, x);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14);
  }
}

TEST_CASE("AD connection and curvature agree with the finite-difference oracle") {
  SUBCASE("round S2") {
    const auto s2 = make_round_s2();
    for (const auto& x : sample_points(s2, 20, 5)) {
      CHECK(max_abs_diff(christoffel_at(s2, x), fd::christoffel(s2_metric, x)) <= 1e-5);
      CHECK(max_abs_diff(riemann_tensor_at(s2, x), fd::riemann(s2_metric, x)) <= 1e-5);
    }
  }
  SUBCASE("flat R5") {
    const auto acs = make_flat_cosymplectic_r5();
    const auto& m = acs.manifold();
    const auto g = metric_callback(m);
    for (const auto& x : sample_points(m, 3, 5)) {
      CHECK(max_abs_diff(christoffel_at(m, x), fd::christoffel(g, x)) <= 1e-5);
      CHECK(max_abs_diff(riemann_tensor_at(m, x), fd::riemann(g, x)) <= 1e-5);
    }
  }
  SUBCASE("hemisphere chart of S5") {
    const auto acs = make_s5_nearly_cosymplectic();
    const auto& m = acs.manifold();
    for (const auto& x : sample_points(m, 3, 5)) {
      CHECK(max_abs_diff(metric_at(m, x), hemisphere_metric(x)) <= 1e-14);
      CHECK(max_abs_diff(christoffel_at(m, x), fd::christoffel(hemisphere_metric, x)) <= 1e-5);
      CHECK(max_abs_diff(riemann_tensor_at(m, x), fd::riemann(hemisphere_metric, x)) <= 1e-5);
    }
  }
}

TEST_CASE("sphere sectional curvature is +1 under the chosen sign") {
  const auto s2 = make_round_s2();
  std::mt19937_64 rng(11);
  for (const auto& x : sample_points(s2, 50)) {
    const TangentVector X{x, testing_support::random_vec(2, rng)};
    const TangentVector Y{x, testing_support::random_vec(2, rng)};
    CHECK(sectional_curvature(s2, X, Y) == doctest::Approx(1.0).epsilon(1e-6));
  }
  // S^5 is a unit sphere too.
  const auto acs = make_s5_nearly_cosymplectic();
  for (const auto& x : sample_points(acs.manifold(), 10)) {
    const TangentVector X{x, testing_support::random_vec(5, rng)};
    const TangentVector Y{x, testing_support::random_vec(5, rng)};
    CHECK(sectional_curvature(acs.manifold(), X, Y) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("curvature symmetries") {
  std::mt19937_64 rng(5);
  for (const auto& spec : model_registry()) {
    CAPTURE(spec.name);
    const auto& m = spec.structure.manifold();
    const int n = m.dim();
    for (const auto& x : sample_points(m, 100, 9)) {
      TangentVector X{x, testing_support::random_vec(n, rng)}, Y{x, testing_support::random_vec(n, rng)},
          Z{x, testing_support::random_vec(n, rng)}, W{x, testing_support::random_vec(n, rng)};
      const double xyzw = riemann4_at(m, X, Y, Z, W);
      const double scale = std::max(1.0, std::abs(xyzw));
      CHECK(std::abs(xyzw + riemann4_at(m, Y, X, Z, W)) <= 1e-8 * scale);
      CHECK(std::abs(xyzw + riemann4_at(m, X, Y, W, Z)) <= 1e-8 * scale);
      CHECK(std::abs(xyzw - riemann4_at(m, Z, W, X, Y)) <= 1e-8 * scale);
      CHECK(std::abs(xyzw + riemann4_at(m, Y, Z, X, W) + riemann4_at(m, Z, X, Y, W)) <= 1e-8 * scale);
      CHECK(riemann_at(m, X, X, Z).v.norm() <= 1e-14 * std::max(1.0, X.v.squaredNorm() * Z.v.norm()));
    }
  }
}

TEST_CASE("second Bianchi identity from third metric derivatives") {
  const auto acs = make_sasakian_control();
  const auto& m = acs.manifold();
  for (const auto& x : sample_points(m, 10)) {
    const auto dR = nabla_riemann_at(m, x);
    const int n = m.dim();
    double worst = 0.0, scale = 1.0;
    // ∇_e R^a_bcd + ∇_c R^a_bde + ∇_d R^a_bec = 0
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            for (int e = 0; e < n; ++e) {
              worst = std::max(worst, std::abs(dR(a, b, c, d, e) + dR(a, b, d, e, c) + dR(a, b, e, c, d)));
              scale = std::max(scale, std::abs(dR(a, b, c, d, e)));
            }
    CHECK(scale > 0.1);
    CHECK(worst <= 1e-12 * scale);
  }
}

TEST_CASE("metric compatibility on every model") {
  std::mt19937_64 rng(2);
  for (const auto& spec : model_registry()) {
    CAPTURE(spec.name);
    const auto& m = spec.structure.manifold();
    for (const auto& x : sample_points(m, 100, 4)) {
      const TangentVector X{x, testing_support::random_vec(m.dim(), rng)};
      const auto dg = cov_deriv_tensor(m, m.metric(), X);
      double worst = 0.0;
      for (std::size_t i = 0; i < dg.size(); ++i) worst = std::max(worst, std::abs(dg[i]));
      CHECK(worst <= 1e-10);
      const auto G = christoffel_at(m, x);
      for (int a = 0; a < m.dim(); ++a)
        for (int b = 0; b < m.dim(); ++b)
          for (int c = 0; c < m.dim(); ++c) CHECK(G(a, b, c) == G(a, c, b));
    }
  }
}

TEST_CASE("covariant derivative is linear in the direction") {
  const auto acs = make_s5_nearly_cosymplectic();
  const auto& m = acs.manifold();
  std::mt19937_64 rng(8);
  for (const auto& x : sample_points(m, 10)) {
    const Vec X = testing_support::random_vec(5, rng), Y = testing_support::random_vec(5, rng);
    const double a = 1.7, b = -0.3;
    const auto lhs = cov_deriv_tensor(m, acs.theta(), {x, a * X + b * Y});
    const auto rx = cov_deriv_tensor(m, acs.theta(), {x, X});
    const auto ry = cov_deriv_tensor(m, acs.theta(), {x, Y});
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - (a * rx[i] + b * ry[i])) <= 1e-13);
  }
}

TEST_CASE("covariant derivative of theta on S5 matches the finite-difference oracle") {
  const auto acs = make_s5_nearly_cosymplectic();
  const auto& m = acs.manifold();
  const fd::ArrayFn theta = [&](const fd::Point& y) { return acs.theta()(std::span<const double>(y)).data(); };
  for (const auto& x : sample_points(m, 5, 21)) {
    const auto ref = fd::nabla_endomorphism(hemisphere_metric, theta, x);
    Tensor<double> got(5, 1, 2);
    for (int c = 0; c < 5; ++c) {
      Vec e = Vec::Zero(5);
      e[c] = 1.0;
      const auto d = cov_deriv_tensor(m, acs.theta(), {x, e});
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) got(a, b, c) = d(a, b);
    }
    CHECK(max_abs_diff(got, ref) <= 1e-6);
    double size = 0.0;
    for (double v : ref) size = std::max(size, std::abs(v));
    CHECK(size > 0.1);
  }
}

TEST_CASE("parallel fields on the flat model") {
  const auto acs = make_flat_cosymplectic_r5();
  const auto& m = acs.manifold();
  std::mt19937_64 rng(1);
  for (const auto& x : sample_points(m, 5)) {
    const TangentVector X{x, testing_support::random_vec(5, rng)}, Y{x, testing_support::random_vec(5, rng)};
    const auto d = cov_deriv_tensor(m, acs.xi(), X);
    const auto h = second_cov_deriv(m, acs.theta(), X, Y);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i] == 0.0);
  }
}

TEST_CASE("Ricci identity and Killing identity for xi on S5") {
  const auto acs = make_s5_nearly_cosymplectic();
  const auto& m = acs.manifold();
  std::mt19937_64 rng(4);
  for (const auto& x : sample_points(m, 20)) {
    const Vec xi = to_vec(acs.xi()(std::span<const double>(x)));
    const TangentVector X{x, testing_support::random_vec(5, rng)}, Y{x, testing_support::random_vec(5, rng)};
    const Vec hxy = to_vec(second_cov_deriv(m, acs.xi(), X, Y));
    const Vec hyx = to_vec(second_cov_deriv(m, acs.xi(), Y, X));
    const Vec rxy = riemann_at(m, X, Y, {x, xi}).v;
    CHECK((hxy - hyx - rxy).norm() <= 1e-7 * std::max({1.0, hxy.norm(), hyx.norm(), rxy.norm()}));
    // ∇²_{X,Y}ξ = -R(ξ,X)Y
    const Vec k = riemann_at(m, {x, xi}, X, Y).v;
    CHECK((hxy + k).norm() <= 1e-7 * std::max({1.0, hxy.norm(), k.norm()}));
  }
}

TEST_CASE("rough Laplacian") {
  std::mt19937_64 rng(6);
  SUBCASE("vanishes for parallel xi on flat space") {
    const auto acs = make_flat_cosymplectic_r5();
    const Point x(5, 0.1);
    std::vector<Vec> frame;
    for (int i = 0; i < 5; ++i) frame.push_back(Vec::Unit(5, i));
    const auto L = rough_laplacian(acs.manifold(), acs.xi(), x, frame);
    for (std::size_t i = 0; i < L.size(); ++i) CHECK(L[i] == 0.0);
  }
  SUBCASE("unit field identity and frame independence on S5") {
    const auto acs = make_s5_nearly_cosymplectic();
    const auto& m = acs.manifold();
    for (const auto& x : sample_points(m, 10)) {
      const LocalStructure ls(acs, x);
      const auto fp = orthonormal_frame(ls);
      const auto frame = fp.full();
      const Vec L = to_vec(rough_laplacian(m, acs.xi(), x, frame));
      double grad2 = 0.0;
      for (const auto& e : frame) grad2 += ls.inner(ls.nabla_xi(e), ls.nabla_xi(e));
      CHECK(grad2 > 0.01);
      CHECK(std::abs(ls.inner(L, ls.xi()) - grad2) <= 1e-10);

      // Random orthogonal change of the full frame.
      Mat A(5, 5);
      for (int i = 0; i < 5; ++i) A.col(i) = testing_support::random_vec(5, rng);
      const Mat Q = Eigen::HouseholderQR<Mat>(A).householderQ();
      std::vector<Vec> rotated(5, Vec::Zero(5));
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) rotated[i] += Q(i, j) * frame[j];
      const Vec L2 = to_vec(rough_laplacian(m, acs.xi(), x, rotated));
      CHECK((L - L2).norm() <= 1e-9);
    }
  }
  SUBCASE("non-orthonormal frame is rejected") {
    const auto acs = make_s5_nearly_cosymplectic();
    const Point x(5, 0.1);
    std::vector<Vec> frame;
    for (int i = 0; i < 5; ++i) frame.push_back(Vec::Unit(5, i));
    CHECK_THROWS_AS(rough_laplacian(acs.manifold(), acs.xi(), x, frame), FrameError);
  }
}

TEST_CASE("errors") {
  const auto s2 = make_round_s2();
  CHECK_THROWS_AS(christoffel_at(s2, Point{0.05, 0.0}), DomainError);
  TensorField singular(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> g(2, 0, 2);
    g(0, 0) = x[0] * x[0];
    g(1, 1) = S(1.0);
    return g;
  });
  const ChartManifold bad("bad", Box{{-1.0, -1.0}, {1.0, 1.0}}, singular);
  CHECK_THROWS_AS(christoffel_at(bad, Point{0.0, 0.3}), DegenerateMetricError);
  CHECK_THROWS_AS(metric_at(bad, Point{0.0, 0.3}), DegenerateMetricError);
  const Point x = {1.0, 0.5};
  CHECK_THROWS_AS(riemann_at(s2, tv(x, {1, 0}), tv({1.1, 0.5}, {0, 1}), tv(x, {1, 1})), DomainError);
}
