#include "nchv/models.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "nchv/octonion.hpp"

namespace nchv {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Cosymplectic:
      return "cosymplectic";
    case Classification::NearlyCosymplecticStrict:
      return "nearly-cosymplectic-strict";
    case Classification::NegativeControl:
      return "negative-control";
  }
  return "unknown";
}

AlmostContactStructure make_flat_cosymplectic_r5() {
  Box box{std::vector<double>(5, -1.0), std::vector<double>(5, 1.0)};
  TensorField metric(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> g(5, 0, 2);
    for (int i = 0; i < 5; ++i) g(i, i) = S(1.0);
    return g;
  });
  TensorField theta(1, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> t(5, 1, 1);
    t(1, 0) = S(1.0);
    t(0, 1) = S(-1.0);
    t(3, 2) = S(1.0);
    t(2, 3) = S(-1.0);
    return t;
  });
  TensorField xi(1, 0, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> v(5, 1, 0);
    v(4) = S(1.0);
    return v;
  });
  TensorField eta(0, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> w(5, 0, 1);
    w(4) = S(1.0);
    return w;
  });
  return {ChartManifold("flat-r5", std::move(box), std::move(metric)), std::move(theta), std::move(xi),
          std::move(eta)};
}

namespace {

constexpr double kPolarCut = 0.2;

Box s2_box() {
  using std::numbers::pi;
  return {{kPolarCut, -pi}, {pi - kPolarCut, pi}};
}

}  // namespace

ChartManifold make_round_s2() {
  TensorField metric(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    using std::sin;
    Tensor<S> g(2, 0, 2);
    const S st = sin(x[0]);
    g(0, 0) = S(1.0);
    g(1, 1) = st * st;
    return g;
  });
  return ChartManifold("round-s2", s2_box(), std::move(metric));
}

AlmostContactStructure make_kahler_product_s2xr() {
  Box box = s2_box();
  box.lo.push_back(-1.0);
  box.hi.push_back(1.0);
  TensorField metric(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    using std::sin;
    Tensor<S> g(3, 0, 2);
    const S st = sin(x[0]);
    g(0, 0) = S(1.0);
    g(1, 1) = st * st;
    g(2, 2) = S(1.0);
    return g;
  });
  // θ∂_θ = (1/sin θ)∂_φ, θ∂_φ = -sin θ ∂_θ.
  TensorField theta(1, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    using std::sin;
    Tensor<S> t(3, 1, 1);
    const S st = sin(x[0]);
    t(1, 0) = 1.0 / st;
    t(0, 1) = -st;
    return t;
  });
  TensorField xi(1, 0, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> v(3, 1, 0);
    v(2) = S(1.0);
    return v;
  });
  TensorField eta(0, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> w(3, 0, 1);
    w(2) = S(1.0);
    return w;
  });
  return {ChartManifold("s2xr", std::move(box), std::move(metric)), std::move(theta), std::move(xi), std::move(eta)};
}

namespace {

constexpr double kS5Radius = 0.9;

// Hemisphere chart u ↦ p = (u, sqrt(1 - |u|²), 0) ∈ R^7 with the tangent
// vectors ∂_a p and the inverse metric g^ab = δ_ab - u_a u_b.
template <typename S>
struct HemispherePoint {
  std::array<S, 7> p{};
  std::array<std::array<S, 7>, 5> dp{};
  std::array<std::array<S, 5>, 5> ginv{};
};

template <typename S>
HemispherePoint<S> hemisphere(std::span<const S> u) {
  using std::sqrt;
  HemispherePoint<S> h;
  S r2(0.0);
  for (int a = 0; a < 5; ++a) r2 += u[a] * u[a];
  const S s = sqrt(1.0 - r2);
  for (int k = 0; k < 7; ++k) h.p[k] = S(0.0);
  for (int a = 0; a < 5; ++a) h.p[a] = u[a];
  h.p[5] = s;
  for (int a = 0; a < 5; ++a) {
    for (int k = 0; k < 7; ++k) h.dp[a][k] = S(0.0);
    h.dp[a][a] = S(1.0);
    h.dp[a][5] = -u[a] / s;
    for (int b = 0; b < 5; ++b) h.ginv[a][b] = (a == b ? S(1.0) : S(0.0)) - u[a] * u[b];
  }
  return h;
}

template <typename S>
S dot7(const std::array<S, 7>& a, const std::array<S, 7>& b) {
  S acc(0.0);
  for (int k = 0; k < 7; ++k) acc += a[k] * b[k];
  return acc;
}

// Ambient Reeb field -p × e7.
template <typename S>
std::array<S, 7> reeb_ambient(const std::array<S, 7>& p) {
  std::array<S, 7> n{};
  for (auto& v : n) v = S(0.0);
  n[6] = S(1.0);
  std::array<S, 7> v = OctonionTable::standard().cross(p, n);
  for (auto& c : v) c = -c;
  return v;
}

}  // namespace

AlmostContactStructure make_s5_nearly_cosymplectic() {
  Box box{std::vector<double>(5, -kS5Radius), std::vector<double>(5, kS5Radius)};
  RegionTest ball = [](std::span<const double> u, double margin) {
    double r2 = 0.0;
    for (double c : u) r2 += c * c;
    const double r = kS5Radius * (1.0 - margin);
    return r2 < r * r;
  };
  TensorField metric(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    const auto h = hemisphere(x);
    Tensor<S> g(5, 0, 2);
    for (int a = 0; a < 5; ++a)
      for (int b = a; b < 5; ++b) {
        g(a, b) = dot7(h.dp[a], h.dp[b]);
        g(b, a) = g(a, b);
      }
    return g;
  });
  TensorField eta(0, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    const auto h = hemisphere(x);
    const auto V = reeb_ambient(h.p);
    Tensor<S> w(5, 0, 1);
    for (int a = 0; a < 5; ++a) w(a) = dot7(h.dp[a], V);
    return w;
  });
  TensorField xi(1, 0, [](auto x) {
    using S = scalar_of<decltype(x)>;
    const auto h = hemisphere(x);
    const auto V = reeb_ambient(h.p);
    std::array<S, 5> w{};
    for (int b = 0; b < 5; ++b) w[b] = dot7(h.dp[b], V);
    Tensor<S> v(5, 1, 0);
    for (int a = 0; a < 5; ++a) {
      S acc(0.0);
      for (int b = 0; b < 5; ++b) acc += h.ginv[a][b] * w[b];
      v(a) = acc;
    }
    return v;
  });
  TensorField theta(1, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    const auto h = hemisphere(x);
    const auto& oct = OctonionTable::standard();
    Tensor<S> t(5, 1, 1);
    for (int b = 0; b < 5; ++b) {
      const auto pb = oct.cross(h.p, h.dp[b]);
      std::array<S, 5> w{};
      for (int c = 0; c < 5; ++c) w[c] = dot7(h.dp[c], pb);
      for (int a = 0; a < 5; ++a) {
        S acc(0.0);
        for (int c = 0; c < 5; ++c) acc += h.ginv[a][c] * w[c];
        t(a, b) = acc;
      }
    }
    return t;
  });
  return {ChartManifold("s5-octonion", std::move(box), std::move(metric), std::move(ball)), std::move(theta),
          std::move(xi), std::move(eta)};
}

AlmostContactStructure make_sasakian_control() {
  Box box{std::vector<double>(3, -1.0), std::vector<double>(3, 1.0)};
  TensorField metric(0, 2, [](auto x) {
    using S = scalar_of<decltype(x)>;
    const S& y = x[1];
    Tensor<S> g(3, 0, 2);
    g(0, 0) = (1.0 + y * y) * 0.25;
    g(0, 2) = y * -0.25;
    g(2, 0) = y * -0.25;
    g(1, 1) = S(0.25);
    g(2, 2) = S(0.25);
    return g;
  });
  // θ∂_x = ∂_y, θ∂_y = -∂_x - y∂_z, θ∂_z = 0.
  TensorField theta(1, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> t(3, 1, 1);
    t(1, 0) = S(1.0);
    t(0, 1) = S(-1.0);
    t(2, 1) = -x[1];
    return t;
  });
  TensorField xi(1, 0, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> v(3, 1, 0);
    v(2) = S(2.0);
    return v;
  });
  TensorField eta(0, 1, [](auto x) {
    using S = scalar_of<decltype(x)>;
    Tensor<S> w(3, 0, 1);
    w(0) = x[1] * -0.5;
    w(2) = S(0.5);
    return w;
  });
  return {ChartManifold("sasakian-control", std::move(box), std::move(metric)), std::move(theta), std::move(xi),
          std::move(eta)};
}

const std::vector<ModelSpec>& model_registry() {
  static const std::vector<ModelSpec> models = {
      {"flat-r5", Classification::Cosymplectic, "flat R^5 with parallel theta and xi", make_flat_cosymplectic_r5()},
      {"s2xr", Classification::Cosymplectic, "Kahler S^2 times a line", make_kahler_product_s2xr()},
      {"s5-octonion", Classification::NearlyCosymplecticStrict,
       "S^5 in the nearly Kahler S^6, octonionic cross product", make_s5_nearly_cosymplectic()},
      {"sasakian-control", Classification::NegativeControl, "Heisenberg group with its Sasakian structure",
       make_sasakian_control()},
  };
  return models;
}

const ModelSpec& find_model(std::string_view name) {
  for (const auto& m : model_registry())
    if (m.name == name) return m;
  std::string known;
  for (const auto& m : model_registry()) known += (known.empty() ? "" : ", ") + m.name;
  throw DomainError("unknown model '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace nchv
