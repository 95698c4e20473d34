#include "nchv/identities.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

namespace nchv {

PointGeometry::PointGeometry(const AlmostContactStructure& acs, std::span<const double> x)
    : local(acs, x), frame(orthonormal_frame(local)), connection(acs, x) {}

namespace {

using Parts = PartResiduals;
using Args = std::span<const Vec>;

double vres(const LocalStructure& G, std::initializer_list<Vec> terms) {
  VectorTerms t(G);
  for (const Vec& v : terms) t += v;
  return t.residual();
}

double sres(std::initializer_list<double> terms) {
  ScalarTerms t;
  for (double v : terms) t += v;
  return t.residual();
}

ScalarTerms combine(std::initializer_list<std::pair<double, ScalarTerms>> parts) {
  ScalarTerms acc;
  for (const auto& [c, t] : parts) {
    acc.sum += c * t.sum;
    acc.scale = std::max(acc.scale, std::abs(c) * t.scale);
  }
  return acc;
}

// op(θv) - θ op(v), scaled by c, added term by term.
template <typename Op>
void add_commutator(VectorTerms& acc, const LocalStructure& G, Op&& op, const Vec& v, double c = 1.0) {
  acc += Vec(c * op(G.theta(v)));
  acc -= Vec(c * G.theta(op(v)));
}

// g(Y, (∇²_{W,X}θ)Z)
double n2(const LocalStructure& G, const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) {
  return G.inner(Y, G.hessian_theta(W, X, Z));
}

ScalarTerms tensor_T(const LocalStructure& G, const Vec& A, const Vec& B) {
  const Vec nA = G.nabla_xi(A), nB = G.nabla_xi(B);
  const Vec tv = G.theta(G.nabla_theta(A, B));
  const Vec tA = G.theta(A), tB = G.theta(B);
  const double eA = G.eta_of(A), eB = G.eta_of(B);
  ScalarTerms t;
  t += -2.0 * eB * G.inner(tv, nA);
  t += 2.0 * eA * G.inner(tv, nB);
  t += -2.0 * eA * eB * G.inner(nA, nB);
  t += eB * eB * G.inner(nA, nA);
  t += eA * eA * G.inner(nB, nB);
  t += eB * G.curvature4(tA, tB, A, G.xi());
  t += -eA * G.curvature4(tA, tB, B, G.xi());
  return t;
}

ScalarTerms tensor_A(const LocalStructure& G, const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) {
  auto T = [&](const Vec& a, const Vec& b) { return tensor_T(G, a, b); };
  return combine({{0.5, T(W + Y, Z + X)},
                  {-0.5, T(W + Y, X)},
                  {0.5, T(W, X)},
                  {0.5, T(Y, X)},
                  {-0.5, T(W, Z + X)},
                  {-0.5, T(W + Y, Z)},
                  {0.5, T(W, Z)},
                  {0.5, T(Y, Z)},
                  {-0.5, T(Y, Z + X)}});
}

ScalarTerms tensor_B(const LocalStructure& G, const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) {
  auto T = [&](const Vec& a, const Vec& b) { return tensor_T(G, a, b); };
  return combine({{0.5, T(W + Z, X + Y)},
                  {-0.5, T(W, X + Y)},
                  {-0.5, T(Z, X + Y)},
                  {-0.5, T(W + Z, X)},
                  {0.5, T(W, X)},
                  {0.5, T(Z, X)},
                  {-0.5, T(W + Z, Y)},
                  {0.5, T(W, Y)},
                  {0.5, T(Z, Y)}});
}

// R(W,X,Y,Z) - R(θW,θX,θY,θZ) - (A - B)/3
double polarized_curvature(const LocalStructure& G, const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) {
  ScalarTerms lhs;
  lhs += G.curvature4(W, X, Y, Z);
  lhs -= G.curvature4(G.theta(W), G.theta(X), G.theta(Y), G.theta(Z));
  return combine({{1.0, lhs}, {-1.0 / 3.0, tensor_A(G, W, X, Y, Z)}, {1.0 / 3.0, tensor_B(G, W, X, Y, Z)}})
      .residual();
}

Parts axioms(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const auto r = axiom_residuals(G);
  const Vec &X = v[0], &Y = v[1];
  return {{"theta-squared", r.theta_squared},
          {"eta-of-xi", r.eta_of_xi},
          {"xi-unit", r.xi_unit},
          {"compatibility", r.compatibility},
          {"eta-dual", r.eta_dual},
          {"compatibility-sample",
           sres({G.inner(G.theta(X), G.theta(Y)), -G.inner(X, Y), G.eta_of(X) * G.eta_of(Y)})}};
}

Parts nearly_cosymplectic(const PointGeometry& pg, Args v) {
  const std::vector<VectorPair> pairs = {{v[0], v[1]}, {v[0], v[0]}, {v[2], v[2]}};
  return {{"symmetrized", nearly_cosymplectic_residual(pg.local, pairs)}};
}

Parts killing_geodesic(const PointGeometry& pg, Args v) {
  const std::vector<VectorPair> pairs = {{v[0], v[1]}};
  const auto r = killing_geodesic_residuals(pg.local, pairs);
  return {{"killing", r.killing}, {"geodesic", r.geodesic}};
}

Parts bar_nabla_J_symmetries(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &Y = v[1], &xi = G.xi();
  const Vec tnx = G.theta(G.nabla_xi(X));
  return {{"skew", vres(G, {bar_nabla_J(G, X, Y), bar_nabla_J(G, Y, X)})},
          {"xi-direction", vres(G, {bar_nabla_J(G, xi, X), -tnx})},
          {"xi-direction-ambient", vres(G, {tnx, -G.nabla_theta(xi, X)})},
          {"theta-xi-direction", vres(G, {G.theta(bar_nabla_J(G, xi, X)), G.nabla_xi(X)})},
          {"theta-xi-direction-ambient", vres(G, {G.nabla_xi(X), G.theta(G.nabla_theta(xi, X))})},
          {"J-invariance", vres(G, {bar_nabla_J(G, X, Y), bar_nabla_J(G, G.theta(X), G.theta(Y))})}};
}

Parts divergence(const PointGeometry& pg, Args) {
  VectorTerms t(pg.local);
  for (const Vec& f : pg.frame.horizontal) t += bar_nabla_J(pg.local, f, f);
  return {{"divergence", t.residual()}};
}

Parts theta_xi_mixed(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &Y = v[1];
  return {{"mixed", vres(G, {G.nabla_theta(G.theta(X), G.theta(Y)), G.nabla_theta(X, Y),
                             Vec(-G.eta_of(Y) * G.nabla_xi(G.theta(X))), Vec(-G.eta_of(X) * G.theta(G.nabla_xi(Y)))})}};
}

Parts theta_nabla_xi(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  return {{"anticommute", vres(G, {G.theta(G.nabla_xi(v[0])), G.nabla_xi(G.theta(v[0]))})}};
}

Parts theta_commutation(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &Y = v[1], &H = v[2];
  const Vec nx = G.nabla_xi(X);
  return {{"commutation", vres(G, {G.nabla_theta(X, G.theta(Y)), G.theta(G.nabla_theta(X, Y)),
                                   Vec(-G.inner(Y, nx) * G.xi()), Vec(-G.eta_of(Y) * nx)})},
          {"horizontal-diagonal", vres(G, {G.nabla_theta(H, G.theta(H))})}};
}

Parts laplacian_commutator(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec& E = v[0];
  const Vec JE = G.theta(E);
  double worst = 0.0;
  for (const Vec& f : pg.frame.horizontal) {
    VectorTerms t(G);
    add_commutator(t, G, [&](const Vec& s) { return bar_hessian_J(G, E, E, s); }, f);
    add_commutator(t, G, [&](const Vec& s) { return bar_hessian_J(G, JE, JE, s); }, f);
    add_commutator(t, G, [&](const Vec& s) { return bar_curvature(G, E, JE, s); }, f, -2.0);
    worst = std::max(worst, t.residual());
  }
  return {{"commutator", worst}};
}

Parts xi_xi_hessian(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec& xi = G.xi();
  double worst = 0.0;
  for (const Vec& f : pg.frame.horizontal) {
    VectorTerms t(G);
    add_commutator(t, G, [&](const Vec& s) { return bar_hessian_J(G, xi, xi, s); }, f);
    worst = std::max(worst, t.residual());
  }
  const Vec& H = v[0];
  return {{"commutator", worst},
          {"ambient", vres(G, {G.hessian_theta(xi, xi, H), -G.theta(G.curvature(xi, H, xi))})}};
}

Parts curvature_decomposition(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const auto& pc = pg.connection;
  const Vec &X = v[0], &Y = v[1], &s = v[2];
  const Vec theta_s = G.theta(s);
  double eqa = 0.0;
  {
    VectorTerms t(G);
    const Vec& tb = theta_s;
    for (const Vec& f : pg.frame.horizontal) {
      const Vec nf = G.nabla_xi(f), ntf = G.nabla_xi(G.theta(f));
      t += Vec(G.inner(ntf, tb) * nf);
      t -= Vec(G.inner(nf, tb) * ntf);
      t -= G.theta(Vec(G.inner(ntf, s) * nf));
      t += G.theta(Vec(G.inner(nf, s) * ntf));
    }
    eqa = t.residual();
  }
  return {{"curvature", vres(G, {pc.curvature(X, Y, s), -bar_curvature(G, X, Y, s)})},
          {"curvature-theta", vres(G, {pc.curvature(X, Y, theta_s), -bar_curvature(G, X, Y, theta_s)})},
          {"nabla-J", vres(G, {pc.nabla_J(X, s), -bar_nabla_J(G, X, s)})},
          {"hessian-J", vres(G, {pc.hessian_J(X, Y, s), -bar_hessian_J(G, X, Y, s)})},
          {"hessian-J-xi", vres(G, {pc.hessian_J(G.xi(), G.xi(), s), -bar_hessian_J(G, G.xi(), G.xi(), s)})},
          {"J-equivariance", eqa}};
}

Parts ricci_star_relation(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const auto& F = pg.frame.horizontal;
  double worst = 0.0;
  for (const Vec& Z : F) {
    const Vec lap_jz = rough_laplacian_J(G, pg.frame, G.theta(Z));
    const Vec j_lap_z = G.theta(rough_laplacian_J(G, pg.frame, Z));
    Vec curv_comm = Vec::Zero(G.dim());
    double curv_scale = 0.0;
    for (const Vec& f : F) {
      const Vec tf = G.theta(f);
      const Vec a = bar_curvature(G, f, tf, G.theta(Z));
      const Vec b = G.theta(bar_curvature(G, f, tf, Z));
      curv_comm += a - b;
      curv_scale = std::max({curv_scale, G.norm(a), G.norm(b)});
    }
    for (const Vec& W : F) {
      const double r1 = 2.0 * ricci_star(G, pg.frame, G.theta(Z), G.theta(W));
      const double r2 = 2.0 * ricci_star(G, pg.frame, Z, W);
      const double lhs = G.inner(curv_comm, W);
      const double lap = -G.inner(lap_jz - j_lap_z, W);
      const double scale = std::max({1.0, curv_scale, std::abs(r1), std::abs(r2), G.norm(lap_jz), G.norm(j_lap_z)});
      worst = std::max({worst, std::abs(lhs - (r1 - r2)) / scale, std::abs(lhs - lap) / scale});
    }
  }
  const Vec &X = v[0], &Y = v[1];
  return {{"relation", worst},
          {"theta-invariance",
           sres({ricci_star(G, pg.frame, G.theta(X), G.theta(Y)), -ricci_star(G, pg.frame, X, Y)})}};
}

Parts second_section_equation(const PointGeometry& pg, Args) {
  const auto& G = pg.local;
  const auto h = hse2_residual(G, pg.frame);
  VectorTerms t(G);
  for (const Vec& f : pg.frame.horizontal) {
    t += G.theta(G.nabla_theta(f, G.nabla_xi(f)));
    t += Vec(0.5 * G.theta(G.curvature(f, G.theta(f), G.xi())));
  }
  for (const Vec& e : pg.frame.full()) t -= G.project(G.hessian_xi(e, e));
  return {{"trace-form", h.trace_form}, {"curvature-form", h.curvature_form}, {"equivalence", t.residual()}};
}

Parts hessian_theta_symmetries(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &W = v[0], &X = v[1], &Y = v[2], &Z = v[3];
  const Vec& xi = G.xi();
  return {{"skew-outer", sres({n2(G, W, X, Y, Z), n2(G, W, Z, Y, X)})},
          {"skew-inner", sres({n2(G, W, X, Y, Z), n2(G, W, Y, X, Z)})},
          {"ricci-identity", sres({-G.curvature4(W, X, Y, G.theta(Z)), -G.inner(Y, G.theta(G.curvature(W, X, Z))),
                                   -n2(G, W, X, Y, Z), n2(G, X, W, Y, Z)})},
          {"diagonal", sres({n2(G, X, Y, X, G.theta(Y)), -G.curvature4(X, Y, X, Y),
                             G.curvature4(X, Y, G.theta(X), G.theta(Y)), G.eta_of(Y) * G.curvature4(X, Y, X, xi)})}};
}

Parts nabla_theta_norm(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &Y = v[1];
  const Vec n = G.nabla_theta(X, Y);
  const double nn = G.inner(n, n);
  const double gy = G.inner(Y, G.nabla_xi(X));
  const Vec hxx = G.hessian_xi(X, X);
  const double eY = G.eta_of(Y);
  return {{"norm", sres({nn, gy * gy, G.curvature4(X, Y, X, Y), -G.curvature4(X, Y, G.theta(X), G.theta(Y))})},
          {"xi-component", sres({eY * G.curvature4(X, Y, X, G.xi()), -eY * G.inner(hxx, Y)})},
          {"second-derivative",
           sres({G.inner(G.theta(G.hessian_theta(X, X, Y)), Y), -nn, -G.inner(Y, hxx) * eY, -gy * gy})},
          {"killing-hessian", vres(G, {G.hessian_xi(X, Y), G.curvature(G.xi(), X, Y)})}};
}

Parts polarization(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &W = v[0], &X = v[1], &Y = v[2], &Z = v[3];
  const Vec &Wh = v[4], &Xh = v[5], &Yh = v[6], &Zh = v[7];
  ScalarTerms pre;
  pre += G.curvature4(X, Y, X, Y);
  pre -= G.curvature4(G.theta(X), G.theta(Y), G.theta(X), G.theta(Y));
  return {{"polarized", polarized_curvature(G, W, X, Y, Z)},
          {"diagonal", combine({{1.0, pre}, {-1.0, tensor_T(G, X, Y)}}).residual()},
          {"polarized-horizontal", polarized_curvature(G, Wh, Xh, Yh, Zh)},
          {"horizontal", sres({G.curvature4(Wh, Xh, Yh, Zh),
                               -G.curvature4(G.theta(Wh), G.theta(Xh), G.theta(Yh), G.theta(Zh))})}};
}

Parts tensor_T_properties(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &Y = v[1], &Xh = v[2], &Yh = v[3];
  const Vec& xi = G.xi();
  const Vec ny = G.nabla_xi(Yh);
  const double nn = G.inner(ny, ny);
  ScalarTerms tail;
  tail += -nn;
  tail += 2.0 * G.inner(G.theta(G.nabla_theta(Xh, Yh)), ny);
  tail += -G.curvature4(G.theta(Xh), G.theta(Yh), Yh, xi);
  ScalarTerms norm_term;
  norm_term += nn;
  return {{"symmetric", combine({{1.0, tensor_T(G, X, Y)}, {-1.0, tensor_T(G, Y, X)}}).residual()},
          {"horizontal", tensor_T(G, Xh, Yh).residual()},
          {"xi", combine({{1.0, tensor_T(G, xi, Yh)}, {1.0, norm_term}}).residual()},
          {"xi-plus-horizontal", combine({{1.0, tensor_T(G, Vec(xi + Xh), Yh)}, {-1.0, tail}}).residual()}};
}

Parts unit_field_harmonicity(const PointGeometry& pg, Args) {
  const auto& G = pg.local;
  const Vec& xi = G.xi();
  VectorTerms eq35(G), eq37(G), bianchi(G), trace(G), lap_f(G), rf(G);
  for (const Vec& f : pg.frame.horizontal) {
    const Vec tf = G.theta(f);
    const Vec r = G.curvature(f, tf, xi);
    const Vec rx = G.curvature(xi, f, tf);
    eq35 += Vec(3.0 * G.theta(r));
    eq37 += G.project(r);
    eq37 += G.project(rx);
    bianchi += r;
    bianchi += Vec(2.0 * rx);
    trace += G.nabla_theta(f, G.nabla_xi(f));
    rf += G.project(r);
  }
  for (const Vec& e : pg.frame.full()) {
    const Vec h = G.project(G.hessian_xi(e, e));
    eq35 -= h;
    lap_f -= h;
  }
  return {{"laplacian-curvature", eq35.residual()},
          {"curvature-pair", eq37.residual()},
          {"bianchi", bianchi.residual()},
          {"trace", trace.residual()},
          {"horizontal-laplacian", lap_f.residual()},
          {"horizontal-curvature-trace", rf.residual()}};
}

Parts first_section_equation(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Mat C = hse1_commutator(G, pg.frame);
  const Mat N = hse1_ricci_matrix(G, pg.frame);
  const Vec &X = v[0], &Y = v[1];
  return {{"commutator", hse1_residual(G, pg.frame)},
          {"ricci-star", hse1_ricci_residual(G, pg.frame)},
          {"routes", (C + N).norm() / std::max({1.0, C.norm(), N.norm()})},
          {"theta-invariance",
           sres({ricci_star(G, pg.frame, G.theta(X), G.theta(Y)), -ricci_star(G, pg.frame, X, Y)})}};
}

Parts horizontal_curvature(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &W = v[0], &X = v[1], &Y = v[2], &Z = v[3];
  const Vec nw = G.nabla_xi(W);
  return {{"pair", sres({G.curvature4(Y, X, W, Z), -G.curvature4(Y, X, G.theta(W), G.theta(Z)),
                         G.inner(G.nabla_theta(W, Z), G.nabla_theta(Y, X)),
                         -G.inner(Y, G.nabla_xi(X)) * G.inner(Z, nw)})},
          {"diagonal", sres({2.0 * G.inner(G.nabla_theta(W, Z), G.nabla_theta(W, X)),
                             2.0 * G.inner(Z, nw) * G.inner(X, nw), 2.0 * G.curvature4(W, Z, W, X),
                             -2.0 * G.curvature4(W, Z, G.theta(W), G.theta(X))})}};
}

Parts curvature_theta_commutator(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &W = v[0], &X = v[1], &Y = v[2], &Z = v[3];
  return {{"commutator", sres({G.inner(G.curvature(Y, X, G.theta(W)), Z), -G.inner(G.theta(G.curvature(Y, X, W)), Z),
                               -G.inner(G.nabla_theta(Y, X), G.theta(G.nabla_theta(W, Z))),
                               G.inner(W, G.nabla_xi(Z)) * G.inner(X, G.nabla_xi(G.theta(Y))),
                               -G.inner(Y, G.nabla_xi(X)) * G.inner(Z, G.nabla_xi(G.theta(W)))})}};
}

Parts mixed_curvature_expansion(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &W = v[0], &Y = v[1], &Z = v[2];
  const Vec& xi = G.xi();
  const Vec tw = G.theta(W), ty = G.theta(Y), tz = G.theta(Z);
  return {{"expansion", sres({3.0 * G.curvature4(W, xi, Y, Z),
                              -2.0 * G.inner(G.theta(G.nabla_theta(Z, Y)), G.nabla_xi(W)),
                              -G.inner(G.theta(G.nabla_theta(Z, W)), G.nabla_xi(Y)), 0.5 * G.curvature4(tz, tw, Y, xi),
                              -G.curvature4(ty, tz, W, xi), G.inner(G.theta(G.nabla_theta(Y, W)), G.nabla_xi(Z)),
                              -0.5 * G.curvature4(ty, tw, Z, xi)})}};
}

Parts map_term1_horizontal(const PointGeometry& pg, Args v) {
  const auto t = harmonic_map_terms(pg.local, pg.frame, v[0]);
  return {{"curvature", t.term1.residual()}, {"projected-curvature", t.term1_bar.residual()}};
}

Parts map_term1_xi(const PointGeometry& pg, Args) {
  const auto t = harmonic_map_terms(pg.local, pg.frame, pg.local.xi());
  return {{"curvature", t.term1.residual()}, {"projected-curvature", t.term1_bar.residual()}};
}

Parts map_term2(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &W = v[1], &Y = v[2], &Z = v[3];
  return {{"tangent", harmonic_map_terms(G, pg.frame, X).term2.residual()},
          {"horizontal", harmonic_map_terms(G, pg.frame, W).term2.residual()},
          {"xi", harmonic_map_terms(G, pg.frame, G.xi()).term2.residual()},
          {"curvature-formula", sres({1.5 * G.curvature4(W, Z, Y, G.xi()),
                                      -18.0 / 7.0 * G.inner(G.nabla_xi(Y), G.theta(G.nabla_theta(Z, W))),
                                      -9.0 / 7.0 * G.inner(G.nabla_xi(W), G.theta(G.nabla_theta(Z, Y))),
                                      9.0 / 7.0 * G.inner(G.nabla_xi(Z), G.theta(G.nabla_theta(W, Y)))})},
          {"seven-quarters", sres({G.inner(G.nabla_theta(Z, Y), G.theta(G.nabla_xi(W))),
                                   G.inner(G.nabla_theta(Y, W), G.theta(G.nabla_xi(Z))),
                                   1.75 * G.curvature4(W, Z, Y, G.xi()),
                                   1.75 * G.curvature4(G.theta(W), G.theta(Z), Y, G.xi())})}};
}

Parts closed_eta_curvature(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &X = v[0], &Y = v[1], &Z = v[2], &W = v[3];
  return {{"theta-invariance",
           sres({G.curvature4(G.theta(X), G.theta(Y), G.theta(Z), G.theta(W)), -G.curvature4(X, Y, Z, W)})}};
}

Parts xi_sectional(const PointGeometry& pg, Args v) {
  const auto& G = pg.local;
  const Vec &W = v[0], &Y = v[1], &Z = v[2];
  const Vec& xi = G.xi();
  const Vec nw = G.nabla_xi(W);
  return {{"xi-xi", sres({G.curvature4(xi, W, xi, Y), G.inner(nw, G.nabla_xi(Y))})},
          {"mixed", sres({-2.0 * G.inner(G.nabla_theta(W, Z), G.theta(nw)), 2.0 * G.curvature4(W, xi, W, Z),
                          -G.curvature4(W, xi, G.theta(W), G.theta(Z))})}};
}

constexpr Slot T = Slot::Tangent;
constexpr Slot H = Slot::Horizontal;

std::vector<IdentityDescriptor> build_catalog() {
  std::vector<IdentityDescriptor> c;
  auto add = [&](std::string id, std::string anchor, std::vector<Slot> slots, IdentityEvaluator f) -> IdentityDescriptor& {
    c.push_back({std::move(id), std::move(anchor), std::move(slots), false, false, std::move(f)});
    return c.back();
  };
  add("I1", "θ² = −Id + η⊗ξ, η(ξ) = 1, |ξ| = 1, g(θX,θY) = g(X,Y) − η(X)η(Y)", {T, T}, axioms).gate = true;
  add("I2", "(∇_Xθ)Y + (∇_Yθ)X = 0", {T, T, H}, nearly_cosymplectic).gate = true;
  add("I3", "ξ is Killing and ∇_ξξ = 0", {T, T}, killing_geodesic);
  add("I4",
      "for X,Y in F: (∇̄_XJ)Y = −(∇̄_YJ)X, (∇̄_ξJ)X = θ∇_Xξ = (∇_ξθ)X, θ(∇̄_ξJ)X = −∇_Xξ, "
      "(∇̄_XJ)Y = −(∇̄_{JX}J)JY",
      {H, H}, bar_nabla_J_symmetries);
  add("I5", "Σ_i (∇̄_{F_i}J)F_i = 0", {}, divergence);
  add("I6", "(∇_{θX}θ)θY + (∇_Xθ)Y = η(Y)∇_{θX}ξ + η(X)θ∇_Yξ", {T, T}, theta_xi_mixed);
  add("I7", "θ∇_Xξ + ∇_{θX}ξ = 0", {T}, theta_nabla_xi);
  add("I8", "(∇_Xθ)θY + θ(∇_Xθ)Y = g(Y,∇_Xξ)ξ + η(Y)∇_Xξ", {T, T, H}, theta_commutation);
  add("I9", "[∇̄²_{E,E}J + ∇̄²_{JE,JE}J − 2R̄(E,JE), J] = 0 on F", {H}, laplacian_commutator);
  add("I10", "[∇̄²_{ξ,ξ}J, J] = 0 and (∇²_{ξ,ξ}θ)X = θR(ξ,X)ξ", {H}, xi_xi_hessian);
  add("I11", "R̄(X,Y)s = P R(X,Y)s + g(∇_Yξ,s)∇_Xξ − g(∇_Xξ,s)∇_Yξ, with R̄ the curvature of ∇̄ = P∘∇ on F",
      {T, T, H}, curvature_decomposition);
  add("I12", "g([Σ_i R̄(F_i,θF_i), J]Z, W) = 2ricci*(θZ,θW) − 2ricci*(Z,W) = −g([∇̄*∇̄J, J]Z, W)", {H, H},
      ricci_star_relation);
  add("I13", "∇*∇ξ − |∇ξ|²ξ = −½[Σ_i R(F_i,θF_i), θ]ξ, equivalent to ∇*∇ξ = |∇ξ|²ξ − ½ J tr(∇̄J⊗∇ξ)", {},
      second_section_equation);
  add("I14",
      "g(Y,(∇²_{W,X}θ)Z) is skew under X↔Z and X↔Y and obeys the Ricci identity; "
      "g(X,(∇²_{X,Y}θ)θY) = R(X,Y,X,Y) − R(X,Y,θX,θY) − η(Y)R(X,Y,X,ξ)",
      {T, T, T, T}, hessian_theta_symmetries);
  add("I15", "|(∇_Xθ)Y|² + g(Y,∇_Xξ)² = R(X,Y,θX,θY) − R(X,Y,X,Y), with ∇²_{X,Y}ξ = −R(ξ,X)Y", {T, T},
      nabla_theta_norm);
  add("I16", "R(W,X,Y,Z) − R(θW,θX,θY,θZ) = (A − B)(W,X,Y,Z)/3, A and B the polarizations of T", {T, T, T, T, H, H, H, H},
      polarization);
  add("I17", "T(X,Y) = T(Y,X), T = 0 on F, T(ξ,Y) = −|∇_Yξ|² for Y in F", {T, T, H, H}, tensor_T_properties);
  add("I18", "3θΣ_i R(F_i,θF_i)ξ = −(∇*∇ξ)^F, (Σ_i R(F_i,θF_i)ξ)^F = 0, ξ is a harmonic unit vector field", {},
      unit_field_harmonicity);
  add("I19", "[∇̄*∇̄J, J] = 0", {H, H}, first_section_equation);
  add("I20", "R(Y,X,W,Z) − R(Y,X,θW,θZ) = g(Y,∇_Xξ)g(Z,∇_Wξ) − g((∇_Wθ)Z,(∇_Yθ)X) for W,X,Y,Z in F",
      {H, H, H, H}, horizontal_curvature);
  add("I21",
      "g([R(Y,X),θ]W, Z) = g((∇_Yθ)X, θ(∇_Wθ)Z) − g(W,∇_Zξ)g(X,∇_{θY}ξ) + g(Y,∇_Xξ)g(Z,∇_{θW}ξ) on F",
      {H, H, H, H}, curvature_theta_commutator);
  add("I22", "3R(W,ξ,Y,Z) expanded through θ∇θ, ∇ξ and R(θ·,θ·,·,ξ) for W,Y,Z in F", {H, H, H},
      mixed_curvature_expansion);
  add("I23", "Σ g((∇̄_{E_i}J)F_j, [R(E_i,X),θ]F_j) = 0 for X in F", {H}, map_term1_horizontal);
  add("I24", "Σ g((∇̄_{E_i}J)F_j, [R(E_i,ξ),θ]F_j) = 0", {}, map_term1_xi);
  add("I25",
      "Σ_i g(∇_{E_i}ξ, R(E_i,X)ξ) = 0, with (3/2)R(W,Z,Y,ξ) = (18/7)g(∇_Yξ,θ(∇_Zθ)W) + "
      "(9/7)g(∇_Wξ,θ(∇_Zθ)Y) − (9/7)g(∇_Zξ,θ(∇_Wθ)Y)",
      {T, H, H, H}, map_term2);
  add("I26", "R(θX,θY,θZ,θW) = R(X,Y,Z,W) when η is closed", {T, T, T, T}, closed_eta_curvature)
      .cosymplectic_only = true;
  add("I27", "g(R(ξ,W)ξ,Y) = −g(∇_Wξ,∇_Yξ) for W,Y in F", {H, H, H}, xi_sectional);
  return c;
}

}  // namespace

const std::vector<IdentityDescriptor>& identity_catalog() {
  static const std::vector<IdentityDescriptor> catalog = build_catalog();
  return catalog;
}

const IdentityDescriptor& find_identity(std::string_view id) {
  for (const auto& d : identity_catalog())
    if (d.id == id) return d;
  throw DomainError("unknown identity '" + std::string(id) + "'");
}

PartResiduals evaluate_parts(const IdentityDescriptor& d, const PointGeometry& pg, std::span<const Vec> vectors) {
  if (static_cast<int>(vectors.size()) != d.arity())
    throw DomainError(d.id + " takes " + std::to_string(d.arity()) + " vectors, got " + std::to_string(vectors.size()));
  const auto& G = pg.local;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != G.dim()) throw DomainError(d.id + ": vector " + std::to_string(k) + " has wrong dimension");
    if (d.slots[k] == Slot::Horizontal && std::abs(G.eta_of(vectors[k])) > 1e-10 * std::max(1.0, G.norm(vectors[k])))
      throw DomainError(d.id + ": vector " + std::to_string(k) + " must be horizontal");
  }
  auto parts = d.evaluate(pg, vectors);
  for (const auto& p : parts)
    if (!std::isfinite(p.residual)) throw NumericalError(d.id + ": non-finite residual in part " + p.name);
  return parts;
}

double evaluate_identity(const IdentityDescriptor& d, const PointGeometry& pg, std::span<const Vec> vectors) {
  double worst = 0.0;
  for (const auto& p : evaluate_parts(d, pg, vectors)) worst = std::max(worst, p.residual);
  return worst;
}

}  // namespace nchv
