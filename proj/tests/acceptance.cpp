// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "fd_oracle.hpp"
#include "nchv/verifier.hpp"

using namespace nchv;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kSamples = 100;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double max_abs_diff(const Tensor<double>& t, const std::vector<double>& ref) {
  double m = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) m = std::max(m, std::abs(t[i] - ref[i]));
  return m;
}

std::vector<Point> points(const ChartManifold& m, int count = kSamples) {
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) out.push_back(sample_point(m, kSeed, k));
  return out;
}

Vec unit(const LocalStructure& ls, std::mt19937_64& rng, bool horizontal) {
  std::normal_distribution<double> nd;
  Vec v(ls.dim());
  for (int i = 0; i < ls.dim(); ++i) v[i] = nd(rng);
  if (horizontal) v = ls.project(v);
  return v / ls.norm(v);
}

Mat random_rotation(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = nd(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ();
}

void kernel(Outcome& o) {
  const auto s2 = make_round_s2();
  const fd::MetricFn s2_metric = [](const fd::Point& x) {
    return std::vector<double>{1.0, 0.0, 0.0, std::sin(x[0]) * std::sin(x[0])};
  };
  const fd::MetricFn flat_metric = [](const fd::Point&) {
    std::vector<double> g(25, 0.0);
    for (int i = 0; i < 5; ++i) g[i * 6] = 1.0;
    return g;
  };
  const auto flat = make_flat_cosymplectic_r5();
  double gamma = 0.0, riem = 0.0, sec = 0.0;
  std::mt19937_64 rng(1);
  for (const auto& x : points(s2, 20)) {
    gamma = std::max(gamma, max_abs_diff(christoffel_at(s2, x), fd::christoffel(s2_metric, x)));
    riem = std::max(riem, max_abs_diff(riemann_tensor_at(s2, x), fd::riemann(s2_metric, x)));
    std::normal_distribution<double> nd;
    const Vec X = (Vec(2) << nd(rng), nd(rng)).finished(), Y = (Vec(2) << nd(rng), nd(rng)).finished();
    sec = std::max(sec, std::abs(sectional_curvature(s2, {x, X}, {x, Y}) - 1.0));
  }
  for (const auto& x : points(flat.manifold(), 5)) {
    gamma = std::max(gamma, max_abs_diff(christoffel_at(flat.manifold(), x), fd::christoffel(flat_metric, x)));
    riem = std::max(riem, max_abs_diff(riemann_tensor_at(flat.manifold(), x), fd::riemann(flat_metric, x)));
  }
  o.require(gamma <= 1e-5, "Γ vs oracle");
  o.require(riem <= 1e-5, "R vs oracle");
  o.require(sec <= 1e-6, "S² sectional curvature");
  o.detail << "Γ diff " << sci(gamma) << ", R diff " << sci(riem) << ", |K-1| " << sci(sec);
}

void gates(Outcome& o) {
  double axioms = 0.0, nc = 0.0;
  std::mt19937_64 rng(2);
  for (const auto& spec : model_registry()) {
    const bool control = spec.classification == Classification::NegativeControl;
    for (const auto& x : points(spec.structure.manifold())) {
      const LocalStructure ls(spec.structure, x);
      axioms = std::max(axioms, axiom_residuals(ls).max());
      if (control) continue;
      const Vec X = unit(ls, rng, false), Y = unit(ls, rng, false), H = unit(ls, rng, true);
      const std::vector<VectorPair> pairs = {{X, Y}, {X, X}, {H, H}};
      nc = std::max(nc, nearly_cosymplectic_residual(ls, pairs));
    }
  }
  const auto control = make_sasakian_control();
  const LocalStructure ls(control, Point{0.0, 0.0, 0.0});
  const Vec e1 = (Vec(3) << 2.0, 0.0, 0.0).finished();
  const std::vector<VectorPair> pairs = {{e1, e1}};
  const double closed = nearly_cosymplectic_residual(ls, pairs);
  o.require(axioms <= 1e-10, "axioms");
  o.require(nc <= 1e-7, "nearly cosymplectic on positives");
  o.require(std::abs(closed - 2.0) <= 1e-6, "closed-form control sample");
  o.detail << "axioms " << sci(axioms) << ", nc positives " << sci(nc) << ", control sample " << closed;
}

void section_level(Outcome& o) {
  const auto acs = make_s5_nearly_cosymplectic();
  double hse1 = 0.0, a = 0.0, b = 0.0, strict = 0.0;
  for (const auto& x : points(acs.manifold())) {
    const LocalStructure ls(acs, x);
    const auto fp = orthonormal_frame(ls);
    hse1 = std::max(hse1, hse1_residual(ls, fp));
    const auto h = hse2_residual(ls, fp);
    a = std::max(a, h.trace_form);
    b = std::max(b, h.curvature_form);
    strict = std::max(strict, std::sqrt(grad_xi_squared(ls, fp)));
  }
  o.require(hse1 <= 1e-7, "hse1");
  o.require(a <= 1e-7 && b <= 1e-7, "hse2");
  o.require(strict >= 0.1, "strictness");
  o.detail << "hse1 " << sci(hse1) << ", hse2 " << sci(a) << "/" << sci(b) << ", max|∇ξ| " << strict;
}

void map_level(Outcome& o) {
  const auto acs = make_s5_nearly_cosymplectic();
  std::mt19937_64 rng(4);
  double t1 = 0.0, t2 = 0.0, lap = 0.0, rf = 0.0;
  for (const auto& x : points(acs.manifold())) {
    const LocalStructure ls(acs, x);
    const auto fp = orthonormal_frame(ls);
    for (const Vec& X : {unit(ls, rng, true), Vec(ls.xi())}) {
      const auto r = harmonic_map_residual(ls, fp, X);
      t1 = std::max(t1, r.term1);
      t2 = std::max(t2, r.term2);
    }
    lap = std::max(lap, ls.norm(ls.project(rough_laplacian_xi(ls, fp))));
    Vec s = Vec::Zero(ls.dim());
    for (const Vec& f : fp.horizontal) s += ls.project(ls.curvature(f, ls.theta(f), ls.xi()));
    rf = std::max(rf, ls.norm(s));
  }
  o.require(t1 <= 1e-7, "term1");
  o.require(t2 <= 1e-7, "term2");
  o.require(lap <= 1e-7, "(∇*∇ξ)^F");
  o.require(rf <= 1e-7, "Σ R^F(F_i,θF_i)ξ");
  o.detail << "term1 " << sci(t1) << ", term2 " << sci(t2) << ", (∇*∇ξ)^F " << sci(lap) << ", ΣR^F " << sci(rf);
}

SuiteConfig suite(std::string model) {
  SuiteConfig c;
  c.model = std::move(model);
  c.samples = kSamples;
  c.seed = kSeed;
  c.threads = 0;
  return c;
}

void catalog(Outcome& o) {
  const auto s5 = run_suite(suite("s5-octonion"));
  int passed = 0;
  double worst = 0.0;
  for (const auto& r : s5.identities) {
    if (r.id == "I26") continue;
    const bool ok = r.status == Status::Pass && r.samples == kSamples;
    o.require(ok, r.id + " on s5-octonion");
    passed += ok;
    worst = std::max(worst, r.max_residual);
  }
  for (const char* m : {"flat-r5", "s2xr"}) {
    auto c = suite(m);
    c.identities = {"I26"};
    const auto r = run_suite(c);
    for (const auto& i : r.identities)
      if (i.id == "I26") o.require(i.status == Status::Pass && i.samples == kSamples, std::string("I26 on ") + m);
  }
  o.detail << passed << "/26 on s5-octonion (max " << sci(worst) << "), I26 on flat-r5 and s2xr";
}

void discrimination(Outcome& o) {
  const auto r = run_suite(suite("sasakian-control"));
  double i2 = 0.0, i15 = 0.0, i16 = 0.0;
  bool i2_expected = false;
  for (const auto& i : r.identities) {
    if (i.id == "I2") {
      i2 = i.max_residual;
      i2_expected = i.status == Status::ExpectedFail;
    }
    if (i.id == "I15") i15 = i.max_residual;
    if (i.id == "I16") i16 = i.max_residual;
  }
  o.require(i2_expected && i2 >= 1.0, "I2 expected failure");
  o.require(std::max(i15, i16) > 1e-2, "I15/I16 discrimination");
  o.detail << "I2 " << i2 << ", I15 " << sci(i15) << ", I16 " << sci(i16);
}

void invariance(Outcome& o) {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  auto track = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
  auto trackv = [&](const LocalStructure& ls, const Vec& a, const Vec& b) { worst = std::max(worst, ls.norm(a - b)); };
  for (const auto& spec : model_registry()) {
    for (const auto& x : points(spec.structure.manifold(), 20)) {
      const LocalStructure ls(spec.structure, x);
      const auto fp = orthonormal_frame(ls);
      const int m = static_cast<int>(fp.horizontal.size());
      const Vec X = unit(ls, rng, false), H = unit(ls, rng, true), K = unit(ls, rng, true);
      const auto h0 = hse2_residual(ls, fp);
      const auto t0 = harmonic_map_terms(ls, fp, X);
      for (const auto& other : {rotate_frame(fp, random_rotation(m, rng)), theta_frame(ls, fp)}) {
        track(ricci_star(ls, fp, H, K), ricci_star(ls, other, H, K));
        track(hse1_residual(ls, fp), hse1_residual(ls, other));
        track(hse1_ricci_residual(ls, fp), hse1_ricci_residual(ls, other));
        const auto h = hse2_residual(ls, other);
        track(h0.trace_form, h.trace_form);
        track(h0.curvature_form, h.curvature_form);
        const auto t = harmonic_map_terms(ls, other, X);
        track(t0.term1.sum, t.term1.sum);
        track(t0.term1_bar.sum, t.term1_bar.sum);
        track(t0.term2.sum, t.term2.sum);
        trackv(ls, divergence_J(ls, fp), divergence_J(ls, other));
        trackv(ls, rough_laplacian_J(ls, fp, H), rough_laplacian_J(ls, other, H));
        trackv(ls, rough_laplacian_xi(ls, fp), rough_laplacian_xi(ls, other));
        trackv(ls, curvature_trace_xi(ls, fp), curvature_trace_xi(ls, other));
        trackv(ls, trace_bar_J_nabla_xi(ls, fp), trace_bar_J_nabla_xi(ls, other));
      }
    }
  }
  o.require(worst <= 1e-9, "frame invariance");

  auto stable = [](const RunReport& r) {
    auto j = to_json(r);
    j.erase("wall_time_ms");
    return j.dump();
  };
  bool reproducible = true, parallel_same = true;
  for (const char* m : {"s5-octonion", "sasakian-control"}) {
    auto c = suite(m);
    c.samples = 30;
    c.threads = 1;
    const auto a = stable(run_suite(c));
    reproducible = reproducible && a == stable(run_suite(c));
    c.threads = 8;
    parallel_same = parallel_same && a == stable(run_suite(c));
  }
  o.require(reproducible, "byte-identical reports");
  o.require(parallel_same, "serial vs parallel");
  o.detail << "max frame change " << sci(worst) << ", reports reproducible, serial == parallel";
}

void cross_route(Outcome& o) {
  std::mt19937_64 rng(6);
  double routes = 0.0, rbar = 0.0;
  for (const auto& spec : model_registry()) {
    for (const auto& x : points(spec.structure.manifold(), 50)) {
      const LocalStructure ls(spec.structure, x);
      const auto fp = orthonormal_frame(ls);
      const Mat C = hse1_commutator(ls, fp), N = hse1_ricci_matrix(ls, fp);
      routes = std::max(routes, (C + N).norm() / std::max({1.0, C.norm(), N.norm()}));
      const ProjectedConnection pc(spec.structure, x);
      const Vec X = unit(ls, rng, false), Y = unit(ls, rng, false), s = unit(ls, rng, true);
      const Vec a = pc.curvature(X, Y, s), b = bar_curvature(ls, X, Y, s);
      rbar = std::max(rbar, ls.norm(a - b) / std::max({1.0, ls.norm(a), ls.norm(b)}));
    }
  }
  o.require(routes <= 1e-7, "hse1 routes");
  o.require(rbar <= 1e-6, "R̄ routes");
  o.detail << "hse1 commutator vs ricci* " << sci(routes) << ", R̄ decomposition vs direct " << sci(rbar);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 kernel", 5, kernel},           {"AC2 structure gates", 10, gates},
      {"AC3 section equations", 60, section_level}, {"AC4 map equation", 120, map_level},
      {"AC5 catalog sweep", 600, catalog}, {"AC6 discrimination", 600, discrimination},
      {"AC7 invariance", 600, invariance}, {"AC8 cross-route", 600, cross_route},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(s < c.limit_s, "runtime over " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    std::printf("%-24s %s  %s (%.2f s)\n", c.name, o.ok ? "PASS" : "FAIL", o.detail.str().c_str(), s);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
