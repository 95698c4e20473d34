#include <doctest.h>

#include <cmath>
#include <random>

#include "nchv/jet.hpp"

using namespace nchv;

TEST_CASE("zero payload reproduces plain arithmetic exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = u(rng), b = u(rng);
    const Jet<2> A(a), B(b);
    CHECK(value_of(A + B) == a + b);
    CHECK(value_of(A - B) == a - b);
    CHECK(value_of(A * B) == a * b);
    const Jet<3> C(a), D(b);
    CHECK(value_of(C * D - C) == a * b - a);
  }
}

TEST_CASE("seeded evaluation matches analytic derivatives of a composite") {
  // f(x) = sin(exp(x^2 / 2)); derivatives by hand.
  for (double x : {-0.7, 0.1, 0.4, 1.3}) {
    const auto J = seed_variable<Jet<3>>(x, 0);
    const Jet<3> f = sin(exp(J * J * 0.5));

    const double e = std::exp(x * x / 2);
    const double c = std::cos(e), s = std::sin(e);
    // u = e, u' = x e, u'' = (1 + x^2) e, u''' = (3x + x^3) e
    const double u1 = x * e, u2 = (1 + x * x) * e, u3 = (3 * x + x * x * x) * e;
    const double f1 = c * u1;
    const double f2 = -s * u1 * u1 + c * u2;
    const double f3 = -c * u1 * u1 * u1 - 3 * s * u1 * u2 + c * u3;

    CHECK(f.v.v.v == doctest::Approx(std::sin(e)).epsilon(1e-15));
    CHECK(std::abs(f.d[0].v.v - f1) <= 1e-13 * std::max(1.0, std::abs(f1)));
    CHECK(std::abs(f.d[0].d[0].v - f2) <= 1e-13 * std::max(1.0, std::abs(f2)));
    CHECK(std::abs(f.d[0].d[0].d[0] - f3) <= 1e-13 * std::max(1.0, std::abs(f3)));
    // Mixed levels agree: the derivative stored at the inner level equals
    // the one stored at the outer level.
    CHECK(std::abs(f.v.d[0].v - f1) <= 1e-13 * std::max(1.0, std::abs(f1)));
    CHECK(std::abs(f.v.v.d[0] - f1) <= 1e-13 * std::max(1.0, std::abs(f1)));
  }
}

TEST_CASE("mixed partials in two variables") {
  // f(x, y) = x^2 y^3 + log(x) cos(y) + sqrt(x y)
  const double x = 1.3, y = 0.7;
  const Jet<2> X = seed_variable<Jet<2>>(x, 0);
  const Jet<2> Y = seed_variable<Jet<2>>(y, 1);
  const Jet<2> f = X * X * Y * Y * Y + log(X) * cos(Y) + sqrt(X * Y);
  const double fxy = 6 * x * y * y - std::sin(y) / x + 0.25 / std::sqrt(x * y);
  CHECK(f.d[0].d[1] == doctest::Approx(fxy).epsilon(1e-13));
  CHECK(f.d[1].d[0] == doctest::Approx(fxy).epsilon(1e-13));
  const double fyy = 6 * x * x * y - std::log(x) * std::cos(y) - 0.25 * std::sqrt(x) * std::pow(y, -1.5);
  CHECK(f.d[1].d[1] == doctest::Approx(fyy).epsilon(1e-13));
}

TEST_CASE("division and mixed double operands") {
  const Jet<1> X = seed_variable<Jet<1>>(2.0, 0);
  const Jet<1> q = 3.0 / X - X / 4.0 + (1.0 - X) * 2.0;
  CHECK(q.v == doctest::Approx(1.5 - 0.5 - 2.0));
  CHECK(q.d[0] == doctest::Approx(-3.0 / 4.0 - 0.25 - 2.0));
}
