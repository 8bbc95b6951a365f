#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ctc/expr.hpp"
#include "ctc/jet.hpp"

using namespace ctc;

namespace {

Jet2 random_jet(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Jet2 j(d, U(rng));
  for (int a = 0; a < d; ++a) j.grad(a) = U(rng);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) j.hess(a, b) = U(rng);
  return j;
}

double jet_diff(const Jet2& f, const Jet2& g) {
  double m = std::abs(f.value() - g.value());
  for (int a = 0; a < f.dim(); ++a) {
    m = std::max(m, std::abs(f.grad(a) - g.grad(a)));
    for (int b = a; b < f.dim(); ++b) m = std::max(m, std::abs(f.hess(a, b) - g.hess(a, b)));
  }
  return m;
}

Jet2 eval2(const std::string& src, std::vector<double> x) {
  return evaluate_2jet(parse_field(src), {"x", "y", "z"}, x);
}

}  // namespace

TEST_SUITE("jet") {

TEST_CASE("polynomial jet") {
  const Jet2 j = eval2("x*y + z", {1, 2, 3});
  CHECK(j.value() == 5.0);
  CHECK(j.grad(0) == 2.0);
  CHECK(j.grad(1) == 1.0);
  CHECK(j.grad(2) == 1.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(j.hess(a, b) == ((a + b == 1) ? 1.0 : 0.0));
}

TEST_CASE("constant jet") {
  const Jet2 j = eval2("7", {0.4, -2, 9});
  CHECK(j.value() == 7.0);
  for (int a = 0; a < 3; ++a) {
    CHECK(j.grad(a) == 0.0);
    for (int b = 0; b < 3; ++b) CHECK(j.hess(a, b) == 0.0);
  }
}

TEST_CASE("sin(x)*exp(y) at the origin") {
  const Jet2 j = eval2("sin(x)*exp(y)", {0, 0, 0});
  CHECK(j.value() == doctest::Approx(0.0));
  CHECK(j.grad(0) == doctest::Approx(1.0));
  CHECK(j.grad(1) == doctest::Approx(0.0));
  CHECK(j.grad(2) == doctest::Approx(0.0));
  CHECK(j.hess(0, 1) == doctest::Approx(1.0));
  CHECK(j.hess(0, 0) == doctest::Approx(0.0));
  CHECK(j.hess(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("hessian is symmetric by storage") {
  Jet2 j(3);
  j.hess(2, 0) = 4.5;
  CHECK(j.hess(0, 2) == 4.5);
}

TEST_CASE("ring laws") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Jet2 f = random_jet(rng, 4), g = random_jet(rng, 4), h = random_jet(rng, 4);
    CHECK(jet_diff(f * g, g * f) < 1e-15);
    CHECK(jet_diff((f * g) * h, f * (g * h)) < 1e-14);
    CHECK(jet_diff(f * (g + h), f * g + f * h) < 1e-14);
    CHECK(jet_diff(f - f, Jet2(4)) == 0.0);
    Jet2 one(4, 1.0);
    CHECK(jet_diff(f * one, f) == 0.0);
  }
}

TEST_CASE("reciprocal inverts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Jet2 f = random_jet(rng, 3);
    f.value() += 3.0;
    CHECK(jet_diff(f * reciprocal(f), Jet2(3, 1.0)) < 1e-14);
  }
}

TEST_CASE("chain rule against second-order expansion") {
  // exp(sin(x)) at x0: f' = cos e^sin, f'' = (cos^2 - sin) e^sin
  const double x0 = 0.37;
  const Jet2 j = eval2("exp(sin(x))", {x0, 0, 0});
  const double e = std::exp(std::sin(x0));
  CHECK(j.grad(0) == doctest::Approx(std::cos(x0) * e).epsilon(1e-14));
  CHECK(j.hess(0, 0) == doctest::Approx((std::cos(x0) * std::cos(x0) - std::sin(x0)) * e).epsilon(1e-14));
}

TEST_CASE("identity system") {
  std::mt19937_64 rng(5);
  JetMatrix A(3, 3, Jet2(3));
  for (int i = 0; i < 3; ++i) A(i, i) = Jet2(3, 1.0);
  std::vector<Jet2> b{random_jet(rng, 3), random_jet(rng, 3), random_jet(rng, 3)};
  const auto x = jet_linear_solve(A, b);
  for (int i = 0; i < 3; ++i) CHECK(jet_diff(x[i], b[i]) == 0.0);
}

TEST_CASE("scalar division system") {
  JetMatrix A(2, 2, Jet2(2));
  A(0, 0) = A(1, 1) = Jet2(2, 2.0);
  const Jet2 x0 = Jet2::variable(2, 0, 0.8);
  const auto x = jet_linear_solve(A, std::vector<Jet2>{x0, x0});
  for (int i = 0; i < 2; ++i) CHECK(jet_diff(x[i], 0.5 * x0) < 1e-16);
}

TEST_CASE("solve with a jet entry matches the differentiated closed form") {
  // A = [[1, x0], [0, 1]], b = (1, 1): x = (1 - x0, 1)
  JetMatrix A(2, 2, Jet2(1));
  A(0, 0) = A(1, 1) = Jet2(1, 1.0);
  A(0, 1) = Jet2::variable(1, 0, 1.0);
  const auto x = jet_linear_solve(A, std::vector<Jet2>{Jet2(1, 1.0), Jet2(1, 1.0)});
  CHECK(x[0].value() == doctest::Approx(0.0));
  CHECK(x[0].grad(0) == doctest::Approx(-1.0));
  CHECK(x[0].hess(0, 0) == doctest::Approx(0.0));
  CHECK(x[1].value() == doctest::Approx(1.0));
  CHECK(x[1].grad(0) == doctest::Approx(0.0));
}

TEST_CASE("solve through a nonlinear matrix") {
  // A = [[x, 1], [1, y]] at (2, 3); closed form inverse differentiated by hand
  JetMatrix A(2, 2, Jet2(2, 1.0));
  A(0, 0) = Jet2::variable(2, 0, 2.0);
  A(1, 1) = Jet2::variable(2, 1, 3.0);
  const auto sol = jet_linear_solve(A, std::vector<Jet2>{Jet2(2, 1.0), Jet2(2, 0.0)});
  // x0 = y / (xy - 1)
  const double X = 2, Y = 3, D = X * Y - 1;
  CHECK(sol[0].value() == doctest::Approx(Y / D));
  CHECK(sol[0].grad(0) == doctest::Approx(-Y * Y / (D * D)));
  CHECK(sol[0].grad(1) == doctest::Approx(-1.0 / (D * D)));
  CHECK(sol[0].hess(0, 0) == doctest::Approx(2 * Y * Y * Y / (D * D * D)));
  CHECK(sol[0].hess(0, 1) == doctest::Approx(2 * Y / (D * D * D)));
}

TEST_CASE("singular system raises") {
  JetMatrix A(2, 2, Jet2(1, 1.0));
  CHECK_THROWS_AS(jet_linear_solve(A, std::vector<Jet2>{Jet2(1), Jet2(1)}), SingularMatrixError);
}

TEST_CASE("finite-difference check") {
  const std::vector<double> p1{2.0};
  CHECK(finite_difference_check(parse_field("x^3"), {"x"}, p1, 1e-5) < 1e-6);
  const std::vector<double> p0{0.1, 0.2};
  CHECK(finite_difference_check(parse_field("5"), {"x", "y"}, p0, 1e-5) == 0.0);
  CHECK(finite_difference_check(parse_field("5"), {"x", "y"}, p0, 0.3) == 0.0);
  const std::vector<double> p2{0.3, -0.7};
  CHECK(finite_difference_check(parse_field("exp(x)*cos(y)"), {"x", "y"}, p2, 1e-5) < 1e-6);
}

TEST_CASE("jets against an independent central difference") {
  const FieldExpr e = parse_field("tanh(x*y) + sqrt(2 + z^2)*log(3 + x)");
  const std::vector<std::string> coords{"x", "y", "z"};
  const BoundExpr b(e, coords);
  const std::vector<double> p{0.2, -0.4, 0.9};
  const Jet2 j = b.evaluate_jet2(p);
  const double h = 1e-4;
  auto f = [&](std::vector<double> q) { return b.evaluate(q); };
  for (int a = 0; a < 3; ++a) {
    auto pp = p, pm = p;
    pp[a] += h;
    pm[a] -= h;
    CHECK(j.grad(a) == doctest::Approx((f(pp) - f(pm)) / (2 * h)).epsilon(1e-7));
    for (int c = 0; c < 3; ++c) {
      auto q = [&](double sa, double sc) {
        auto r = p;
        r[a] += sa;
        r[c] += sc;
        return f(r);
      };
      const double fd = (q(h, h) - q(h, -h) - q(-h, h) + q(-h, -h)) / (4 * h * h);
      CHECK(j.hess(a, c) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

}  // TEST_SUITE
