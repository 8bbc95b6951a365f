#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ctc/connection.hpp"
#include "ctc/gallery.hpp"
#include "ctc/triad.hpp"
#include "ctc/verify.hpp"

using namespace ctc;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

ContactTriad hand_standard() {
  return ContactTriad::from_strings("hand-r3", 1, {"x", "y", "z"}, {"-y", "0", "1"},
                                    {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "-y", "0"}});
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("triad") {

TEST_CASE("gallery standard r3 is the hand triad") {
  const ContactTriad a = gallery_standard(1), b = hand_standard();
  for (const auto& p : random_points(3, 10, 4)) CHECK(max_abs(metric_at(a, p) - metric_at(b, p)) < 1e-15);
  CHECK(gallery("standard-r3").dim() == 3);
  CHECK(gallery("standard-r5").dim() == 5);
}

TEST_CASE("d lambda") {
  const Mat dl = d_lambda_at(gallery_standard(1), v3(0.4, -1, 2));
  Mat expect = Mat::Zero(3, 3);
  expect(0, 1) = 1;
  expect(1, 0) = -1;
  CHECK(max_abs(dl - expect) == 0.0);

  const ContactTriad r5 = gallery_standard(2);
  Vec p = Vec::Zero(5);
  p << 0.1, 0.2, 0.3, 0.4, 0.5;
  const Mat dl5 = d_lambda_at(r5, p);
  // coordinates (x1, x2, y1, y2, z)
  Mat e5 = Mat::Zero(5, 5);
  e5(0, 2) = e5(1, 3) = 1;
  e5(2, 0) = e5(3, 1) = -1;
  CHECK(max_abs(dl5 - e5) == 0.0);
}

TEST_CASE("degenerate form is not contact") {
  const ContactTriad t = ContactTriad::from_strings("flat", 1, {"x", "y", "z"}, {"0", "0", "1"},
                                                    {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "0", "0"}});
  CHECK(max_abs(d_lambda_at(t, v3(1, 2, 3))) == 0.0);
  CHECK_THROWS_AS(reeb_at(t, v3(1, 2, 3)), NotContactError);
  const auto rep = compatibility_check(t, {v3(0, 0, 0)}, 1e-12);
  CHECK_FALSE(rep.check_passed("compat.contact"));
}

TEST_CASE("Reeb fields") {
  const Vec R = reeb_at(gallery_standard(1), v3(1, 2, 3));
  CHECK((R - v3(0, 0, 1)).norm() < 1e-15);
  Vec p = Vec::Constant(5, 0.7);
  Vec e = Vec::Zero(5);
  e(4) = 1;
  CHECK((reeb_at(gallery_standard(2), p) - e).norm() < 1e-15);
  const Vec Rs = reeb_at(gallery_standard(1).rescaled(2.0), v3(-0.3, 0.5, 1));
  CHECK((Rs - v3(0, 0, 0.5)).norm() < 1e-15);
}

TEST_CASE("projector") {
  const ContactTriad t = gallery_standard(1);
  Mat expect(3, 3);
  expect << 1, 0, 0, 0, 1, 0, 2, 0, 0;
  CHECK(max_abs(projector_at(t, v3(1, 2, 3)) - expect) < 1e-15);
  for (const auto& key : {"standard-r3", "standard-r5", "perturbed-r3", "perturbed-r5"}) {
    const ContactTriad g = gallery(key);
    for (const auto& p : random_points(g.dim(), 10, 9)) {
      const Mat Pi = projector_at(g, p);
      CHECK((Pi * reeb_at(g, p)).norm() < 1e-12);
      CHECK(max_abs(Pi * Pi - Pi) < 1e-12);
    }
  }
}

TEST_CASE("metric by hand") {
  const ContactTriad t = gallery_standard(1);
  Mat expect(3, 3);
  expect << 5, 0, -2, 0, 1, 0, -2, 0, 1;
  CHECK(max_abs(metric_at(t, v3(1, 2, 3)) - expect) < 1e-15);
  CHECK(max_abs(metric_at(t, v3(0, 0, 0)) - Mat::Identity(3, 3)) < 1e-15);
  for (const auto& key : {"standard-r5", "perturbed-r3", "perturbed-r5"}) {
    const ContactTriad g = gallery(key);
    for (const auto& p : random_points(g.dim(), 10, 1)) {
      const PointEval pe = evaluate_point(g, p);
      CHECK((pe.g * pe.R - pe.lam).norm() < 1e-12);
    }
  }
}

TEST_CASE("point cache agrees with the direct queries") {
  const ContactTriad g = gallery("perturbed-r5");
  for (const auto& p : random_points(5, 5, 31)) {
    const PointEval pe = evaluate_point(g, p);
    CHECK(max_abs(pe.g - metric_at(g, p)) < 1e-15);
    CHECK((pe.R - reeb_at(g, p)).norm() < 1e-15);
    CHECK(max_abs(pe.Pi - projector_at(g, p)) < 1e-15);
    CHECK(max_abs(pe.dl - d_lambda_at(g, p)) < 1e-15);
  }
}

TEST_CASE("derivative caches against central differences") {
  const ContactTriad g = gallery("perturbed-r3");
  const Vec x = v3(0.3, -0.2, 0.6);
  const PointEval pe = evaluate_point(g, x);
  const double h = 1e-5;
  for (int c = 0; c < 3; ++c) {
    Vec xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    const Mat dg = (metric_at(g, xp) - metric_at(g, xm)) / (2 * h);
    CHECK(max_abs(pe.dg[c] - dg) < 1e-8);
    const Vec dR = (reeb_at(g, xp) - reeb_at(g, xm)) / (2 * h);
    CHECK((pe.dR.col(c) - dR).norm() < 1e-8);
    const Mat dPi = (projector_at(g, xp) - projector_at(g, xm)) / (2 * h);
    CHECK(max_abs(pe.dPi[c] - dPi) < 1e-8);
  }
}

TEST_CASE("compatibility") {
  const auto pts = random_points(3, 100, 0);
  const auto rep = compatibility_check(gallery_standard(1), pts, 1e-12);
  CHECK(rep.passed());
  CHECK(compatibility_check(gallery_perturbed_r3(), pts, 1e-10).passed());
  CHECK(compatibility_check(gallery("perturbed-r5"), random_points(5, 50, 0), 1e-10).passed());

  const auto bad = compatibility_check(gallery_standard(1).with_J_negated(), pts, 1e-12);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.check_passed("compat.positivity"));
  bool named = false;
  for (const auto& e : bad.entries())
    if (e.check == "compat.positivity" && e.note.find("positive definiteness") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("identity parameters give the standard J") {
  const ContactTriad p = gallery_perturbed_r3("0", "1"), s = gallery_standard(1);
  for (const auto& x : random_points(3, 10, 2)) {
    const PointEval a = evaluate_point(p, x), b = evaluate_point(s, x);
    CHECK(max_abs(a.J - b.J) < 1e-15);
  }
}

TEST_CASE("non-positive v is rejected by its guard") {
  const auto rep = compatibility_check(gallery_perturbed_r3("0", "x"), {v3(-1, 0, 0)}, 1e-10);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("Lie derivative of J") {
  for (const auto& p : random_points(3, 10, 6))
    CHECK(max_abs(lie_derivative_J_at(evaluate_point(gallery_standard(1), p))) < 1e-14);

  // R = ∂z on the perturbed family, so the flow is a z-translation and
  // L_R J is the z-derivative of J along it
  const ContactTriad t = gallery_perturbed_r3("0.3*sin(z)", "1");
  const Vec x0 = v3(0, 0, 0);
  const double h = 1e-5;
  const Mat Jp = evaluate_point(t, x0 + v3(0, 0, h)).J, Jm = evaluate_point(t, x0 - v3(0, 0, h)).J;
  const Mat flow = (Jp - Jm) / (2 * h);
  const Mat L = lie_derivative_J_at(evaluate_point(t, x0));
  CHECK(max_abs(L - flow) < 1e-8);
  CHECK(L.norm() > 0.05);

  // ∂_z u = 0.3 cos z vanishes at z = π/2, and L_R J with it
  const ContactTriad d = gallery_perturbed_r3();
  CHECK(lie_derivative_J_at(evaluate_point(d, v3(0, 0, std::numbers::pi / 2))).norm() < 1e-12);
  CHECK(lie_derivative_J_at(evaluate_point(d, v3(0, 0, 0))).norm() > 0.05);
}

TEST_CASE("Blair symmetry of L_R J") {
  for (const auto& key : {"perturbed-r3", "perturbed-r5"}) {
    const ContactTriad g = gallery(key);
    const auto pts = random_points(g.dim(), 20, 8);
    for (int i = 0; i < int(pts.size()); ++i) {
      const PointEval pe = evaluate_point(g, pts[i]);
      const Mat L = lie_derivative_J_at(pe);
      SampleStream s(1, i, "test.blair");
      const Vec Y = s.xi_vector(pe.Pi), Z = s.xi_vector(pe.Pi);
      CHECK(std::abs(Y.dot(pe.g * L * Z) - (L * Y).dot(pe.g * Z)) < 1e-12);
      CHECK(std::abs(Y.dot(pe.g * L * pe.J * Z) - (L * pe.J * Y).dot(pe.g * Z)) < 1e-12);
    }
  }
}

}  // TEST_SUITE
