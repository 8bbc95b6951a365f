#include <doctest.h>

#include "ctc/frame.hpp"
#include "ctc/gallery.hpp"
#include "ctc/naturality.hpp"
#include "ctc/verify.hpp"

using namespace ctc;

namespace {

CheckSpec spec_for(int d, int count) {
  CheckSpec s;
  s.points = random_points(d, count, 0);
  return s;
}

// the shear (x, y, z) -> (x, y, z + x) pulled back by hand
ContactTriad hand_sheared() {
  return ContactTriad::from_strings("hand-shear", 1, {"x", "y", "z"}, {"1 - y", "0", "1"},
                                    {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "1 - y", "0"}});
}

}  // namespace

TEST_SUITE("naturality") {

TEST_CASE("identity diffeo") {
  const ContactTriad t = gallery("perturbed-r3");
  const auto r = naturality_check(t, identity_diffeo(t), direct_triad_connection(), spec_for(3, 10));
  CHECK(r.passed());
  CHECK(r.worst("naturality.christoffel") < 1e-15);
}

TEST_CASE("Reeb translation and shear on standard r3") {
  const ContactTriad t = gallery_standard(1);
  for (const auto& conn : {direct_triad_connection(), construct_connection_frame(0.0)}) {
    const auto a = naturality_check(t, reeb_translation(t), conn, spec_for(3, 20));
    CHECK(a.passed());
    CHECK(a.worst("naturality.christoffel") < 1e-9);
    const auto b = naturality_check(t, shear_diffeo(t), conn, spec_for(3, 20));
    CHECK(b.passed());
    CHECK(b.worst("naturality.christoffel") < 1e-8);
  }
}

TEST_CASE("pullback agrees with the hand computation") {
  const ContactTriad t = gallery_standard(1);
  const ContactTriad p = pullback_triad(t, shear_diffeo(t)), h = hand_sheared();
  for (const auto& x : random_points(3, 10, 3)) {
    const PointEval a = evaluate_point(p, x), b = evaluate_point(h, x);
    CHECK((a.lam - b.lam).norm() < 1e-15);
    CHECK((a.J - b.J).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("transformation law coded by hand") {
  const ContactTriad t = gallery_standard(1);
  const ContactTriad h = hand_sheared();
  Mat Dphi = Mat::Identity(3, 3), Dpsi = Mat::Identity(3, 3);
  Dphi(2, 0) = 1;
  Dpsi(2, 0) = -1;
  for (const auto& x : random_points(3, 10, 5)) {
    const Vec y = x + Vec::Unit(3, 2) * x(0);
    const Array3 G = triad_connection_direct_at(evaluate_point(t, y));
    Array3 expect(3);
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          double s = 0;
          for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) s += Dpsi(c, k) * G(k, i, j) * Dphi(i, a) * Dphi(j, b);
          expect(c, a, b) = s;
        }
    const Array3 direct = triad_connection_direct_at(evaluate_point(h, x));
    CHECK(direct.max_abs_diff(expect) < 1e-12);
    CHECK(transform_christoffel(G, shear_diffeo(t), t.coords(), x).max_abs_diff(expect) < 1e-12);
  }
}

TEST_CASE("nonlinear diffeo on the perturbed triad") {
  const ContactTriad t = gallery("perturbed-r3");
  const Diffeo phi = Diffeo::from_strings("cubic", {"x", "y + 0.1*x^3", "z - x*y"}, {"x", "y - 0.1*x^3", "z + x*(y - 0.1*x^3)"});
  const auto r = naturality_check(t, phi, construct_connection_frame(0.0), spec_for(3, 10));
  CHECK(r.passed());
  CHECK(r.worst("naturality.inverse") < 1e-12);
}

TEST_CASE("a wrong inverse is caught") {
  const ContactTriad t = gallery_standard(1);
  const Diffeo bad = Diffeo::from_strings("bad", {"x", "y", "z + x"}, {"x", "y", "z + x"});
  const auto r = naturality_check(t, bad, direct_triad_connection(), spec_for(3, 3));
  CHECK_FALSE(r.check_passed("naturality.inverse"));
}

TEST_CASE("diffeo names must bind") {
  const ContactTriad t = gallery_standard(1);
  CHECK_THROWS_AS(pullback_triad(t, Diffeo::from_strings("w", {"x", "y", "w"}, {"x", "y", "z"})), InputError);
}

}  // TEST_SUITE
