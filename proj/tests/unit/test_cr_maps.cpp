#include <doctest.h>

#include <cmath>

#include "ctc/cr_maps.hpp"
#include "ctc/gallery.hpp"

using namespace ctc;

TEST_SUITE("cr_maps") {

TEST_CASE("trivial Reeb cylinder") {
  const ContactTriad t = gallery_standard(1);
  const MapChart m = builtin_map("reeb-cylinder", t);
  const DwDecomposition d = decompose_dw_at(t, m, 0.3, -0.8);
  CHECK(d.dpi_w.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(d.w_lambda(0) == doctest::Approx(0.0));
  CHECK(d.w_lambda(1) == doctest::Approx(1.0));
  for (const auto& key : {"reeb-cylinder", "rescaled-cylinder"}) {
    const MapChart c = builtin_map(key, t);
    for (const auto& [s, tt] : SampleGrid{}.points()) {
      const InstantonResiduals r = instanton_residuals_at(t, c, s, tt);
      CHECK(r.dbar_pi < 1e-12);
      CHECK(std::abs(r.d_lambda_j) < 1e-12);
      CHECK(r.dchi < 1e-12);
    }
  }
}

TEST_CASE("constant map") {
  const ContactTriad t = gallery_standard(1);
  const DwDecomposition d = decompose_dw_at(t, builtin_map("constant", t), 0.5, 0.5);
  CHECK(d.dpi_w.norm() == 0.0);
  CHECK(d.w_lambda.norm() == 0.0);
}

TEST_CASE("(s, 0, t) splits along e1 and the Reeb direction") {
  const ContactTriad t = gallery_standard(1);
  const MapChart m = MapChart::from_strings("strip", {"s", "0", "t"});
  const DwDecomposition d = decompose_dw_at(t, m, 0.7, 0.2);
  CHECK((d.dpi_w.col(0) - Vec::Unit(3, 0)).norm() < 1e-15);  // e1 = ∂x at y = 0
  CHECK(d.dpi_w.col(1).norm() < 1e-15);
  CHECK(d.w_lambda(0) == doctest::Approx(0.0));
  CHECK(d.w_lambda(1) == doctest::Approx(1.0));
}

TEST_CASE("the non-CR map") {
  // w = (s, -t, 0): ∂̄^π w(∂s) = ½(e1 + J(-e2)) = e1, of unit g-norm; w*λ = t ds
  const ContactTriad t = gallery_standard(1);
  const MapChart m = builtin_map("non-cr", t);
  for (const auto& [s, tt] : SampleGrid{-1, 1, -1, 1, 5, 5}.points()) {
    const InstantonResiduals r = instanton_residuals_at(t, m, s, tt);
    CHECK(r.dbar_pi == doctest::Approx(1.0));
    CHECK(std::abs(r.d_lambda) == doctest::Approx(1.0));
    CHECK(std::abs(r.d_lambda_j) < 1e-12);
    CHECK(r.chi_j < 1e-12);
  }
}

TEST_CASE("(s, t, 0) is CR under these conventions") {
  const ContactTriad t = gallery_standard(1);
  const MapChart m = MapChart::from_strings("plane", {"s", "t", "0"});
  const InstantonResiduals r = instanton_residuals_at(t, m, 0.0, 0.0);
  CHECK(r.dbar_pi < 1e-15);
  CHECK(std::abs(r.d_lambda) == doctest::Approx(1.0));
}

TEST_CASE("chi identity on a generic map") {
  const ContactTriad t = gallery("perturbed-r3");
  const MapChart m = MapChart::from_strings("wavy", {"0.3*sin(s)", "t*s", "exp(0.1*t) - s^2"});
  for (const auto& [s, tt] : SampleGrid{}.points()) CHECK(instanton_residuals_at(t, m, s, tt).chi_j < 1e-12);
}

TEST_CASE("grid and reports") {
  const auto pts = SampleGrid{}.points();
  CHECK(pts.size() == 400);
  CHECK(pts.front().first == -1.0);
  CHECK(pts.back().second == 1.0);
  const ContactTriad t = gallery_standard(1);
  CHECK(cr_report(t, builtin_map("reeb-cylinder", t), SampleGrid{}, 1e-10).passed());
  CHECK(cr_report(t, builtin_map("non-cr", t), SampleGrid{}).passed());
  CHECK_FALSE(cr_report(t, builtin_map("non-cr", t), SampleGrid{}, 1e-10).passed());
}

TEST_CASE("maps bind to s and t only") {
  CHECK_THROWS_AS(MapChart::from_strings("bad", {"s", "x", "t"}), InputError);
  CHECK_THROWS_AS(builtin_map("nope", gallery_standard(1)), InputError);
}

TEST_CASE("higher-dimensional cylinder") {
  const ContactTriad t = gallery_standard(2);
  const MapChart m = builtin_map("reeb-cylinder", t);
  const InstantonResiduals r = instanton_residuals_at(t, m, 0.1, 0.4);
  CHECK(r.dbar_pi < 1e-12);
  CHECK(r.dchi < 1e-12);
}

}  // TEST_SUITE
