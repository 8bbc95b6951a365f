#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctc/report.hpp"
#include "ctc/triad.hpp"

namespace ctc {

// w: (s, t) ↦ chart point, with j∂_s = ∂_t, j∂_t = −∂_s on the domain.
struct MapChart {
  std::string name;
  std::vector<FieldExpr> w;

  static MapChart from_strings(std::string name, const std::vector<std::string>& components);
};

// Keys: reeb-cylinder, rescaled-cylinder, non-cr, cr-plane, constant.
MapChart builtin_map(const std::string& key, const ContactTriad& triad);
std::vector<std::string> builtin_map_keys();

struct DwDecomposition {
  Vec w;
  Mat dw;     // columns ∂_s w, ∂_t w
  Mat dpi_w;  // Π dw
  Vec w_lambda;  // (w*λ)(∂_s), (w*λ)(∂_t)
};

struct InstantonResiduals {
  double dbar_pi = 0.0;  // g-norm of ∂̄^π w(∂_s)
  double d_lambda_j = 0.0;  // d(w*λ∘j) coefficient of ds∧dt
  double d_lambda = 0.0;    // d(w*λ) coefficient of ds∧dt
  double dchi = 0.0;        // |d(w*λ∘j) + i d(w*λ)|
  double chi_j = 0.0;       // |χ∘j − iχ|
};

// Binds the map and the pulled-back λ coefficients once.
class CRMapEvaluator {
 public:
  CRMapEvaluator(const ContactTriad& triad, const MapChart& map);

  DwDecomposition decompose_dw_at(double s, double t) const;
  InstantonResiduals instanton_residuals_at(double s, double t) const;

 private:
  void evaluate_map(double s, double t, Vec& w, Mat& dw) const;

  const ContactTriad& triad_;
  std::vector<BoundExpr> w_;
  BoundExpr lam_s_, lam_t_;  // (w*λ)_s, (w*λ)_t as functions of (s, t)
};

DwDecomposition decompose_dw_at(const ContactTriad& triad, const MapChart& map, double s, double t);
InstantonResiduals instanton_residuals_at(const ContactTriad& triad, const MapChart& map, double s, double t);

struct SampleGrid {
  double s_lo = -1.0, s_hi = 1.0;
  double t_lo = -1.0, t_hi = 1.0;
  int ns = 20, nt = 20;
  std::vector<std::pair<double, double>> points() const;
};

// Residuals over the grid. Without assert_tol the ∂̄^π and d-residuals are
// informational; χ∘j = iχ is always judged at 1e−12.
VerificationReport cr_report(const ContactTriad& triad, const MapChart& map, const SampleGrid& grid,
                             std::optional<double> assert_tol = std::nullopt);

}  // namespace ctc
