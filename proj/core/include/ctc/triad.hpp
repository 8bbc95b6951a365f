#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ctc/expr.hpp"
#include "ctc/jet.hpp"
#include "ctc/report.hpp"

namespace ctc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class NotContactError : public std::runtime_error {
 public:
  NotContactError(const Vec& point, double condition_estimate);
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class MetricAsymmetryError : public std::runtime_error {
 public:
  explicit MetricAsymmetryError(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

// A field that must stay positive wherever the triad is evaluated.
struct PositivityGuard {
  std::string label;
  FieldExpr expr;
};

// (λ, J) on a single chart of dimension 2n+1. J^a_b = J[a][b] acts on the
// full coordinate basis with J R = 0 built in.
class ContactTriad {
 public:
  ContactTriad(std::string name, int n, std::vector<std::string> coords, std::vector<FieldExpr> lambda,
               std::vector<std::vector<FieldExpr>> J, std::vector<PositivityGuard> guards = {});

  static ContactTriad from_strings(std::string name, int n, std::vector<std::string> coords,
                                   const std::vector<std::string>& lambda,
                                   const std::vector<std::vector<std::string>>& J,
                                   std::vector<PositivityGuard> guards = {});

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<FieldExpr>& lambda() const { return lambda_; }
  const std::vector<std::vector<FieldExpr>>& J() const { return J_; }
  const std::vector<PositivityGuard>& guards() const { return guards_; }

  const BoundExpr& lambda_bound(int a) const { return lambda_bound_[a]; }
  const BoundExpr& J_bound(int a, int b) const { return J_bound_[std::size_t(a) * dim() + b]; }
  const BoundExpr& guard_bound(int i) const { return guard_bound_[i]; }

  // κλ with the same J on coordinates; the induced structure of the rescaled form.
  ContactTriad rescaled(double kappa) const;
  ContactTriad with_J_negated() const;

 private:
  std::string name_;
  int n_;
  std::vector<std::string> coords_;
  std::vector<FieldExpr> lambda_;
  std::vector<std::vector<FieldExpr>> J_;
  std::vector<PositivityGuard> guards_;
  std::vector<BoundExpr> lambda_bound_, J_bound_, guard_bound_;
};

// Everything the geometry needs at one point: values and first partials.
// Index conventions: dlam(a,b) = ∂_a λ_b; dR(a,b) = ∂_b R^a; for matrices
// M the vector dM holds dM[c] = ∂_c M.
struct PointEval {
  int d = 0, n = 0;
  Vec x;

  Vec lam;
  Mat dlam;
  Mat J;
  std::vector<Mat> dJ;
  Mat dl;  // (dλ)_ab = ∂_a λ_b − ∂_b λ_a
  std::vector<Mat> d_dl;
  Mat S;   // dλ + λ⊗λ
  Mat g;   // symmetrized triad metric
  std::vector<Mat> dg;
  double metric_asymmetry = 0.0;
  Vec R;
  Mat dR;
  Mat Pi;
  std::vector<Mat> dPi;

  std::vector<Jet1> lam1, R1;
  Jet1Matrix J1, g1, Pi1;
};

// Throws NotContactError when S is singular at x.
PointEval evaluate_point(const ContactTriad& triad, const Vec& x);

Mat d_lambda_at(const ContactTriad& triad, const Vec& x);
Vec reeb_at(const ContactTriad& triad, const Vec& x);
Mat projector_at(const ContactTriad& triad, const Vec& x);
// Throws MetricAsymmetryError when |g − gᵀ| exceeds tol before symmetrizing.
Mat metric_at(const ContactTriad& triad, const Vec& x, double tol = 1e-10);

// Compatibility and contact-condition residuals at each point.
VerificationReport compatibility_check(const ContactTriad& triad, const std::vector<Vec>& points, double tol);

// Names of the checks compatibility_check records.
const std::vector<std::string>& compatibility_check_ids();

}  // namespace ctc
