#include "ctc/triad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <sstream>

namespace ctc {

static std::string format_point(const Vec& p) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p(i);
  os << ')';
  return os.str();
}

NotContactError::NotContactError(const Vec& point, double condition_estimate)
    : std::runtime_error("not contact at point " + format_point(point)), condition_estimate_(condition_estimate) {}

MetricAsymmetryError::MetricAsymmetryError(double residual)
    : std::runtime_error("metric asymmetric beyond tolerance (residual " + std::to_string(residual) +
                         "); J is not dλ-compatible"),
      residual_(residual) {}

ContactTriad::ContactTriad(std::string name, int n, std::vector<std::string> coords, std::vector<FieldExpr> lambda,
                           std::vector<std::vector<FieldExpr>> J, std::vector<PositivityGuard> guards)
    : name_(std::move(name)),
      n_(n),
      coords_(std::move(coords)),
      lambda_(std::move(lambda)),
      J_(std::move(J)),
      guards_(std::move(guards)) {
  const int d = 2 * n_ + 1;
  if (n_ < 1) throw InputError("triad: n must be at least 1");
  if (d > kMaxDim) throw InputError("triad: chart dimension " + std::to_string(d) + " exceeds the supported maximum " +
                                    std::to_string(kMaxDim));
  if (int(coords_.size()) != d)
    throw InputError("triad: expected " + std::to_string(d) + " coordinate names, got " + std::to_string(coords_.size()));
  for (std::size_t i = 0; i < coords_.size(); ++i)
    for (std::size_t j = i + 1; j < coords_.size(); ++j)
      if (coords_[i] == coords_[j]) throw InputError("triad: duplicate coordinate name '" + coords_[i] + "'");
  if (int(lambda_.size()) != d) throw InputError("triad: lambda must have " + std::to_string(d) + " components");
  if (int(J_.size()) != d) throw InputError("triad: J must have " + std::to_string(d) + " rows");
  for (const auto& row : J_)
    if (int(row.size()) != d) throw InputError("triad: every row of J must have " + std::to_string(d) + " entries");
  for (const auto& e : lambda_) lambda_bound_.emplace_back(e, coords_);
  for (const auto& row : J_)
    for (const auto& e : row) J_bound_.emplace_back(e, coords_);
  for (const auto& gd : guards_) guard_bound_.emplace_back(gd.expr, coords_);
}

ContactTriad ContactTriad::from_strings(std::string name, int n, std::vector<std::string> coords,
                                        const std::vector<std::string>& lambda,
                                        const std::vector<std::vector<std::string>>& J,
                                        std::vector<PositivityGuard> guards) {
  std::vector<FieldExpr> l;
  for (const auto& s : lambda) l.push_back(parse_field(s));
  std::vector<std::vector<FieldExpr>> j;
  for (const auto& row : J) {
    j.emplace_back();
    for (const auto& s : row) j.back().push_back(parse_field(s));
  }
  return ContactTriad(std::move(name), n, std::move(coords), std::move(l), std::move(j), std::move(guards));
}

ContactTriad ContactTriad::rescaled(double kappa) const {
  std::vector<FieldExpr> l;
  for (const auto& e : lambda_) l.push_back(number(kappa) * e);
  return ContactTriad(name_ + "*" + std::to_string(kappa), n_, coords_, l, J_, guards_);
}

ContactTriad ContactTriad::with_J_negated() const {
  auto j = J_;
  for (auto& row : j)
    for (auto& e : row) e = -e;
  return ContactTriad(name_ + "[-J]", n_, coords_, lambda_, j, guards_);
}

namespace {

Mat values(const Jet1Matrix& M) {
  Mat out(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) out(i, j) = M(i, j).value();
  return out;
}

std::vector<Mat> partials(const Jet1Matrix& M, int d) {
  std::vector<Mat> out(d, Mat(M.rows(), M.cols()));
  for (int c = 0; c < d; ++c)
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) out[c](i, j) = M(i, j).grad(c);
  return out;
}

}  // namespace

PointEval evaluate_point(const ContactTriad& triad, const Vec& x) {
  const int d = triad.dim();
  if (x.size() != d) throw InputError("point has " + std::to_string(x.size()) + " coordinates, chart needs " + std::to_string(d));
  PointEval pe;
  pe.d = d;
  pe.n = triad.n();
  pe.x = x;
  const std::vector<double> xs(x.data(), x.data() + d);

  std::vector<Jet2> lam2;
  lam2.reserve(d);
  for (int a = 0; a < d; ++a) lam2.push_back(triad.lambda_bound(a).evaluate_jet2(xs));
  pe.J1 = Jet1Matrix(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) pe.J1(a, b) = triad.J_bound(a, b).evaluate_jet1(xs);

  pe.lam1.clear();
  for (int a = 0; a < d; ++a) pe.lam1.push_back(lam2[a].truncate());

  Jet1Matrix dl1(d, d), S1(d, d), graw(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      dl1(a, b) = partial(lam2[b], a) - partial(lam2[a], b);
      S1(a, b) = dl1(a, b) + pe.lam1[a] * pe.lam1[b];
    }
  try {
    pe.R1 = jet_linear_solve(S1.transpose(), pe.lam1);
  } catch (const SingularMatrixError& e) {
    throw NotContactError(x, e.condition_estimate());
  }
  graw = dl1 * pe.J1;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) graw(a, b) += pe.lam1[a] * pe.lam1[b];
  pe.g1 = Jet1Matrix(d, d);
  pe.Pi1 = Jet1Matrix(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      pe.metric_asymmetry = std::max(pe.metric_asymmetry, std::abs(graw(a, b).value() - graw(b, a).value()));
      pe.g1(a, b) = 0.5 * (graw(a, b) + graw(b, a));
      pe.Pi1(a, b) = Jet1(d, a == b ? 1.0 : 0.0) - pe.R1[a] * pe.lam1[b];
    }

  pe.lam = Vec(d);
  pe.dlam = Mat(d, d);
  pe.R = Vec(d);
  pe.dR = Mat(d, d);
  for (int a = 0; a < d; ++a) {
    pe.lam(a) = lam2[a].value();
    pe.R(a) = pe.R1[a].value();
    for (int b = 0; b < d; ++b) {
      pe.dlam(a, b) = lam2[b].grad(a);
      pe.dR(a, b) = pe.R1[a].grad(b);
    }
  }
  pe.J = values(pe.J1);
  pe.dJ = partials(pe.J1, d);
  pe.dl = values(dl1);
  pe.d_dl = partials(dl1, d);
  pe.S = values(S1);
  pe.g = values(pe.g1);
  pe.dg = partials(pe.g1, d);
  pe.Pi = values(pe.Pi1);
  pe.dPi = partials(pe.Pi1, d);
  return pe;
}

Mat d_lambda_at(const ContactTriad& triad, const Vec& x) {
  const int d = triad.dim();
  const std::vector<double> xs(x.data(), x.data() + x.size());
  Mat dl(d, d);
  std::vector<Jet2> lam;
  for (int a = 0; a < d; ++a) lam.push_back(triad.lambda_bound(a).evaluate_jet2(xs));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) dl(a, b) = lam[b].grad(a) - lam[a].grad(b);
  return dl;
}

Vec reeb_at(const ContactTriad& triad, const Vec& x) { return evaluate_point(triad, x).R; }

Mat projector_at(const ContactTriad& triad, const Vec& x) { return evaluate_point(triad, x).Pi; }

Mat metric_at(const ContactTriad& triad, const Vec& x, double tol) {
  const PointEval pe = evaluate_point(triad, x);
  if (pe.metric_asymmetry > tol) throw MetricAsymmetryError(pe.metric_asymmetry);
  return pe.g;
}

const std::vector<std::string>& compatibility_check_ids() {
  static const std::vector<std::string> ids = {
      "compat.contact",         "compat.J_squared",      "compat.J_reeb",        "compat.lambda_J",
      "compat.dlambda_J_invariant", "compat.metric_symmetry", "compat.positivity", "compat.reeb_lambda",
      "compat.reeb_dlambda",    "compat.metric_reeb",    "compat.J_orthogonal",  "compat.guard_positive"};
  return ids;
}

VerificationReport compatibility_check(const ContactTriad& triad, const std::vector<Vec>& points, double tol) {
  VerificationReport rep;
  const int d = triad.dim(), n2 = 2 * triad.n();
  for (std::size_t i = 0; i < points.size(); ++i) {
    EntryContext ctx{triad.name(), "", 0.0, int(i), std::vector<double>(points[i].data(), points[i].data() + d)};
    const std::vector<double> xs = ctx.point;
    for (int k = 0; k < int(triad.guards().size()); ++k)
      rep.record(ctx, "compat.guard_positive", triad.guard_bound(k).evaluate(xs), 0.0, Bound::min,
                 triad.guards()[k].label);
    Mat S(d, d);
    {
      Vec lam(d);
      for (int a = 0; a < d; ++a) lam(a) = triad.lambda_bound(a).evaluate(xs);
      S = d_lambda_at(triad, points[i]) + lam * lam.transpose();
    }
    const double det = std::abs(S.determinant());
    rep.record(ctx, "compat.contact", det, tol, Bound::min);
    PointEval pe;
    try {
      pe = evaluate_point(triad, points[i]);
    } catch (const NotContactError& e) {
      for (const auto& id : compatibility_check_ids())
        if (id != "compat.contact" && id != "compat.guard_positive") rep.skip(ctx, id, e.what());
      continue;
    }
    const Mat& J = pe.J;
    const Mat& Pi = pe.Pi;
    rep.record(ctx, "compat.J_squared", (J * J + Pi).cwiseAbs().maxCoeff(), tol);
    rep.record(ctx, "compat.J_reeb", (J * pe.R).cwiseAbs().maxCoeff(), tol);
    rep.record(ctx, "compat.lambda_J", (pe.lam.transpose() * J).cwiseAbs().maxCoeff(), tol);
    rep.record(ctx, "compat.dlambda_J_invariant",
               (Pi.transpose() * (J.transpose() * pe.dl * J - pe.dl) * Pi).cwiseAbs().maxCoeff(), tol);
    rep.record(ctx, "compat.metric_symmetry", pe.metric_asymmetry, tol);
    {
      Eigen::JacobiSVD<Mat> svd(Pi, Eigen::ComputeFullU);
      const Mat Q = svd.matrixU().leftCols(n2);
      const Mat gxi = 0.5 * (pe.dl * J + (pe.dl * J).transpose());
      const Mat restricted = Q.transpose() * gxi * Q;
      const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(restricted).eigenvalues().minCoeff();
      rep.record(ctx, "compat.positivity", lmin, tol, Bound::min,
                 lmin > tol ? "" : "positive definiteness violated on the contact distribution");
    }
    rep.record(ctx, "compat.reeb_lambda", std::abs(pe.lam.dot(pe.R) - 1.0), tol);
    rep.record(ctx, "compat.reeb_dlambda", (pe.R.transpose() * pe.dl).cwiseAbs().maxCoeff(), tol);
    rep.record(ctx, "compat.metric_reeb", (pe.g * pe.R - pe.lam).cwiseAbs().maxCoeff(), tol);
    rep.record(ctx, "compat.J_orthogonal",
               (Pi.transpose() * (J.transpose() * pe.g * J - pe.g) * Pi).cwiseAbs().maxCoeff(), tol);
  }
  return rep;
}

}  // namespace ctc
