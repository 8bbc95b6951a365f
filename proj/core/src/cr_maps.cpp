#include "ctc/cr_maps.hpp"

#include <cmath>
#include <complex>
#include <map>

namespace ctc {

namespace {

const std::vector<std::string> kDomain = {"s", "t"};

}  // namespace

MapChart MapChart::from_strings(std::string name, const std::vector<std::string>& components) {
  MapChart m;
  m.name = std::move(name);
  for (const auto& c : components) {
    m.w.push_back(parse_field(c));
    for (const auto& v : free_variables(m.w.back()))
      if (v != "s" && v != "t") throw BindError(v, {"s", "t"});
  }
  return m;
}

std::vector<std::string> builtin_map_keys() { return {"reeb-cylinder", "rescaled-cylinder", "non-cr", "cr-plane", "constant"}; }

MapChart builtin_map(const std::string& key, const ContactTriad& triad) {
  const int d = triad.dim(), n = triad.n();
  std::vector<std::string> w(d, "0");
  if (key == "reeb-cylinder") {
    w[d - 1] = "t";
  } else if (key == "rescaled-cylinder") {
    w[d - 1] = "2*t";
  } else if (key == "non-cr") {
    w[0] = "s";
    w[n] = "-t";
  } else if (key == "cr-plane") {
    w[0] = "s";
    w[n] = "t";
  } else if (key != "constant") {
    throw InputError("unknown map '" + key + "'");
  }
  return MapChart::from_strings(key, w);
}

CRMapEvaluator::CRMapEvaluator(const ContactTriad& triad, const MapChart& map) : triad_(triad) {
  const int d = triad.dim();
  if (int(map.w.size()) != d)
    throw InputError("map '" + map.name + "': expected " + std::to_string(d) + " components");
  std::map<std::string, FieldExpr> at_w;
  for (int a = 0; a < d; ++a) {
    for (const auto& v : free_variables(map.w[a]))
      if (v != "s" && v != "t") throw BindError(v, kDomain);
    at_w[triad.coords()[a]] = map.w[a];
    w_.emplace_back(map.w[a], kDomain);
  }
  FieldExpr ls, lt;
  for (int a = 0; a < d; ++a) {
    const FieldExpr la = substitute(triad.lambda()[a], at_w);
    ls = ls + la * differentiate(map.w[a], "s");
    lt = lt + la * differentiate(map.w[a], "t");
  }
  lam_s_ = BoundExpr(ls, kDomain);
  lam_t_ = BoundExpr(lt, kDomain);
}

void CRMapEvaluator::evaluate_map(double s, double t, Vec& w, Mat& dw) const {
  const int d = triad_.dim();
  const double st[2] = {s, t};
  w = Vec(d);
  dw = Mat(d, 2);
  for (int a = 0; a < d; ++a) {
    const Jet1 j = w_[a].evaluate_jet1(st);
    w(a) = j.value();
    dw(a, 0) = j.grad(0);
    dw(a, 1) = j.grad(1);
  }
}

DwDecomposition CRMapEvaluator::decompose_dw_at(double s, double t) const {
  DwDecomposition out;
  evaluate_map(s, t, out.w, out.dw);
  const PointEval pe = evaluate_point(triad_, out.w);
  out.dpi_w = pe.Pi * out.dw;
  out.w_lambda = out.dw.transpose() * pe.lam;
  return out;
}

InstantonResiduals CRMapEvaluator::instanton_residuals_at(double s, double t) const {
  const double st[2] = {s, t};
  Vec w;
  Mat dw;
  evaluate_map(s, t, w, dw);
  const PointEval pe = evaluate_point(triad_, w);
  const Vec ps = pe.Pi * dw.col(0), pt = pe.Pi * dw.col(1);
  const Vec dbar = 0.5 * (ps + pe.J * pt);

  const Jet1 as = lam_s_.evaluate_jet1(st), at = lam_t_.evaluate_jet1(st);
  InstantonResiduals r;
  r.dbar_pi = std::sqrt(std::max(0.0, dbar.dot(pe.g * dbar)));
  // w*λ∘j has coefficients (a_t, −a_s)
  r.d_lambda_j = -as.grad(0) - at.grad(1);
  r.d_lambda = at.grad(0) - as.grad(1);
  r.dchi = std::abs(std::complex<double>(r.d_lambda_j, r.d_lambda));
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> chi_s = at.value() + I * as.value();
  const std::complex<double> chi_t = -as.value() + I * at.value();
  r.chi_j = std::max(std::abs(chi_t - I * chi_s), std::abs(-chi_s - I * chi_t));
  return r;
}

DwDecomposition decompose_dw_at(const ContactTriad& triad, const MapChart& map, double s, double t) {
  return CRMapEvaluator(triad, map).decompose_dw_at(s, t);
}

InstantonResiduals instanton_residuals_at(const ContactTriad& triad, const MapChart& map, double s, double t) {
  return CRMapEvaluator(triad, map).instanton_residuals_at(s, t);
}

std::vector<std::pair<double, double>> SampleGrid::points() const {
  if (ns < 1 || nt < 1) throw InputError("sample grid needs at least one point per axis");
  std::vector<std::pair<double, double>> out;
  auto at = [](double lo, double hi, int n, int k) { return n == 1 ? lo : lo + (hi - lo) * k / double(n - 1); };
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) out.emplace_back(at(s_lo, s_hi, ns, i), at(t_lo, t_hi, nt, j));
  return out;
}

VerificationReport cr_report(const ContactTriad& triad, const MapChart& map, const SampleGrid& grid,
                             std::optional<double> assert_tol) {
  const CRMapEvaluator ev(triad, map);
  const Bound b = assert_tol ? Bound::max : Bound::info;
  const double tol = assert_tol.value_or(0.0);
  VerificationReport rep;
  const auto pts = grid.points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    EntryContext ctx;
    ctx.triad = triad.name();
    ctx.connection = "map:" + map.name;
    ctx.point_index = int(k);
    ctx.point = {pts[k].first, pts[k].second};
    try {
      const InstantonResiduals r = ev.instanton_residuals_at(pts[k].first, pts[k].second);
      rep.record(ctx, "cr.dbar_pi", r.dbar_pi, tol, b);
      rep.record(ctx, "cr.d_lambda_j", std::abs(r.d_lambda_j), tol, b);
      rep.record(ctx, "cr.d_lambda", std::abs(r.d_lambda), tol, b);
      rep.record(ctx, "cr.dchi", r.dchi, tol, b);
      rep.record(ctx, "cr.chi_j", r.chi_j, 1e-12);
    } catch (const std::exception& e) {
      rep.record(ctx, "eval.point", std::nan(""), 0.0, Bound::max, e.what());
    }
  }
  return rep;
}

}  // namespace ctc
