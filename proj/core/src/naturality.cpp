#include "ctc/naturality.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ctc {

namespace {

std::map<std::string, FieldExpr> coordinate_map(const std::vector<std::string>& coords,
                                                const std::vector<FieldExpr>& values) {
  std::map<std::string, FieldExpr> m;
  for (std::size_t a = 0; a < coords.size(); ++a) m[coords[a]] = values[a];
  return m;
}

void require_dim(const Diffeo& phi, const ContactTriad& triad) {
  const std::size_t d = std::size_t(triad.dim());
  if (phi.forward.size() != d || phi.inverse.size() != d)
    throw InputError("diffeo '" + phi.name + "': expected " + std::to_string(d) + " components each way");
  for (const auto* side : {&phi.forward, &phi.inverse})
    for (const auto& e : *side)
      for (const auto& v : free_variables(e))
        if (std::find(triad.coords().begin(), triad.coords().end(), v) == triad.coords().end())
          throw BindError(v, triad.coords());
}

Vec evaluate_all(const std::vector<BoundExpr>& f, const Vec& x) {
  Vec out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) out(a) = f[a].evaluate({x.data(), std::size_t(x.size())});
  return out;
}

Mat jacobian(const std::vector<BoundExpr>& f, const Vec& x) {
  const int d = int(f.size());
  Mat D(d, d);
  for (int a = 0; a < d; ++a) {
    const Jet1 j = f[a].evaluate_jet1({x.data(), std::size_t(x.size())});
    for (int b = 0; b < d; ++b) D(a, b) = j.grad(b);
  }
  return D;
}

std::vector<BoundExpr> bind_all(const std::vector<FieldExpr>& f, const std::vector<std::string>& coords) {
  std::vector<BoundExpr> out;
  for (const auto& e : f) out.emplace_back(e, coords);
  return out;
}

double condition(const Mat& D) {
  Eigen::JacobiSVD<Mat> svd(D);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : INFINITY;
}

}  // namespace

SingularJacobianError::SingularJacobianError(const Vec& point, double condition_estimate)
    : InputError([&] {
        std::string s = "diffeo Jacobian not invertible at (";
        for (int a = 0; a < point.size(); ++a) s += (a ? ", " : "") + std::to_string(point(a));
        return s + "), condition estimate " + std::to_string(condition_estimate);
      }()) {}

Diffeo Diffeo::from_strings(std::string name, const std::vector<std::string>& forward,
                            const std::vector<std::string>& inverse) {
  Diffeo d;
  d.name = std::move(name);
  for (const auto& s : forward) d.forward.push_back(parse_field(s));
  for (const auto& s : inverse) d.inverse.push_back(parse_field(s));
  return d;
}

Diffeo identity_diffeo(const ContactTriad& triad) {
  Diffeo d;
  d.name = "identity";
  for (const auto& c : triad.coords()) d.forward.push_back(variable(c));
  d.inverse = d.forward;
  return d;
}

Diffeo reeb_translation(const ContactTriad& triad, double shift) {
  Diffeo d = identity_diffeo(triad);
  d.name = "translation";
  const std::string& z = triad.coords().back();
  d.forward.back() = variable(z) + number(shift);
  d.inverse.back() = variable(z) - number(shift);
  return d;
}

Diffeo shear_diffeo(const ContactTriad& triad) {
  Diffeo d = identity_diffeo(triad);
  d.name = "shear";
  const std::string& x = triad.coords().front();
  const std::string& z = triad.coords().back();
  d.forward.back() = variable(z) + variable(x);
  d.inverse.back() = variable(z) - variable(x);
  return d;
}

ContactTriad pullback_triad(const ContactTriad& triad, const Diffeo& phi) {
  require_dim(phi, triad);
  const int d = triad.dim();
  const auto& coords = triad.coords();
  const auto at_phi = coordinate_map(coords, phi.forward);

  std::vector<std::vector<FieldExpr>> Dphi(d, std::vector<FieldExpr>(d)), Dpsi_phi(d, std::vector<FieldExpr>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Dphi[a][b] = differentiate(phi.forward[a], coords[b]);
      Dpsi_phi[a][b] = substitute(differentiate(phi.inverse[a], coords[b]), at_phi);
    }
  std::vector<FieldExpr> lam_phi(d);
  std::vector<std::vector<FieldExpr>> J_phi(d, std::vector<FieldExpr>(d));
  for (int a = 0; a < d; ++a) {
    lam_phi[a] = substitute(triad.lambda()[a], at_phi);
    for (int b = 0; b < d; ++b) J_phi[a][b] = substitute(triad.J()[a][b], at_phi);
  }

  std::vector<FieldExpr> lam(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) lam[a] = lam[a] + lam_phi[b] * Dphi[b][a];

  // (J Dφ)^k_b, then Dψ(φ) on the left
  std::vector<std::vector<FieldExpr>> JD(d, std::vector<FieldExpr>(d)), J(d, std::vector<FieldExpr>(d));
  for (int k = 0; k < d; ++k)
    for (int b = 0; b < d; ++b)
      for (int l = 0; l < d; ++l) JD[k][b] = JD[k][b] + J_phi[k][l] * Dphi[l][b];
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k) J[a][b] = J[a][b] + Dpsi_phi[a][k] * JD[k][b];

  std::vector<PositivityGuard> guards;
  for (const auto& gd : triad.guards()) guards.push_back({gd.label, substitute(gd.expr, at_phi)});
  return ContactTriad(triad.name() + "|" + phi.name, triad.n(), coords, lam, J, guards);
}

Christoffel transform_christoffel(const Christoffel& G, const Diffeo& phi, const std::vector<std::string>& coords,
                                  const Vec& x) {
  const int d = int(coords.size());
  std::vector<Jet2> f;
  for (const auto& e : phi.forward) f.push_back(evaluate_2jet(e, coords, {x.data(), std::size_t(x.size())}));
  Vec y(d);
  Mat Dphi(d, d);
  for (int k = 0; k < d; ++k) {
    y(k) = f[k].value();
    for (int a = 0; a < d; ++a) Dphi(k, a) = f[k].grad(a);
  }
  const Mat Dpsi = jacobian(bind_all(phi.inverse, coords), y);
  if (condition(Dphi) > 1e12) throw SingularJacobianError(x, condition(Dphi));

  Christoffel out(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Vec v(d);
      const Vec ua = Dphi.col(a), ub = Dphi.col(b);
      const Vec Gab = G.apply(ua, ub);
      for (int k = 0; k < d; ++k) v(k) = f[k].hess(a, b) + Gab(k);
      const Vec w = Dpsi * v;
      for (int c = 0; c < d; ++c) out(c, a, b) = w(c);
    }
  return out;
}

VerificationReport naturality_check(const ContactTriad& triad, const Diffeo& phi, const AffineConnection& conn,
                                    const CheckSpec& spec) {
  const ContactTriad pulled = pullback_triad(triad, phi);
  const auto fwd = bind_all(phi.forward, triad.coords());
  const auto inv = bind_all(phi.inverse, triad.coords());
  const std::string tag = conn.tag() + "|" + phi.name;

  return run_per_point(spec, [&](int i, VerificationReport& out) {
    EntryContext ctx;
    ctx.triad = spec.triad_id.empty() ? triad.name() : spec.triad_id;
    ctx.connection = tag;
    ctx.c = conn.c();
    ctx.point_index = i;
    const Vec& x = spec.points[i];
    ctx.point.assign(x.data(), x.data() + x.size());
    try {
      const Vec y = evaluate_all(fwd, x);
      out.record(ctx, "naturality.inverse", (evaluate_all(inv, y) - x).cwiseAbs().maxCoeff(), spec.tol);
      const Christoffel expected = transform_christoffel(conn.at(triad, y), phi, triad.coords(), x);
      const Christoffel got = conn.at(pulled, x);
      out.record(ctx, "naturality.christoffel", got.max_abs_diff(expected), spec.tol);
    } catch (const SingularJacobianError&) {
      throw;
    } catch (const std::exception& e) {
      out.record(ctx, "eval.point", std::nan(""), 0.0, Bound::max, e.what());
    }
  });
}

}  // namespace ctc
