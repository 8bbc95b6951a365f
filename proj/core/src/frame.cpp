#include "ctc/frame.hpp"

#include <cmath>

namespace ctc {

namespace {

const Complex I_(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

using JVec = std::vector<Jet1>;

Jet1 inner(const Jet1Matrix& g, const JVec& u, const JVec& v) {
  const int d = int(u.size());
  Jet1 acc(g(0, 0).dim(), 0.0);
  for (int a = 0; a < d; ++a) {
    Jet1 row(g(0, 0).dim(), 0.0);
    for (int b = 0; b < d; ++b) row += g(a, b) * v[b];
    acc += u[a] * row;
  }
  return acc;
}

JVec mat_vec(const Jet1Matrix& M, const JVec& v) { return M * v; }

void axpy(JVec& y, const Jet1& s, const JVec& x) {
  for (std::size_t a = 0; a < y.size(); ++a) y[a] -= s * x[a];
}

std::vector<Mat> split_partials(const Jet1Matrix& M, int d, Mat& values) {
  values = Mat(M.rows(), M.cols());
  std::vector<Mat> out(d, Mat(M.rows(), M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      values(i, j) = M(i, j).value();
      for (int c = 0; c < d; ++c) out[c](i, j) = M(i, j).grad(c);
    }
  return out;
}

// Columns [E | F | R] → [η | η̄ | R]; rows [e; f; λ] → [θ; θ̄; λ].
CMat complexify_columns(const Mat& D, int n) {
  CMat B(D.rows(), D.cols());
  for (int i = 0; i < n; ++i) {
    B.col(i) = kInvSqrt2 * (D.col(i).cast<Complex>() - I_ * D.col(n + i).cast<Complex>());
    B.col(n + i) = B.col(i).conjugate();
  }
  B.col(2 * n) = D.col(2 * n).cast<Complex>();
  return B;
}

CMat complexify_rows(const Mat& C, int n) {
  CMat B(C.rows(), C.cols());
  for (int i = 0; i < n; ++i) {
    B.row(i) = kInvSqrt2 * (C.row(i).cast<Complex>() + I_ * C.row(n + i).cast<Complex>());
    B.row(n + i) = B.row(i).conjugate();
  }
  B.row(2 * n) = C.row(2 * n).cast<Complex>();
  return B;
}

CMat wedge(const CRow& a, const CRow& b) { return a.transpose() * b - b.transpose() * a; }

}  // namespace

NotHermitianError::NotHermitianError(double residual)
    : std::runtime_error("connection not Hermitian (|ω + ω̄ᵀ| = " + std::to_string(residual) + ")"),
      residual_(residual) {}

CMat ACFrame::d_cobasis_form(int A) const {
  CMat out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(a, b) = dcobasis[a](A, b) - dcobasis[b](A, a);
  return out;
}

ACFrame darboux_frame_at(const PointEval& pe, const std::optional<std::vector<int>>& pivot_order) {
  const int d = pe.d, n = pe.n;
  if (pivot_order && int(pivot_order->size()) > n)
    throw std::invalid_argument("darboux_frame_at: pivot order has more than n entries");
  std::vector<JVec> cands(d, JVec(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) cands[a][b] = pe.Pi1(b, a);

  ACFrame fr;
  fr.n = n;
  fr.d = d;
  std::vector<JVec> E, F;
  for (int k = 0; k < n; ++k) {
    int pick = -1;
    double best = 0.0;
    if (pivot_order && k < int(pivot_order->size())) {
      pick = (*pivot_order)[k];
      if (pick < 0 || pick >= d) throw std::invalid_argument("darboux_frame_at: pivot index out of range");
      best = inner(pe.g1, cands[pick], cands[pick]).value();
    } else {
      for (int a = 0; a < d; ++a) {
        const double v = inner(pe.g1, cands[a], cands[a]).value();
        if (v > best) best = v, pick = a;
      }
    }
    if (pick < 0 || !(best > 1e-12)) throw std::runtime_error("darboux_frame_at: rank-deficient candidates");
    fr.pivots.push_back(pick);
    const Jet1 inv_norm = 1.0 / sqrt(inner(pe.g1, cands[pick], cands[pick]));
    JVec e(d);
    for (int a = 0; a < d; ++a) e[a] = cands[pick][a] * inv_norm;
    const JVec f = mat_vec(pe.J1, e);
    for (auto& cnd : cands) {
      const Jet1 ce = inner(pe.g1, e, cnd), cf = inner(pe.g1, f, cnd);
      axpy(cnd, ce, e);
      axpy(cnd, cf, f);
    }
    E.push_back(e);
    F.push_back(f);
  }

  Jet1Matrix D(d, d), Id(d, d);
  for (int a = 0; a < d; ++a) {
    for (int k = 0; k < n; ++k) {
      D(a, k) = E[k][a];
      D(a, n + k) = F[k][a];
    }
    D(a, 2 * n) = pe.R1[a];
    for (int b = 0; b < d; ++b) Id(a, b) = Jet1(d, a == b ? 1.0 : 0.0);
  }
  const Jet1Matrix C = jet_linear_solve(D, Id);

  fr.dD = split_partials(D, d, fr.D);
  fr.dcoframe = split_partials(C, d, fr.coframe);
  fr.basis = complexify_columns(fr.D, n);
  fr.cobasis = complexify_rows(fr.coframe, n);
  for (int c = 0; c < d; ++c) {
    fr.dbasis.push_back(complexify_columns(fr.dD[c], n));
    fr.dcobasis.push_back(complexify_rows(fr.dcoframe[c], n));
  }
  return fr;
}

FrameInvariants frame_invariants(const PointEval& pe, const ACFrame& fr) {
  FrameInvariants inv;
  const int d = fr.d, n = fr.n;
  Mat gram = fr.D.transpose() * pe.g * fr.D;
  inv.orthonormality = (gram - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) inv.F_is_JE = std::max(inv.F_is_JE, (fr.F(i) - pe.J * fr.E(i)).cwiseAbs().maxCoeff());
  inv.duality = (fr.cobasis * fr.basis - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
  CMat form = pe.dl.cast<Complex>();
  for (int k = 0; k < n; ++k) form -= I_ * wedge(fr.theta(k), fr.theta_bar(k));
  inv.dlambda = form.cwiseAbs().maxCoeff();
  return inv;
}

FrameConnectionMatrix frame_connection_forms(const Christoffel& G, const PointEval& pe, const ACFrame& fr) {
  const int d = fr.d, n = fr.n, r = 2 * n;
  FrameConnectionMatrix m;
  m.n = n;
  for (int c = 0; c < d; ++c)
    m.W.push_back(fr.cobasis * (fr.dbasis[c] + G.slice(c).cast<Complex>() * fr.basis));
  m.omega.assign(n, std::vector<CRow>(n, CRow(d)));
  m.alpha0.assign(n, CRow(d));
  m.beta0.assign(n, CRow(d));
  m.alpha00 = Vec(d);
  for (int c = 0; c < d; ++c) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m.omega[i][j](c) = m.W[c](i, j);
      m.alpha0[i](c) = m.W[c](i, r);
    }
    m.alpha00(c) = m.W[c](r, r).real();
  }
  for (int i = 0; i < n; ++i) {
    Complex nablaRR(0.0);
    for (int c = 0; c < d; ++c) nablaRR += pe.R(c) * m.W[c](i, r);
    m.beta0[i] = nablaRR * pe.lam.transpose().cast<Complex>();
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.hermitian_residual =
          std::max(m.hermitian_residual, (m.omega[i][j] + m.omega[j][i].conjugate()).cwiseAbs().maxCoeff());
      // θ̄^i(∇η_j) = 0 is J-invariance on ξ
      for (int c = 0; c < d; ++c) m.hermitian_residual = std::max(m.hermitian_residual, std::abs(m.W[c](n + i, j)));
    }
  return m;
}

FrameConnectionMatrix connection_matrix_at(const Christoffel& G, const PointEval& pe, const ACFrame& fr,
                                           double hermitian_tol) {
  FrameConnectionMatrix m = frame_connection_forms(G, pe, fr);
  if (m.hermitian_residual > hermitian_tol) throw NotHermitianError(m.hermitian_residual);
  return m;
}

OneFormSplit bidegree_split(const CRow& form, const PointEval& pe) {
  const CMat Pi = pe.Pi.cast<Complex>(), J = pe.J.cast<Complex>();
  OneFormSplit s;
  s.p10 = 0.5 * (form * Pi - I_ * (form * J));
  s.p01 = 0.5 * (form * Pi + I_ * (form * J));
  s.perp = (form * pe.R.cast<Complex>())(0) * pe.lam.transpose().cast<Complex>();
  s.reassembly = (s.p10 + s.p01 + s.perp - form).cwiseAbs().maxCoeff();
  return s;
}

TwoFormSplit bidegree_split(const CMat& form, const PointEval& pe) {
  const CMat Pi = pe.Pi.cast<Complex>(), J = pe.J.cast<Complex>();
  const CMat P10 = 0.5 * (Pi - I_ * J), P01 = 0.5 * (Pi + I_ * J);
  TwoFormSplit s;
  s.p20 = P10.transpose() * form * P10;
  s.p11 = P10.transpose() * form * P01 + P01.transpose() * form * P10;
  s.p02 = P01.transpose() * form * P01;
  s.perp = form - Pi.transpose() * form * Pi;
  s.reassembly = (s.p20 + s.p11 + s.p02 + s.perp - form).cwiseAbs().maxCoeff();
  return s;
}

ComplexTorsion complex_torsion_at(const Christoffel& G, const PointEval& pe, const ACFrame& fr) {
  const int d = fr.d, n = fr.n;
  const Torsion T = torsion_at(G);
  const FrameConnectionMatrix m = frame_connection_forms(G, pe, fr);
  ComplexTorsion ct;
  ct.n = n;
  for (int A = 0; A < d; ++A) {
    CMat direct(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Complex acc(0.0);
        for (int e = 0; e < d; ++e) acc += fr.cobasis(A, e) * T(e, a, b);
        direct(a, b) = acc;
      }
    CMat structure = fr.d_cobasis_form(A);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Complex acc(0.0);
        for (int B = 0; B < d; ++B) acc += m.W[a](A, B) * fr.cobasis(B, b) - m.W[b](A, B) * fr.cobasis(B, a);
        structure(a, b) += acc;
      }
    ct.cross_residual = std::max(ct.cross_residual, (direct - structure).cwiseAbs().maxCoeff());
    ct.Theta.push_back(direct);
    ct.Theta_structure.push_back(structure);
  }
  for (int i = 0; i < n; ++i) {
    CMat c20(n, n), c11(n, n), c02(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        c20(j, k) = (fr.eta(j).transpose() * ct.Theta[i] * fr.eta(k))(0);
        c11(j, k) = (fr.eta(j).transpose() * ct.Theta[i] * fr.eta_bar(k))(0);
        c02(j, k) = (fr.eta_bar(j).transpose() * ct.Theta[i] * fr.eta_bar(k))(0);
      }
    ct.c20.push_back(c20);
    ct.c11.push_back(c11);
    ct.c02.push_back(c02);
  }
  return ct;
}

Christoffel connection_from_frame_forms(const PointEval& pe, const ACFrame& fr,
                                        const std::vector<std::vector<CRow>>& omega, const std::vector<CRow>& alpha) {
  const int d = fr.d, n = fr.n;
  const CVec R = pe.R.cast<Complex>();
  Christoffel G(d);
  for (int a = 0; a < d; ++a) {
    std::vector<CVec> nab_eta(n);
    CVec nabR = CVec::Zero(d);
    for (int j = 0; j < n; ++j) {
      nab_eta[j] = -std::conj(alpha[j](a)) * R;
      for (int i = 0; i < n; ++i) nab_eta[j] += omega[i][j](a) * fr.eta(i);
      nabR += alpha[j](a) * fr.eta(j);
    }
    const Vec nabR_real = 2.0 * nabR.real();
    for (int b = 0; b < d; ++b) {
      CVec v = CVec::Zero(d);
      for (int j = 0; j < n; ++j) v += fr.dcobasis[a](j, b) * fr.eta(j) + fr.cobasis(j, b) * nab_eta[j];
      const Vec col = 2.0 * v.real() + pe.dlam(a, b) * pe.R + pe.lam(b) * nabR_real;
      for (int c = 0; c < d; ++c) G(c, a, b) = col(c);
    }
  }
  return G;
}

FrameConstruction frame_construction_at(const PointEval& pe, double c,
                                        const std::optional<std::vector<int>>& pivot_order) {
  FrameConstruction out;
  out.frame = darboux_frame_at(pe, pivot_order);
  const ACFrame& fr = out.frame;
  const int d = fr.d, n = fr.n;
  const FrameConnectionMatrix base = frame_connection_forms(levi_civita_at(pe), pe, fr);
  out.omega_base = base.omega;

  // (1,1) coefficients of the base torsion: Θ̃^j(η_i, η̄_k)
  out.A.assign(n, std::vector<std::vector<Complex>>(n, std::vector<Complex>(n)));
  std::vector<CMat> dtheta;
  for (int j = 0; j < n; ++j) dtheta.push_back(fr.d_cobasis_form(j));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        out.A[j][i][k] = (fr.eta(i).transpose() * dtheta[j] * fr.eta_bar(k))(0) -
                         (base.omega[j][i] * fr.eta_bar(k))(0);

  out.omega = base.omega;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        out.omega[j][i] += out.A[j][i][k] * fr.theta_bar(k) - std::conj(out.A[i][j][k]) * fr.theta(k);

  const Complex c_over_2i = Complex(c, 0.0) / (2.0 * I_);
  const CMat Pi = pe.Pi.cast<Complex>(), J = pe.J.cast<Complex>();
  out.alpha.resize(n);
  for (int k = 0; k < n; ++k) {
    const CRow gp = base.alpha0[k] * Pi;
    out.alpha[k] = 0.5 * (gp + I_ * (gp * J)) + c_over_2i * fr.theta(k);
  }

  // Reeb component of ω from T(R, η_j) = 0.
  const CVec R = pe.R.cast<Complex>();
  const CRow lam = pe.lam.transpose().cast<Complex>();
  for (int j = 0; j < n; ++j) {
    CVec br = -pe.dR.cast<Complex>() * fr.eta(j);
    for (int e = 0; e < d; ++e) br += pe.R(e) * fr.dbasis[e].col(j);
    for (int i = 0; i < n; ++i) {
      const Complex target = (fr.theta(i) * br)(0) + (i == j ? c_over_2i : Complex(0.0));
      const Complex current = (out.omega[i][j] * R)(0);
      out.omega[i][j] += (target - current) * lam;
    }
  }

  out.gamma = connection_from_frame_forms(pe, fr, out.omega, out.alpha);
  out.gamma_base = connection_from_frame_forms(pe, fr, out.omega_base, std::vector<CRow>(n, CRow::Zero(d)));
  return out;
}

AffineConnection construct_connection_frame(double c, std::optional<std::vector<int>> pivot_order) {
  return AffineConnection(ConnectionKind::frame_constructed, c, "triad-frame",
                          [c, pivot_order](const PointEval& pe) { return frame_construction_at(pe, c, pivot_order).gamma; });
}

AffineConnection base_hermitian_connection(std::optional<std::vector<int>> pivot_order) {
  return AffineConnection(ConnectionKind::custom, 0.0, "base-hermitian", [pivot_order](const PointEval& pe) {
    return frame_construction_at(pe, 0.0, pivot_order).gamma_base;
  });
}

}  // namespace ctc
