#include "ctc/connection.hpp"

namespace ctc {

Vec Array3::apply(const Vec& X, const Vec& Y) const {
  Vec out = Vec::Zero(d_);
  for (int c = 0; c < d_; ++c)
    for (int a = 0; a < d_; ++a) {
      if (X(a) == 0.0) continue;
      double acc = 0.0;
      for (int b = 0; b < d_; ++b) acc += (*this)(c, a, b) * Y(b);
      out(c) += X(a) * acc;
    }
  return out;
}

Mat Array3::slice(int a) const {
  Mat M(d_, d_);
  for (int c = 0; c < d_; ++c)
    for (int b = 0; b < d_; ++b) M(c, b) = (*this)(c, a, b);
  return M;
}

double Array3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Array3::max_abs_diff(const Array3& o) const {
  if (o.d_ != d_) throw std::invalid_argument("Array3: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
  return m;
}

const char* to_string(ConnectionKind k) {
  switch (k) {
    case ConnectionKind::levi_civita: return "levi-civita";
    case ConnectionKind::direct_triad: return "triad-direct";
    case ConnectionKind::frame_constructed: return "triad-frame";
    case ConnectionKind::custom: return "custom";
  }
  return "?";
}

Christoffel levi_civita_at(const PointEval& pe) {
  const int d = pe.d;
  DenseMatrix<double> g(d, d), rhs(d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = pe.g(i, j);
  // first-kind symbols [ab, e] = ½(∂_a g_be + ∂_b g_ae − ∂_e g_ab)
  for (int e = 0; e < d; ++e)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        rhs(e, a * d + b) = 0.5 * (pe.dg[a](b, e) + pe.dg[b](a, e) - pe.dg[e](a, b));
  const DenseMatrix<double> sol = jet_linear_solve(g, rhs);
  Christoffel G(d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) G(c, a, b) = sol(c, a * d + b);
  return G;
}

Christoffel levi_civita_at(const ContactTriad& triad, const Vec& x) { return levi_civita_at(evaluate_point(triad, x)); }

AffineConnection levi_civita_connection() {
  return AffineConnection(ConnectionKind::levi_civita, 0.0, "levi-civita",
                          [](const PointEval& pe) { return levi_civita_at(pe); });
}

VectorField1 constant_field(const Vec& v) { return {v, Mat::Zero(v.size(), v.size())}; }
VectorField1 reeb_field(const PointEval& pe) { return {pe.R, pe.dR}; }
CovectorField1 lambda_field(const PointEval& pe) { return {pe.lam, pe.dlam.transpose()}; }
EndomorphismField1 J_field(const PointEval& pe) { return {pe.J, pe.dJ}; }
EndomorphismField1 projector_field(const PointEval& pe) { return {pe.Pi, pe.dPi}; }
BilinearField1 metric_field(const PointEval& pe) { return {pe.g, pe.dg}; }
BilinearField1 dlambda_field(const PointEval& pe) { return {pe.dl, pe.d_dl}; }

// Σ_c X^c Γ_c, where (Γ_c)(a, b) = Γ^a_cb.
static Mat contract_direction(const Christoffel& G, const Vec& X) {
  const int d = G.dim();
  Mat M = Mat::Zero(d, d);
  for (int c = 0; c < d; ++c)
    if (X(c) != 0.0) M += X(c) * G.slice(c);
  return M;
}

static Mat directional(const std::vector<Mat>& dM, const Vec& X) {
  Mat out = Mat::Zero(dM[0].rows(), dM[0].cols());
  for (int c = 0; c < int(dM.size()); ++c)
    if (X(c) != 0.0) out += X(c) * dM[c];
  return out;
}

double nabla(const Christoffel&, const ScalarField1& f, const Vec& X) { return f.grad.dot(X); }

Vec nabla(const Christoffel& G, const VectorField1& V, const Vec& X) {
  return V.d * X + contract_direction(G, X) * V.value;
}

Vec nabla(const Christoffel& G, const CovectorField1& w, const Vec& X) {
  return w.d * X - contract_direction(G, X).transpose() * w.value;
}

Mat nabla(const Christoffel& G, const EndomorphismField1& A, const Vec& X) {
  const Mat GX = contract_direction(G, X);
  return directional(A.d, X) + GX * A.value - A.value * GX;
}

Mat nabla(const Christoffel& G, const BilinearField1& B, const Vec& X) {
  const Mat GX = contract_direction(G, X);
  return directional(B.d, X) - GX.transpose() * B.value - B.value * GX;
}

TensorField covariant_derivative_at(const Christoffel& G, const TensorField& field, const Vec& X) {
  return std::visit(
      [&](const auto& f) -> TensorField {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ScalarField1>) return ScalarField1{nabla(G, f, X), {}};
        else if constexpr (std::is_same_v<T, VectorField1>) return VectorField1{nabla(G, f, X), {}};
        else if constexpr (std::is_same_v<T, CovectorField1>) return CovectorField1{nabla(G, f, X), {}};
        else if constexpr (std::is_same_v<T, EndomorphismField1>) return EndomorphismField1{nabla(G, f, X), {}};
        else return BilinearField1{nabla(G, f, X), {}};
      },
      field);
}

Mat lie_derivative_J_at(const PointEval& pe) {
  return directional(pe.dJ, pe.R) - pe.dR * pe.J + pe.J * pe.dR;
}

BTensor::BTensor(const PointEval& pe) : BTensor(pe, levi_civita_at(pe)) {}

BTensor::BTensor(const PointEval& pe, Christoffel levi_civita) : pe_(pe), lc_(std::move(levi_civita)) {
  const EndomorphismField1 Jf = J_field(pe);
  const Mat I = Mat::Identity(pe.d, pe.d);
  for (int c = 0; c < pe.d; ++c) nablaJ_.push_back(nabla(lc_, Jf, Vec(I.col(c))));
  LRJ_ = lie_derivative_J_at(pe);
}

Mat BTensor::nabla_J(const Vec& X) const { return directional(nablaJ_, X); }

Vec BTensor::B1(const Vec& Z1, const Vec& Z2) const {
  const Mat& J = pe_.J;
  const Mat& Pi = pe_.Pi;
  const Vec PZ1 = Pi * Z1, PZ2 = Pi * Z2;
  return -0.25 * (nabla_J(J * Z2) * PZ1 + J * (nabla_J(PZ2) * PZ1) + 2.0 * J * (nabla_J(PZ1) * PZ2));
}

Vec BTensor::B2(const Vec& Z1, const Vec& Z2) const {
  const Mat& J = pe_.J;
  const Mat& g = pe_.g;
  const double coeff = -(J * LRJ_ * Z1).dot(g * Z2) + (J * Z1).dot(g * Z2);
  return 0.125 * coeff * pe_.R;
}

Vec BTensor::B3(const Vec& Z1, const Vec& Z2) const {
  const Mat& J = pe_.J;
  const Mat& g = pe_.g;
  const Vec& R = pe_.R;
  return 0.5 * (-Z2.dot(g * R) * (J * Z1) - Z1.dot(g * R) * (J * Z2) + (J * Z1).dot(g * Z2) * R);
}

Vec b_tensor_at(const PointEval& pe, const Vec& Z1, const Vec& Z2) { return BTensor(pe)(Z1, Z2); }

Christoffel triad_connection_direct_at(const PointEval& pe, BArgumentOrder order) {
  const BTensor B(pe);
  Christoffel G = B.levi_civita();
  const int d = pe.d;
  const Mat I = Mat::Identity(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Vec Ea = I.col(a), Eb = I.col(b);
      const Vec v = order == BArgumentOrder::direction_first ? B(Ea, Eb) : B(Eb, Ea);
      for (int c = 0; c < d; ++c) G(c, a, b) += v(c);
    }
  return G;
}

AffineConnection direct_triad_connection(BArgumentOrder order) {
  const std::string tag = order == BArgumentOrder::direction_first ? "triad-direct" : "triad-direct[swapped]";
  return AffineConnection(ConnectionKind::direct_triad, 0.0, tag,
                          [order](const PointEval& pe) { return triad_connection_direct_at(pe, order); });
}

Torsion torsion_at(const Christoffel& G) {
  const int d = G.dim();
  Torsion T(d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) T(c, a, b) = G(c, a, b) - G(c, b, a);
  return T;
}

Torsion torsion_at(const AffineConnection& conn, const PointEval& pe) { return torsion_at(conn.at(pe)); }

static VectorField1 apply_J(const PointEval& pe, const VectorField1& X) {
  VectorField1 out;
  out.value = pe.J * X.value;
  out.d = pe.J * X.d;
  for (int c = 0; c < pe.d; ++c) out.d.col(c) += pe.dJ[c] * X.value;
  return out;
}

// [V, W]^a = V^b ∂_b W^a − W^b ∂_b V^a
static Vec bracket(const VectorField1& V, const VectorField1& W) { return W.d * V.value - V.d * W.value; }

Vec nijenhuis_at(const PointEval& pe, const VectorField1& X, const VectorField1& Y) {
  const VectorField1 JX = apply_J(pe, X), JY = apply_J(pe, Y);
  return bracket(JX, JY) - bracket(X, Y) - pe.J * bracket(X, JY) - pe.J * bracket(JX, Y);
}

Vec nijenhuis_at(const PointEval& pe, const Vec& X, const Vec& Y) {
  return nijenhuis_at(pe, constant_field(X), constant_field(Y));
}

Array3 nijenhuis_tensor_at(const PointEval& pe) {
  const int d = pe.d;
  const Mat I = Mat::Identity(d, d);
  Array3 N(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Vec v = nijenhuis_at(pe, Vec(I.col(a)), Vec(I.col(b)));
      for (int c = 0; c < d; ++c) N(c, a, b) = v(c);
    }
  return N;
}

}  // namespace ctc
