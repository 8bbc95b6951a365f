#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ctc/connection.hpp"

namespace ctc {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CRow = Eigen::RowVectorXcd;
using CMat = Eigen::MatrixXcd;

class NotHermitianError : public std::runtime_error {
 public:
  explicit NotHermitianError(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Darboux frame E_i, F_i = J E_i, R and the almost contact frame
// η_i = (E_i − i F_i)/√2 with dual coframe θ^i = (e^i + i f^i)/√2, λ.
// Derivative arrays hold ∂_c of the matrix for each coordinate c.
struct ACFrame {
  int n = 0, d = 0;
  std::vector<int> pivots;  // coordinate index chosen at each Gram–Schmidt step

  Mat D;  // columns E_1..E_n, F_1..F_n, R
  std::vector<Mat> dD;
  Mat coframe;  // D⁻¹: rows e^1..e^n, f^1..f^n, λ
  std::vector<Mat> dcoframe;

  CMat basis;  // columns η_1..η_n, η̄_1..η̄_n, R
  std::vector<CMat> dbasis;
  CMat cobasis;  // rows θ^1..θ^n, θ̄^1..θ̄^n, λ
  std::vector<CMat> dcobasis;

  Vec E(int i) const { return D.col(i); }
  Vec F(int i) const { return D.col(n + i); }
  CVec eta(int i) const { return basis.col(i); }
  CVec eta_bar(int i) const { return basis.col(n + i); }
  CRow theta(int i) const { return cobasis.row(i); }
  CRow theta_bar(int i) const { return cobasis.row(n + i); }
  int reeb_index() const { return 2 * n; }

  // dθ^A as a coordinate two-form: (dθ)_ab = ∂_a θ_b − ∂_b θ_a.
  CMat d_cobasis_form(int A) const;
};

// J-invariant Gram–Schmidt on Π-projected coordinate vectors. The pivot at
// each step is the remaining candidate of largest g-norm unless an explicit
// order is given (a prefix may be given, the rest is greedy); it is fixed
// from values and held during differentiation.
ACFrame darboux_frame_at(const PointEval& pe, const std::optional<std::vector<int>>& pivot_order = std::nullopt);

struct FrameInvariants {
  double orthonormality = 0.0;  // g(D, D) − I
  double F_is_JE = 0.0;
  double duality = 0.0;         // cobasis · basis − I
  double dlambda = 0.0;         // dλ − i Σ θ^k ∧ θ̄^k
};
FrameInvariants frame_invariants(const PointEval& pe, const ACFrame& frame);

// Complex one-forms as coefficient rows over the coordinate coframe.
struct FrameConnectionMatrix {
  int n = 0;
  std::vector<CMat> W;  // W[c](A, B) = cobasis_A(∇_{∂c} basis_B)
  std::vector<std::vector<CRow>> omega;  // ω^i_j = θ^i(∇ η_j), omega[i][j]
  std::vector<CRow> alpha0;              // α^0_k = θ^k(∇ R)
  Vec alpha00;                           // α^0_0 = λ(∇ R)
  std::vector<CRow> beta0;               // β^i_0 = θ^i(∇_R R) λ
  double hermitian_residual = 0.0;       // max of |ω + ω̄ᵀ| and |θ̄^i(∇η_j)|
};

// No Hermiticity check; used by constructions that build ω themselves.
FrameConnectionMatrix frame_connection_forms(const Christoffel& G, const PointEval& pe, const ACFrame& frame);
// Throws NotHermitianError when the residual exceeds hermitian_tol.
FrameConnectionMatrix connection_matrix_at(const Christoffel& G, const PointEval& pe, const ACFrame& frame,
                                           double hermitian_tol = 1e-9);

struct OneFormSplit {
  CRow p10, p01, perp;
  double reassembly = 0.0;
};
struct TwoFormSplit {
  CMat p20, p11, p02, perp;
  double reassembly = 0.0;
};
OneFormSplit bidegree_split(const CRow& form, const PointEval& pe);
TwoFormSplit bidegree_split(const CMat& form, const PointEval& pe);

struct ComplexTorsion {
  int n = 0;
  std::vector<CMat> Theta;            // θ^A(T) for every coframe row A (direct route)
  std::vector<CMat> Theta_structure;  // dθ^A + Σ_B θ^A(∇e_B) ∧ θ^B
  double cross_residual = 0.0;
  // Frame components of Θ^i for i < n: c20[i](j,k) = Θ^i(η_j, η_k),
  // c11[i](j,k) = Θ^i(η_j, η̄_k), c02[i](j,k) = Θ^i(η̄_j, η̄_k).
  std::vector<CMat> c20, c11, c02;
  const CMat& theta0() const { return Theta[2 * n]; }
};

ComplexTorsion complex_torsion_at(const Christoffel& G, const PointEval& pe, const ACFrame& frame);

// Coordinate Christoffels of the connection with ∇η_j = Σ ω^i_j η_i − ᾱ^0_j R
// and ∇R = Σ α^0_k η_k + c.c.
Christoffel connection_from_frame_forms(const PointEval& pe, const ACFrame& frame,
                                        const std::vector<std::vector<CRow>>& omega, const std::vector<CRow>& alpha);

struct FrameConstruction {
  ACFrame frame;
  std::vector<std::vector<std::vector<Complex>>> A;  // A[j][i][k] from the (1,1) part of the base torsion
  std::vector<std::vector<CRow>> omega_base, omega;
  std::vector<CRow> alpha;
  Christoffel gamma;
  Christoffel gamma_base;  // ∇̃ with zero λ-row
};

FrameConstruction frame_construction_at(const PointEval& pe, double c,
                                        const std::optional<std::vector<int>>& pivot_order = std::nullopt);

AffineConnection construct_connection_frame(double c, std::optional<std::vector<int>> pivot_order = std::nullopt);
// The Hermitian base connection ∇̃ of the construction, with zero λ-row.
AffineConnection base_hermitian_connection(std::optional<std::vector<int>> pivot_order = std::nullopt);

}  // namespace ctc
