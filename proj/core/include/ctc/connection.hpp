#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ctc/triad.hpp"

namespace ctc {

// d×d×d array indexed (c, a, b): Christoffel symbols Γ^c_ab with
// ∇_{∂a}∂_b = Γ^c_ab ∂_c, or (1,2)-tensors such as torsion T^c_ab.
class Array3 {
 public:
  Array3() = default;
  explicit Array3(int d) : d_(d), data_(std::size_t(d) * d * d, 0.0) {}

  int dim() const { return d_; }
  double& operator()(int c, int a, int b) { return data_[(std::size_t(c) * d_ + a) * d_ + b]; }
  double operator()(int c, int a, int b) const { return data_[(std::size_t(c) * d_ + a) * d_ + b]; }

  // Σ_ab A^c_ab X^a Y^b
  Vec apply(const Vec& X, const Vec& Y) const;
  // (M)(c, b) = A^c_ab: the matrix with ∇_{∂a} V = ∂_a V + M V.
  Mat slice(int a) const;
  double max_abs() const;
  double max_abs_diff(const Array3& o) const;
  const std::vector<double>& data() const { return data_; }

 private:
  int d_ = 0;
  std::vector<double> data_;
};

using Christoffel = Array3;
using Torsion = Array3;

enum class ConnectionKind { levi_civita, direct_triad, frame_constructed, custom };
enum class BArgumentOrder { direction_first, direction_second };

const char* to_string(ConnectionKind k);

class AffineConnection {
 public:
  using Evaluator = std::function<Christoffel(const PointEval&)>;

  AffineConnection(ConnectionKind kind, double c, std::string tag, Evaluator eval)
      : kind_(kind), c_(c), tag_(std::move(tag)), eval_(std::move(eval)) {}

  ConnectionKind kind() const { return kind_; }
  double c() const { return c_; }
  const std::string& tag() const { return tag_; }

  Christoffel at(const PointEval& pe) const { return eval_(pe); }
  Christoffel at(const ContactTriad& triad, const Vec& x) const { return eval_(evaluate_point(triad, x)); }

 private:
  ConnectionKind kind_;
  double c_;
  std::string tag_;
  Evaluator eval_;
};

Christoffel levi_civita_at(const PointEval& pe);
Christoffel levi_civita_at(const ContactTriad& triad, const Vec& x);
AffineConnection levi_civita_connection();

// Tensor fields carrying their first partials at a point. Derivative index
// last: VectorField1::d(a, c) = ∂_c V^a, CovectorField1::d(b, c) = ∂_c w_b,
// matrix fields d[c] = ∂_c M.
struct ScalarField1 {
  double value = 0.0;
  Vec grad;
};
struct VectorField1 {
  Vec value;
  Mat d;
};
struct CovectorField1 {
  Vec value;
  Mat d;
};
struct EndomorphismField1 {
  Mat value;
  std::vector<Mat> d;
};
struct BilinearField1 {
  Mat value;
  std::vector<Mat> d;
};

using TensorField = std::variant<ScalarField1, VectorField1, CovectorField1, EndomorphismField1, BilinearField1>;

VectorField1 constant_field(const Vec& v);
VectorField1 reeb_field(const PointEval& pe);
CovectorField1 lambda_field(const PointEval& pe);
EndomorphismField1 J_field(const PointEval& pe);
EndomorphismField1 projector_field(const PointEval& pe);
BilinearField1 metric_field(const PointEval& pe);
BilinearField1 dlambda_field(const PointEval& pe);

double nabla(const Christoffel& G, const ScalarField1& f, const Vec& X);
Vec nabla(const Christoffel& G, const VectorField1& V, const Vec& X);
Vec nabla(const Christoffel& G, const CovectorField1& w, const Vec& X);
Mat nabla(const Christoffel& G, const EndomorphismField1& A, const Vec& X);
Mat nabla(const Christoffel& G, const BilinearField1& B, const Vec& X);

// ∇_X of any supported field; the result has the same valence and no partials.
TensorField covariant_derivative_at(const Christoffel& G, const TensorField& field, const Vec& X);

// L_R J = R^c ∂_c J − (∂R) J + J (∂R)
Mat lie_derivative_J_at(const PointEval& pe);

// Ingredients of the B-tensor at one point, computed once.
class BTensor {
 public:
  explicit BTensor(const PointEval& pe);
  BTensor(const PointEval& pe, Christoffel levi_civita);

  Vec B1(const Vec& Z1, const Vec& Z2) const;
  Vec B2(const Vec& Z1, const Vec& Z2) const;
  Vec B3(const Vec& Z1, const Vec& Z2) const;
  Vec operator()(const Vec& Z1, const Vec& Z2) const { return B1(Z1, Z2) + B2(Z1, Z2) + B3(Z1, Z2); }

  // (∇^LC_X J)
  Mat nabla_J(const Vec& X) const;
  const Christoffel& levi_civita() const { return lc_; }
  const Mat& lie_derivative_J() const { return LRJ_; }

 private:
  const PointEval& pe_;
  Christoffel lc_;
  std::vector<Mat> nablaJ_;
  Mat LRJ_;
};

Vec b_tensor_at(const PointEval& pe, const Vec& Z1, const Vec& Z2);

// Γ^LC + B with the chosen slot as the direction of differentiation.
Christoffel triad_connection_direct_at(const PointEval& pe, BArgumentOrder order = BArgumentOrder::direction_first);
AffineConnection direct_triad_connection(BArgumentOrder order = BArgumentOrder::direction_first);

Torsion torsion_at(const Christoffel& G);
Torsion torsion_at(const AffineConnection& conn, const PointEval& pe);

// N(X,Y) = [JX,JY] − [X,Y] − J[X,JY] − J[JX,Y] for fields with given partials.
Vec nijenhuis_at(const PointEval& pe, const VectorField1& X, const VectorField1& Y);
Vec nijenhuis_at(const PointEval& pe, const Vec& X, const Vec& Y);
// Components N^c_ab = N(∂_a, ∂_b)^c.
Array3 nijenhuis_tensor_at(const PointEval& pe);

}  // namespace ctc
