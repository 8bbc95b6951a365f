#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace ctc {

// Largest supported chart dimension (n <= 5).
inline constexpr int kMaxDim = 11;
inline constexpr int kMaxPacked = kMaxDim * (kMaxDim + 1) / 2;

// Column-packed upper triangle; independent of the active dimension.
constexpr int packed_index(int a, int b) {
  return a <= b ? b * (b + 1) / 2 + a : a * (a + 1) / 2 + b;
}

class Jet1 {
 public:
  Jet1() = default;
  explicit Jet1(int dim, double v = 0.0) : dim_(dim), value_(v) {
    assert(dim >= 0 && dim <= kMaxDim);
    grad_.fill(0.0);
  }
  static Jet1 variable(int dim, int a, double v) {
    Jet1 j(dim, v);
    j.grad_[a] = 1.0;
    return j;
  }

  int dim() const { return dim_; }
  double value() const { return value_; }
  double& value() { return value_; }
  double grad(int a) const { return grad_[a]; }
  double& grad(int a) { return grad_[a]; }

  Jet1& operator+=(const Jet1& o) {
    value_ += o.value_;
    for (int a = 0; a < dim_; ++a) grad_[a] += o.grad_[a];
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    value_ -= o.value_;
    for (int a = 0; a < dim_; ++a) grad_[a] -= o.grad_[a];
    return *this;
  }
  Jet1& operator*=(double s) {
    value_ *= s;
    for (int a = 0; a < dim_; ++a) grad_[a] *= s;
    return *this;
  }
  Jet1& operator+=(double s) {
    value_ += s;
    return *this;
  }

  friend Jet1 operator*(const Jet1& f, const Jet1& g) {
    Jet1 r(f.dim_, f.value_ * g.value_);
    for (int a = 0; a < f.dim_; ++a) r.grad_[a] = f.grad_[a] * g.value_ + f.value_ * g.grad_[a];
    return r;
  }

  // phi(f) given phi(v), phi'(v); the second derivative is ignored at this order.
  Jet1 chain(double v, double d1, double /*d2*/) const {
    Jet1 r(dim_, v);
    for (int a = 0; a < dim_; ++a) r.grad_[a] = d1 * grad_[a];
    return r;
  }

 private:
  int dim_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxDim> grad_{};
};

class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int dim, double v = 0.0) : dim_(dim), value_(v) {
    assert(dim >= 0 && dim <= kMaxDim);
    grad_.fill(0.0);
    hess_.fill(0.0);
  }
  static Jet2 variable(int dim, int a, double v) {
    Jet2 j(dim, v);
    j.grad_[a] = 1.0;
    return j;
  }

  int dim() const { return dim_; }
  double value() const { return value_; }
  double& value() { return value_; }
  double grad(int a) const { return grad_[a]; }
  double& grad(int a) { return grad_[a]; }
  double hess(int a, int b) const { return hess_[packed_index(a, b)]; }
  double& hess(int a, int b) { return hess_[packed_index(a, b)]; }

  Jet2& operator+=(const Jet2& o) {
    value_ += o.value_;
    for (int a = 0; a < dim_; ++a) grad_[a] += o.grad_[a];
    for (int k = 0, m = packed(); k < m; ++k) hess_[k] += o.hess_[k];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    value_ -= o.value_;
    for (int a = 0; a < dim_; ++a) grad_[a] -= o.grad_[a];
    for (int k = 0, m = packed(); k < m; ++k) hess_[k] -= o.hess_[k];
    return *this;
  }
  Jet2& operator*=(double s) {
    value_ *= s;
    for (int a = 0; a < dim_; ++a) grad_[a] *= s;
    for (int k = 0, m = packed(); k < m; ++k) hess_[k] *= s;
    return *this;
  }
  Jet2& operator+=(double s) {
    value_ += s;
    return *this;
  }

  friend Jet2 operator*(const Jet2& f, const Jet2& g) {
    const int d = f.dim_;
    Jet2 r(d, f.value_ * g.value_);
    for (int a = 0; a < d; ++a) r.grad_[a] = f.grad_[a] * g.value_ + f.value_ * g.grad_[a];
    for (int b = 0; b < d; ++b)
      for (int a = 0; a <= b; ++a) {
        const int k = packed_index(a, b);
        r.hess_[k] = f.hess_[k] * g.value_ + f.value_ * g.hess_[k] + f.grad_[a] * g.grad_[b] +
                     f.grad_[b] * g.grad_[a];
      }
    return r;
  }

  Jet2 chain(double v, double d1, double d2) const {
    Jet2 r(dim_, v);
    for (int a = 0; a < dim_; ++a) r.grad_[a] = d1 * grad_[a];
    for (int b = 0; b < dim_; ++b)
      for (int a = 0; a <= b; ++a) {
        const int k = packed_index(a, b);
        r.hess_[k] = d1 * hess_[k] + d2 * grad_[a] * grad_[b];
      }
    return r;
  }

  Jet1 truncate() const {
    Jet1 r(dim_, value_);
    for (int a = 0; a < dim_; ++a) r.grad(a) = grad_[a];
    return r;
  }

 private:
  int packed() const { return dim_ * (dim_ + 1) / 2; }

  int dim_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxDim> grad_{};
  std::array<double, kMaxPacked> hess_{};
};

// ∂_a f as a first-order jet.
inline Jet1 partial(const Jet2& f, int a) {
  Jet1 r(f.dim(), f.grad(a));
  for (int b = 0; b < f.dim(); ++b) r.grad(b) = f.hess(a, b);
  return r;
}

inline double value_of(double x) { return x; }
inline long double value_of(long double x) { return x; }
inline double value_of(const Jet1& x) { return x.value(); }
inline double value_of(const Jet2& x) { return x.value(); }

template <class J>
concept JetType = std::is_same_v<J, Jet1> || std::is_same_v<J, Jet2>;

template <JetType J>
J operator+(J f, const J& g) { return f += g; }
template <JetType J>
J operator-(J f, const J& g) { return f -= g; }
template <JetType J>
J operator-(J f) { return f *= -1.0; }
template <JetType J>
J operator+(J f, double s) { return f += s; }
template <JetType J>
J operator+(double s, J f) { return f += s; }
template <JetType J>
J operator-(J f, double s) { return f += -s; }
template <JetType J>
J operator-(double s, J f) {
  f *= -1.0;
  return f += s;
}
template <JetType J>
J operator*(J f, double s) { return f *= s; }
template <JetType J>
J operator*(double s, J f) { return f *= s; }

template <JetType J>
J reciprocal(const J& f) {
  const double v = f.value();
  return f.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}
template <JetType J>
J operator/(const J& f, const J& g) { return f * reciprocal(g); }
template <JetType J>
J operator/(J f, double s) { return f *= 1.0 / s; }
template <JetType J>
J operator/(double s, const J& g) { return reciprocal(g) * s; }

template <JetType J>
J sin(const J& f) {
  const double v = f.value();
  return f.chain(std::sin(v), std::cos(v), -std::sin(v));
}
template <JetType J>
J cos(const J& f) {
  const double v = f.value();
  return f.chain(std::cos(v), -std::sin(v), -std::cos(v));
}
template <JetType J>
J exp(const J& f) {
  const double e = std::exp(f.value());
  return f.chain(e, e, e);
}
template <JetType J>
J log(const J& f) {
  const double v = f.value();
  return f.chain(std::log(v), 1.0 / v, -1.0 / (v * v));
}
template <JetType J>
J sqrt(const J& f) {
  const double s = std::sqrt(f.value());
  return f.chain(s, 0.5 / s, -0.25 / (s * f.value()));
}
template <JetType J>
J tanh(const J& f) {
  const double t = std::tanh(f.value());
  const double d1 = 1.0 - t * t;
  return f.chain(t, d1, -2.0 * t * d1);
}

// x^k for integer k, exact polynomial derivatives.
inline double int_power(double x, int k) {
  double r = 1.0, b = x;
  unsigned m = k < 0 ? -static_cast<unsigned>(k) : static_cast<unsigned>(k);
  while (m) {
    if (m & 1u) r *= b;
    b *= b;
    m >>= 1u;
  }
  return k < 0 ? 1.0 / r : r;
}

inline double pow(double x, int k) { return int_power(x, k); }

template <JetType J>
J pow(const J& f, int k) {
  const double v = f.value();
  if (k == 0) return J(f.dim(), 1.0);
  const double d1 = k * int_power(v, k - 1);
  const double d2 = (k == 1) ? 0.0 : double(k) * double(k - 1) * int_power(v, k - 2);
  return f.chain(int_power(v, k), d1, d2);
}

// f^p for real p; base must be positive.
template <JetType J>
J pow(const J& f, double p) {
  const double v = f.value();
  const double r = std::pow(v, p);
  return f.chain(r, p * r / v, p * (p - 1.0) * r / (v * v));
}

template <JetType J>
J pow(const J& f, const J& g) { return exp(g * log(f)); }

// Row-major dense matrix over a scalar ring (double or jets).
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using JetMatrix = DenseMatrix<Jet2>;
using Jet1Matrix = DenseMatrix<Jet1>;

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& A, const DenseMatrix<T>& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  DenseMatrix<T> C(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      T acc = A(i, 0) * B(0, j);
      for (int k = 1; k < A.cols(); ++k) acc += A(i, k) * B(k, j);
      C(i, j) = acc;
    }
  return C;
}

template <class T>
std::vector<T> operator*(const DenseMatrix<T>& A, const std::vector<T>& x) {
  if (A.cols() != int(x.size())) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  std::vector<T> y;
  y.reserve(A.rows());
  for (int i = 0; i < A.rows(); ++i) {
    T acc = A(i, 0) * x[0];
    for (int k = 1; k < A.cols(); ++k) acc += A(i, k) * x[k];
    y.push_back(acc);
  }
  return y;
}

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

// 2-norm condition number of a value matrix (row-major n×n).
double condition_estimate(const std::vector<double>& values, int n);

// Pivots whose magnitude falls below this fraction of max|A| count as zero.
inline constexpr double kSingularPivotRatio = 1e-13;

// Solves A X = B over the jet ring by Gaussian elimination with partial
// pivoting on value parts.
template <class T>
DenseMatrix<T> jet_linear_solve(DenseMatrix<T> A, DenseMatrix<T> B) {
  const int n = A.rows();
  if (A.cols() != n || B.rows() != n) throw std::invalid_argument("jet_linear_solve: dimension mismatch");
  double scale = 0.0;
  std::vector<double> vals(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      vals[std::size_t(i) * n + j] = double(value_of(A(i, j)));
      scale = std::max(scale, std::abs(vals[std::size_t(i) * n + j]));
    }
  const auto singular = [&] {
    throw SingularMatrixError("jet_linear_solve: singular matrix", condition_estimate(vals, n));
  };
  if (scale == 0.0) singular();
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(double(value_of(A(k, k))));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(double(value_of(A(i, k))));
      if (v > best) best = v, p = i;
    }
    if (best <= kSingularPivotRatio * scale) singular();
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      for (int j = 0; j < B.cols(); ++j) std::swap(B(k, j), B(p, j));
    }
    const T inv = 1.0 / A(k, k);
    for (int i = k + 1; i < n; ++i) {
      const T f = A(i, k) * inv;
      for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
      for (int j = 0; j < B.cols(); ++j) B(i, j) -= f * B(k, j);
    }
  }
  DenseMatrix<T> X(n, B.cols());
  for (int j = 0; j < B.cols(); ++j)
    for (int i = n - 1; i >= 0; --i) {
      T acc = B(i, j);
      for (int k = i + 1; k < n; ++k) acc -= A(i, k) * X(k, j);
      X(i, j) = acc / A(i, i);
    }
  return X;
}

template <class T>
std::vector<T> jet_linear_solve(const DenseMatrix<T>& A, const std::vector<T>& b) {
  DenseMatrix<T> B(int(b.size()), 1);
  for (int i = 0; i < int(b.size()); ++i) B(i, 0) = b[i];
  const DenseMatrix<T> X = jet_linear_solve(A, B);
  std::vector<T> x(b.size());
  for (int i = 0; i < int(b.size()); ++i) x[i] = X(i, 0);
  return x;
}

}  // namespace ctc
