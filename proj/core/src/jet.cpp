#include <Eigen/SVD>
#include <limits>

#include "ctc/jet.hpp"

namespace ctc {

double condition_estimate(const std::vector<double>& values, int n) {
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = values[std::size_t(i) * n + j];
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
  if (s.size() == 0 || s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

}  // namespace ctc
