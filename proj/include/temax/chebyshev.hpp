#pragma once

#include <Eigen/Dense>

namespace temax {

/// Chebyshev-Gauss-Lobatto nodes on [0, 1] in ascending order (r₀ = 0, r_N = 1),
/// with the collocation differentiation matrix and Clenshaw-Curtis weights.
struct ChebGrid {
  int N = 0;
  Eigen::VectorXd r;
  Eigen::MatrixXd D;
  Eigen::VectorXd w;

  explicit ChebGrid(int N);
};

}  // namespace temax
