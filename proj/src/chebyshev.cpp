#include "temax/chebyshev.hpp"

#include <cmath>

#include "temax/error.hpp"

namespace temax {

ChebGrid::ChebGrid(int n) : N(n) {
  if (n < 4) throw Error(ErrorCode::invalid_argument, "Chebyshev grid needs N >= 4");
  r.resize(N + 1);
  for (int j = 0; j <= N; ++j) r(j) = 0.5 * (1.0 - std::cos(M_PI * j / N));

  // Barycentric weights (-1)^j, halved at the ends; diagonal by the negative row sum.
  Eigen::VectorXd bw(N + 1);
  for (int j = 0; j <= N; ++j) bw(j) = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == N) ? 0.5 : 1.0);
  D.setZero(N + 1, N + 1);
  for (int i = 0; i <= N; ++i) {
    double s = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      // Node differences via the half-angle identity avoid cancellation near the ends.
      const double diff = std::sin(M_PI * (i + j) / (2.0 * N)) * std::sin(M_PI * (i - j) / (2.0 * N));
      D(i, j) = (bw(j) / bw(i)) / diff;
      s += D(i, j);
    }
    D(i, i) = -s;
  }

  // Clenshaw-Curtis on [-1, 1], halved for [0, 1].
  w.setZero(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double th = M_PI * j / N;
    double v = 1.0;
    if (N % 2 == 0) {
      if (j == 0 || j == N) {
        w(j) = 1.0 / (N * N - 1.0);
        continue;
      }
      for (int k = 1; k < N / 2; ++k) v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
      v -= std::cos(N * th) / (N * N - 1.0);
    } else {
      if (j == 0 || j == N) {
        w(j) = 1.0 / (static_cast<double>(N) * N);
        continue;
      }
      for (int k = 1; k <= (N - 1) / 2; ++k) v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
    }
    w(j) = 2.0 * v / N;
  }
  w *= 0.5;
}

}  // namespace temax
