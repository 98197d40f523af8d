#include "temax/bessel.hpp"

#include <cmath>

#include "temax/error.hpp"

namespace temax {

namespace {

constexpr double series_radius = 2.0;

std::vector<cplx> u_series(int nmax, cplx z) {
  std::vector<cplx> u(nmax + 1);
  const cplx q = -0.5 * z * z;
  for (int m = 0; m <= nmax; ++m) {
    cplx term = 1.0 / odd_double_factorial(m);
    cplx sum = term;
    for (int k = 0; k < 80; ++k) {
      term *= q / ((k + 1.0) * (2.0 * m + 2.0 * k + 3.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    u[m] = sum;
  }
  return u;
}

std::vector<cplx> jn_upward(int nmax, cplx z) {
  std::vector<cplx> j(nmax + 1);
  const cplx s = std::sin(z), c = std::cos(z);
  j[0] = s / z;
  if (nmax >= 1) j[1] = s / (z * z) - c / z;
  for (int n = 1; n < nmax; ++n) j[n + 1] = (2.0 * n + 1.0) / z * j[n] - j[n - 1];
  return j;
}

// Miller's downward recurrence, normalised against whichever of j_0, j_1 is larger.
std::vector<cplx> jn_miller(int nmax, cplx z) {
  const int start = nmax + static_cast<int>(std::abs(z)) + 40;
  std::vector<cplx> buf(start + 2);
  buf[start + 1] = 0.0;
  buf[start] = 1e-30;
  for (int n = start; n >= 1; --n) {
    buf[n - 1] = (2.0 * n + 1.0) / z * buf[n] - buf[n + 1];
    if (std::abs(buf[n - 1]) > 1e200) {
      for (int m = n - 1; m <= start + 1; ++m) buf[m] *= 1e-200;
    }
  }
  const cplx s = std::sin(z), c = std::cos(z);
  const cplx j0 = s / z, j1 = s / (z * z) - c / z;
  const cplx scale = (std::abs(j0) >= std::abs(j1)) ? j0 / buf[0] : j1 / buf[1];
  std::vector<cplx> j(nmax + 1);
  for (int n = 0; n <= nmax; ++n) j[n] = buf[n] * scale;
  return j;
}

}  // namespace

double odd_double_factorial(int n) {
  double d = 1.0;
  for (int m = 1; m <= n; ++m) d *= 2.0 * m + 1.0;
  return d;
}

std::vector<cplx> spherical_jn(int nmax, cplx z) {
  if (nmax < 0) throw Error(ErrorCode::invalid_argument, "bessel order must be nonnegative");
  if (std::abs(z) <= series_radius) {
    auto u = u_series(nmax, z);
    cplx zp = 1.0;
    for (int m = 0; m <= nmax; ++m) {
      u[m] *= zp;
      zp *= z;
    }
    return u;
  }
  return nmax <= std::abs(z) ? jn_upward(nmax, z) : jn_miller(nmax, z);
}

std::vector<cplx> spherical_u(int nmax, cplx z) {
  if (nmax < 0) throw Error(ErrorCode::invalid_argument, "bessel order must be nonnegative");
  if (std::abs(z) <= series_radius) return u_series(nmax, z);
  auto j = nmax <= std::abs(z) ? jn_upward(nmax, z) : jn_miller(nmax, z);
  cplx zp = 1.0;
  for (int m = 0; m <= nmax; ++m) {
    j[m] /= zp;
    zp *= z;
  }
  return j;
}

}  // namespace temax
