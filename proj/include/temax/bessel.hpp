#pragma once

#include <vector>

#include "temax/media.hpp"

namespace temax {

/// (2n+1)!!
double odd_double_factorial(int n);

/// j_0(z), ..., j_nmax(z) for complex z.
std::vector<cplx> spherical_jn(int nmax, cplx z);

/// u_m(z) = j_m(z) / z^m for m = 0..nmax; entire and even in z, u_m(0) = 1/(2m+1)!!.
std::vector<cplx> spherical_u(int nmax, cplx z);

}  // namespace temax
