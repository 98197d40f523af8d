#pragma once

#include <array>
#include <functional>
#include <vector>

#include "temax/media.hpp"

namespace temax {

using cvec2 = std::array<cplx, 2>;
using cvec3 = std::array<cplx, 3>;

/// Tangential Fourier frequency ξ = (ξ₁, ξ₂).
struct TangentialMode {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double norm2() const { return xi1 * xi1 + xi2 * xi2; }
};

/// Tangential traces (f_e, f_m) at one ξ; third components are zero.
struct TraceDatum {
  cvec2 fe{};
  cvec2 fm{};
  double norm() const;
};

struct ModeAmplitudes {
  cvec2 a{};
  cvec2 a_hat{};
  TangentialMode xi;
  Wavenumber k;
  MediaQuad media;
  TraceDatum trace;  // data the amplitudes were solved from
  cplx lambda;       // √(|ξ|² + k²εμ)
  cplx lambda_hat;   // √(|ξ|² + α²k²ε̂μ̂)
};

struct FieldSample {
  double x3 = 0.0;
  cvec3 E{}, H{}, E_hat{}, H_hat{};
};

struct CauchyResidual {
  double maxwell_res = 0.0;
  double bc_res = 0.0;
};

/// Square root with positive real part; throws branch_degeneracy on (-∞, 0].
cplx decaying_sqrt(cplx z);

/// h = -(fe, 0) × e₃, tangential part.
cvec2 trace_h(const cvec2& fe);

/// g = -(ξ·f_m)/k.
cplx trace_g(const cvec2& fm, const TangentialMode& xi, const Wavenumber& k);

cplx denom_A(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m);
cplx denom_B(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m);

/// Closed-form tangential amplitudes of the decaying half-space Cauchy solution.
ModeAmplitudes solve_amplitudes(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m,
                                const TraceDatum& trace);

/// Builds amplitudes without solving, for probes and tests.
ModeAmplitudes make_amplitudes(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m,
                               const TraceDatum& trace, const cvec2& a, const cvec2& a_hat);

FieldSample evaluate_fields(const ModeAmplitudes& amp, double x3);

CauchyResidual cauchy_residual(const ModeAmplitudes& amp, const std::vector<double>& x3_grid);

/// Ratio of the solution norms to the trace norms in the half-space estimate, at fixed ξ.
double stability_ratio(const ModeAmplitudes& amp);

struct PecProfile {
  std::vector<double> x3;
  std::vector<cvec3> E, H;
};

using SourceProfile = std::function<cvec3(double)>;

/// Per-ξ solution of curl E = kμH, curl H = -kεE + J_m, E×e₃ = 0 on x₃ = 0, decaying at infinity.
/// The source must vanish outside [0, support_end].
PecProfile pec_source_solve(const TangentialMode& xi, const Wavenumber& k, double eps, double mu,
                            const SourceProfile& jm, double support_end, const std::vector<double>& x3_grid);

/// max over interior grid points of |curl H + kεE - J_m| / max|J_m|, using a sixth-order stencil for ∂₃H.
/// The grid must be uniform.
double pec_residual(const PecProfile& p, const TangentialMode& xi, const Wavenumber& k, double eps, double mu,
                    const SourceProfile& jm);

/// L² norm over the sampled grid (trapezoid) of (E, H) and of J_m.
double profile_l2(const PecProfile& p);
double source_l2(const SourceProfile& jm, const std::vector<double>& x3_grid);

}  // namespace temax
