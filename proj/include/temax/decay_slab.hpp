#pragma once

#include <vector>

#include "temax/halfspace.hpp"

namespace temax {

/// Source-free constant-coefficient Maxwell system on the slab 0 < x₃ < 1 at one tangential frequency,
/// with tangential E prescribed on both faces.
struct SlabProblem {
  double eps = 2.0;
  double mu = 1.0;
  Wavenumber k;
  double s = 0.2;  // collar width
  TangentialMode xi{0.5, 0.3};
  cvec2 e0{cplx(1.0, 0.0), cplx(0.0, 0.5)};
  cvec2 e1{cplx(0.3, 0.0), cplx(-0.2, 0.1)};
  bool enforce_wedge = true;  // false admits oscillatory probes (real ω)

  void validate() const;
};

/// Each component is c₁ e^{λ(x₃-1)} + c₂ e^{-λx₃}.
struct SlabMode {
  cplx c1, c2;
  cplx at(double x, cplx lambda) const;
};

struct SlabProfile {
  cplx lambda;
  std::array<SlabMode, 3> E, H;
  cvec3 E_at(double x) const;
  cvec3 H_at(double x) const;
  /// Exact ∫_a^b (|E|² + |H|²) dx₃.
  double energy(double a, double b) const;
};

SlabProfile slab_solve(const SlabProblem& p);

/// ‖(E, H)‖ on [s, 1-s] over ‖(E, H)‖ on the collar [0, s] ∪ [1-s, 1].
double interior_collar_ratio(const SlabProfile& prof, double s);

struct DecayFit {
  std::vector<double> k_abs;
  std::vector<double> ratios;
  double s = 0.0;
  double c1 = NAN, c2 = NAN;
  double residual = NAN;  // max relative misfit of the fitted ratios
  bool violation = false; // c₂ ≤ min_c2
};

/// Least-squares fit of log(ratio) against |k| along arg k = arg(p.k.k).
DecayFit fit_decay(const SlabProblem& p, const std::vector<double>& k_abs, double min_c2 = 0.05);

}  // namespace temax
