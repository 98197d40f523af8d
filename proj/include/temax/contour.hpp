#pragma once

#include <functional>
#include <vector>

#include "temax/media.hpp"

namespace temax {

/// Function value together with the magnitude of the terms it was assembled from.
struct FnSample {
  cplx value;
  double scale = 1.0;
};

using ScaledFn = std::function<FnSample(cplx)>;

/// Straight segment a→b or circular arc around `center` from angle t0 to t1.
struct Segment {
  enum class Kind { line, arc } kind = Kind::line;
  cplx a, b;
  cplx center;
  double radius = 0.0, t0 = 0.0, t1 = 0.0;

  cplx at(double s) const;
  double length() const;
};

using Contour = std::vector<Segment>;

/// Counter-clockwise boundary of [lo.re, hi.re] × [lo.im, hi.im].
Contour rectangle(cplx lo, cplx hi);
/// Counter-clockwise boundary of {r0 ≤ |z| ≤ r1, phi0 ≤ arg z ≤ phi1}.
Contour annular_sector(double r0, double r1, double phi0, double phi1);
Contour circle(cplx center, double radius);

struct WindingOptions {
  double zero_tol = 1e-10;    // precheck: |f| > zero_tol · scale on every sample
  int initial_steps = 32;     // per segment
  double min_step = 1e-13;    // in segment parameter
};

/// Number of zeros (with multiplicity) enclosed, by adaptive phase tracking.
/// Throws contour_through_zero if a sample fails the precheck or the step underflows.
int winding_number(const ScaledFn& f, const Contour& c, const WindingOptions& opt = {});

}  // namespace temax
