#pragma once

#include "temax/media.hpp"

namespace temax {

/// Sampling of (|ξ|, arg k, |k|) for the symbol scan. |ξ| = 0 is always included.
struct ScanGrid {
  int xi_count = 64;
  double xi_min = 1e-3;  // smallest nonzero |ξ|
  double xi_max = 100.0;
  int angle_count = 32;
  int k_count = 16;
  double k_min = 1.0;
  double k_max = 100.0;
  int threads = 1;

  void validate() const;
  std::vector<double> xi_values() const;
  std::vector<double> k_values() const;
  /// arg k samples inside the wedge; half in (0, π/2), half in (π/2, π).
  std::vector<double> angles(double gamma) const;
};

struct SymbolArgmin {
  double xi = 0.0;
  cplx k;
  int xi_index = 0, angle_index = 0, k_index = 0;
};

struct SymbolScanReport {
  double min_ratio_A = 0.0;
  double min_ratio_B = 0.0;
  SymbolArgmin argmin_A, argmin_B;
  ScanGrid grid;
  double gamma = 0.0;
  long points = 0;
};

SymbolScanReport scan_lower_bounds(const MediaQuad& m, const WedgeSpec& w, const ScanGrid& grid);

struct Certificate {
  bool certified = false;
  AdmissibilityReport admissibility;
  SymbolScanReport scan;
  double threshold = 1e-3;
};

Certificate certify(const MediaQuad& m, const WedgeSpec& w, const ScanGrid& grid, double threshold = 1e-3);

}  // namespace temax
