#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "temax/contour.hpp"
#include "temax/media.hpp"

namespace temax {

enum class Polarization { TE, TM };

const char* polarization_name(Polarization p);

/// Normalised 2×2 matching determinant for degree n on the unit ball, constant media, α = 1.
///   f(ω) = D² [u_n(κ₁) v_n(κ₂)/w₂ - u_n(κ₂) v_n(κ₁)/w₁],  D = (2n+1)!!
/// with κ₁ = ω√(εμ), κ₂ = ω√(ε̂μ̂), u_n = j_n(z)/z^n, v_n = u_{n-1} - n u_n = ψ_n'(z)/z^n,
/// and (w₁, w₂) = (μ, μ̂) for TE, (ε, ε̂) for TM.
class SectorDeterminant {
 public:
  SectorDeterminant(int n, Polarization pol, const MediaQuad& m);

  int n() const { return n_; }
  Polarization polarization() const { return pol_; }
  const MediaQuad& media() const { return media_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }

  cplx operator()(cplx omega) const { return sample(omega).value; }
  /// Value and term scale; damping ∈ {-1, 0, 1} multiplies by the zero-free factor exp(i·damping·(κ₁+κ₂)).
  FnSample sample(cplx omega, int damping = 0) const;
  cplx derivative(cplx omega) const;
  /// Rows: tangential E and H matching; columns scaled so that the mode in medium i is r^n u_n(κ_i r).
  Eigen::Matrix2cd matching_matrix(cplx omega) const;

 private:
  int n_;
  Polarization pol_;
  MediaQuad media_;
  double c1_, c2_, w1_, w2_, dfact_;
};

struct EigenvalueRecord {
  cplx omega;
  int n = 0;
  Polarization pol = Polarization::TE;
  double residual = 0.0;
  int multiplicity = 1;
  std::string sectors;  // every (n, polarization) that produced this root
  int iterations = 0;
};

SectorDeterminant build_determinant(int n, Polarization pol, const MediaQuad& m);

int count_roots(const SectorDeterminant& det, const Contour& contour, int damping = 0);

struct RefineOptions {
  int max_iter = 100;
  double max_radius = INFINITY;  // fail if an iterate leaves this disc around the seed
  std::vector<cplx>* trace = nullptr;
};

/// Newton iteration with the analytic derivative; residual is filled by eigenfield_residual.
EigenvalueRecord refine_root(const SectorDeterminant& det, cplx seed, const RefineOptions& opt = {});

/// Max relative residual of the reconstructed mode fields: radial Maxwell equations on the grid
/// (derivatives from Bessel identities) and both tangential jumps at r = 1.
double eigenfield_residual(const EigenvalueRecord& rec, const MediaQuad& m, int radial_points = 64);

/// Same, for an explicit coefficient pair (fields c₁ r^n u_n(κ₁r) and -c₂ r^n u_n(κ₂r)).
double eigenfield_residual(const SectorDeterminant& det, cplx omega, const Eigen::Vector2cd& coeffs,
                           int radial_points = 64);

struct WedgeCell {
  int n = 0;
  Polarization pol = Polarization::TE;
  double r0 = 0, r1 = 0, phi0 = 0, phi1 = 0;
  int count = 0;
};

struct WedgeReport {
  double gamma = 0, omega0 = 0, R = 0;
  int n_max = 0;
  int total_roots = 0;
  bool clean = true;
  std::vector<WedgeCell> cells;
};

WedgeReport wedge_emptiness(const MediaQuad& m, const WedgeSpec& w, int n_max, double R, int threads = 1);

struct WedgeLadder {
  std::vector<WedgeReport> rungs;
  double first_clean_omega0 = NAN;     // smallest rung that is clean on its own
  double smallest_clean_omega0 = NAN;  // smallest rung from which every later rung is clean
};

/// Scans every ω₀ in `ladder` (ascending) with R = factor·ω₀.
WedgeLadder wedge_ladder(const MediaQuad& m, double gamma, int n_max, const std::vector<double>& ladder,
                         double factor = 3.0, int threads = 1);

struct Census {
  std::vector<EigenvalueRecord> roots;  // sorted by (|ω|, arg ω, n)
  double R = 0;
  int n_max = 0;
  double min_gap = INFINITY;
  double max_residual = 0.0;
};

Census spectrum_census(const MediaQuad& m, int n_max, double R, int threads = 1);

/// N(r) = #{recorded roots with |ω| ≤ r}.
int counting_function(const Census& c, double r);

}  // namespace temax
