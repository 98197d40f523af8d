#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace temax {

using cplx = std::complex<double>;

/// Spectral parameter k = iω together with the wedge aperture it is tested against.
struct Wavenumber {
  cplx k{1.0, 0.0};
  double gamma = 0.5;

  static Wavenumber from_omega(cplx omega, double gamma) { return {cplx(0.0, 1.0) * omega, gamma}; }

  cplx omega() const { return cplx(0.0, -1.0) * k; }
  double abs() const { return std::abs(k); }
  /// |Im(k²)| ≥ γ|k|².
  bool in_wedge() const;
  /// Same test for α²k² (identical for α² = ±1, kept for clarity at call sites).
  bool in_wedge(int alpha2) const;
};

/// Frozen isotropic boundary values of the two media.
struct MediaQuad {
  double eps = 1.0;
  double mu = 1.0;
  double eps_hat = 1.0;
  double mu_hat = 1.0;
  int alpha2 = 1;             // α² ∈ {+1, -1}; α = 1 or α = i
  double lambda_cap = 10.0;   // Λ
  double lambda_margin = 0.1; // Λ₁

  cplx alpha() const { return alpha2 == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0); }
  bool positive() const { return eps > 0 && mu > 0 && eps_hat > 0 && mu_hat > 0; }
  bool within_bounds() const;
  /// Throws invalid_media unless all four constants are positive and α² = ±1.
  void validate() const;
};

struct AdmissibilityReport {
  bool ok = false;
  std::array<double, 3> margins{};  // |ε-ε̂|, |μ-μ̂|, |ε/μ - ε̂/μ̂|
};

AdmissibilityReport check_admissible(const MediaQuad& m);

/// {ω : |Im ω²| ≥ γ|ω|², |ω| ≥ ω₀}.
struct WedgeSpec {
  double gamma = 0.5;
  double omega0 = 1.0;

  void validate() const;
  /// Half-opening of the wedge arc in each quadrant: φ ∈ [φ₀, π/2 - φ₀] with sin 2φ₀ = γ.
  double min_angle() const;
};

bool wedge_contains(const WedgeSpec& w, cplx omega);

/// Radially varying isotropic media on the unit ball, sampled on a uniform grid over [0, 1].
class RadialMedia {
 public:
  enum class Field { eps = 0, mu = 1, eps_hat = 2, mu_hat = 3 };
  using Profile = std::function<double(double)>;

  static constexpr int default_grid = 512;

  RadialMedia() = default;
  RadialMedia(std::array<std::vector<double>, 4> samples, double s0, double lambda_cap, double lambda_margin);

  static RadialMedia constant(const MediaQuad& m, int grid = default_grid, double s0 = 0.25);
  static RadialMedia sampled(const Profile& eps, const Profile& mu, const Profile& eps_hat, const Profile& mu_hat,
                             int grid = default_grid, double s0 = 0.25, double lambda_cap = 10.0,
                             double lambda_margin = 0.1);

  int grid_size() const { return static_cast<int>(samples_[0].size()); }
  double s0() const { return s0_; }
  const std::vector<double>& samples(Field f) const { return samples_[static_cast<int>(f)]; }

  /// Piecewise-linear interpolation of the sampled profile.
  double value(Field f, double r) const;
  MediaQuad boundary() const;
  /// Largest midpoint-stencil derivative magnitude over the collar [1 - s0, 1].
  double collar_slope(Field f) const;
  bool is_constant(double tol = 1e-14) const;

  /// Throws invalid_media when bounds, boundary admissibility or the collar slope bound fail.
  void validate() const;

 private:
  std::array<std::vector<double>, 4> samples_;
  double s0_ = 0.25;
  double lambda_cap_ = 10.0;
  double lambda_margin_ = 0.1;
};

}  // namespace temax
