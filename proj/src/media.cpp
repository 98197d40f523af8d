#include "temax/media.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "temax/error.hpp"

namespace temax {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_media: return "invalid-media";
    case ErrorCode::branch_degeneracy: return "branch-degeneracy";
    case ErrorCode::degenerate_symbol: return "degenerate-symbol";
    case ErrorCode::undefined_ratio: return "undefined-ratio";
    case ErrorCode::contour_through_zero: return "contour-through-zero";
    case ErrorCode::refine_failure: return "refine-failure";
    case ErrorCode::discretization: return "discretization";
    case ErrorCode::degenerate_contrast: return "degenerate-contrast";
    case ErrorCode::sweep_divergence: return "sweep-divergence";
    case ErrorCode::decay_violation: return "decay-violation";
  }
  return "unknown";
}

bool Wavenumber::in_wedge() const {
  const cplx k2 = k * k;
  return std::abs(k2.imag()) >= gamma * std::norm(k);
}

bool Wavenumber::in_wedge(int alpha2) const {
  const cplx k2 = static_cast<double>(alpha2) * k * k;
  return std::abs(k2.imag()) >= gamma * std::norm(k);
}

bool MediaQuad::within_bounds() const {
  const double lo = 1.0 / lambda_cap;
  for (double v : {eps, mu, eps_hat, mu_hat})
    if (v < lo || v > lambda_cap) return false;
  return true;
}

void MediaQuad::validate() const {
  if (!(positive() && std::isfinite(eps) && std::isfinite(mu) && std::isfinite(eps_hat) && std::isfinite(mu_hat)))
    throw Error(ErrorCode::invalid_media, "media constants must be positive and finite");
  if (alpha2 != 1 && alpha2 != -1) throw Error(ErrorCode::invalid_media, "alpha2 must be +1 or -1");
  if (!(lambda_cap >= 1.0)) throw Error(ErrorCode::invalid_media, "lambda must be >= 1");
  if (!(lambda_margin > 0.0)) throw Error(ErrorCode::invalid_media, "lambda1 must be > 0");
}

AdmissibilityReport check_admissible(const MediaQuad& m) {
  m.validate();
  AdmissibilityReport r;
  r.margins = {std::abs(m.eps - m.eps_hat), std::abs(m.mu - m.mu_hat), std::abs(m.eps / m.mu - m.eps_hat / m.mu_hat)};
  r.ok = std::all_of(r.margins.begin(), r.margins.end(), [&](double x) { return x >= m.lambda_margin; });
  return r;
}

void WedgeSpec::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorCode::invalid_argument, "wedge gamma must lie in (0, 1]");
  if (!(omega0 > 0.0)) throw Error(ErrorCode::invalid_argument, "wedge omega0 must be positive");
}

double WedgeSpec::min_angle() const { return 0.5 * std::asin(std::min(gamma, 1.0)); }

bool wedge_contains(const WedgeSpec& w, cplx omega) {
  const cplx w2 = omega * omega;
  const double mod2 = std::norm(omega);
  return std::abs(w2.imag()) >= w.gamma * mod2 && mod2 >= w.omega0 * w.omega0;
}

RadialMedia::RadialMedia(std::array<std::vector<double>, 4> samples, double s0, double lambda_cap, double lambda_margin)
    : samples_(std::move(samples)), s0_(s0), lambda_cap_(lambda_cap), lambda_margin_(lambda_margin) {
  const std::size_t n = samples_[0].size();
  if (n < 2) throw Error(ErrorCode::invalid_media, "radial profiles need at least two samples");
  for (const auto& s : samples_)
    if (s.size() != n) throw Error(ErrorCode::invalid_media, "radial profiles must share one grid");
  if (!(s0 > 0.0 && s0 <= 1.0)) throw Error(ErrorCode::invalid_media, "collar width s0 must lie in (0, 1]");
}

RadialMedia RadialMedia::constant(const MediaQuad& m, int grid, double s0) {
  m.validate();
  if (grid < 2) throw Error(ErrorCode::invalid_argument, "radial grid needs at least two nodes");
  std::array<std::vector<double>, 4> s;
  s[0].assign(grid, m.eps);
  s[1].assign(grid, m.mu);
  s[2].assign(grid, m.eps_hat);
  s[3].assign(grid, m.mu_hat);
  return RadialMedia(std::move(s), s0, m.lambda_cap, m.lambda_margin);
}

RadialMedia RadialMedia::sampled(const Profile& eps, const Profile& mu, const Profile& eps_hat, const Profile& mu_hat,
                                 int grid, double s0, double lambda_cap, double lambda_margin) {
  if (grid < 2) throw Error(ErrorCode::invalid_argument, "radial grid needs at least two nodes");
  std::array<std::vector<double>, 4> s;
  const Profile* f[4] = {&eps, &mu, &eps_hat, &mu_hat};
  for (int j = 0; j < 4; ++j) {
    s[j].resize(grid);
    for (int i = 0; i < grid; ++i) s[j][i] = (*f[j])(static_cast<double>(i) / (grid - 1));
  }
  return RadialMedia(std::move(s), s0, lambda_cap, lambda_margin);
}

double RadialMedia::value(Field f, double r) const {
  const auto& s = samples(f);
  const int n = grid_size();
  const double x = std::clamp(r, 0.0, 1.0) * (n - 1);
  const int i = std::min(static_cast<int>(x), n - 2);
  const double t = x - i;
  return (1.0 - t) * s[i] + t * s[i + 1];
}

MediaQuad RadialMedia::boundary() const {
  MediaQuad m;
  m.eps = samples_[0].back();
  m.mu = samples_[1].back();
  m.eps_hat = samples_[2].back();
  m.mu_hat = samples_[3].back();
  m.lambda_cap = lambda_cap_;
  m.lambda_margin = lambda_margin_;
  return m;
}

double RadialMedia::collar_slope(Field f) const {
  const auto& s = samples(f);
  const int n = grid_size();
  const double h = 1.0 / (n - 1);
  double worst = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double mid = (i + 0.5) * h;
    if (mid < 1.0 - s0_) continue;
    worst = std::max(worst, std::abs(s[i + 1] - s[i]) / h);
  }
  return worst;
}

bool RadialMedia::is_constant(double tol) const {
  for (const auto& s : samples_)
    for (double v : s)
      if (std::abs(v - s.front()) > tol * std::abs(s.front())) return false;
  return true;
}

void RadialMedia::validate() const {
  const double lo = 1.0 / lambda_cap_;
  for (int j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < samples_[j].size(); ++i) {
      const double v = samples_[j][i];
      if (!(v >= lo && v <= lambda_cap_)) {
        std::ostringstream os;
        os << "radial profile " << j << " leaves [1/lambda, lambda] at node " << i;
        throw Error(ErrorCode::invalid_media, os.str());
      }
    }
    if (collar_slope(static_cast<Field>(j)) > lambda_cap_)
      throw Error(ErrorCode::invalid_media, "radial profile slope exceeds lambda on the collar");
  }
  if (!check_admissible(boundary()).ok)
    throw Error(ErrorCode::invalid_media, "boundary values at r = 1 are not admissible");
}

}  // namespace temax
