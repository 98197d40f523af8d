#include <doctest.h>

#include "temax/certifier.hpp"
#include "temax/error.hpp"

using namespace temax;

namespace {

MediaQuad quad(double e, double m, double eh, double mh) {
  MediaQuad q;
  q.eps = e, q.mu = m, q.eps_hat = eh, q.mu_hat = mh;
  return q;
}

ScanGrid small_grid() {
  ScanGrid g;
  g.xi_count = 24;
  g.angle_count = 10;
  g.k_count = 8;
  return g;
}

}  // namespace

TEST_CASE("scan minimum for (2,1,1,2) against the continuous infimum") {
  // For these media both denominators equal -3|ξ|² - 6k², so the ratio is |3u + 6(1-u)e^{iφ}| with
  // u = |ξ|²/(|ξ|²+|k|²) ∈ [0, 1] and φ = 2 arg k. Dense sampling of (u, φ) gives the infimum.
  const double phi_lo = std::asin(0.5), phi_hi = M_PI - std::asin(0.5);
  double inf = INFINITY;
  for (int i = 0; i <= 2000; ++i)
    for (int j = 0; j <= 200; ++j) {
      const double u = i / 2000.0, phi = phi_lo + (phi_hi - phi_lo) * j / 200.0;
      inf = std::min(inf, std::abs(3.0 * u + 6.0 * (1.0 - u) * std::polar(1.0, phi)));
    }
  const auto r = scan_lower_bounds(quad(2, 1, 1, 2), WedgeSpec{0.5, 1.0}, small_grid());
  CHECK(r.min_ratio_A >= inf * (1 - 1e-9));
  CHECK(r.min_ratio_B >= inf * (1 - 1e-9));
  CHECK(r.min_ratio_A <= 1.5 * inf);
  CHECK(r.min_ratio_A == doctest::Approx(r.min_ratio_B));
  CHECK(r.points == 24L * 10 * 8);  // the ξ grid includes ξ = 0
}

TEST_CASE("degenerate media drive the ratios to zero") {
  const auto same = scan_lower_bounds(quad(1.5, 1, 1.5, 1), WedgeSpec{}, small_grid());
  CHECK(same.min_ratio_A == 0.0);
  CHECK(same.min_ratio_B == 0.0);
  ScanGrid fine = small_grid();
  fine.xi_count = 128;
  fine.xi_min = 1e-6;
  const auto eq = scan_lower_bounds(quad(2, 1, 4, 2), WedgeSpec{}, fine);
  CHECK(eq.min_ratio_A <= 1e-6);
  // ε̂/μ̂ = ε/μ is the same as μ/ε = μ̂/ε̂, so both symbols lose their k² term
  CHECK(eq.min_ratio_B <= 1e-6);
}

TEST_CASE("certificate decisions") {
  CHECK(certify(quad(2, 1, 1, 2), WedgeSpec{}, small_grid(), 1e-3).certified);
  CHECK_FALSE(certify(quad(1.5, 1, 1.5, 1), WedgeSpec{}, small_grid(), 1e-3).certified);
  CHECK_FALSE(certify(quad(2, 1, 1, 2), WedgeSpec{}, small_grid(), 1e6).certified);
}

TEST_CASE("scan is deterministic across thread counts") {
  ScanGrid g = small_grid();
  const auto a = scan_lower_bounds(quad(3, 2, 1, 1), WedgeSpec{}, g);
  g.threads = 3;
  const auto b = scan_lower_bounds(quad(3, 2, 1, 1), WedgeSpec{}, g);
  CHECK(a.min_ratio_A == b.min_ratio_A);
  CHECK(a.min_ratio_B == b.min_ratio_B);
  CHECK(a.argmin_A.k == b.argmin_A.k);
  CHECK(a.argmin_B.xi_index == b.argmin_B.xi_index);
}

TEST_CASE("scan grid contracts") {
  ScanGrid g;
  const auto th = g.angles(0.5);
  CHECK(th.size() == 32u);
  for (double t : th) CHECK((Wavenumber{std::polar(2.0, t), 0.5}).in_wedge());
  CHECK(g.xi_values().front() == 0.0);
  g.k_count = 0;
  CHECK_THROWS_AS(g.validate(), Error);
}
