// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "temax/ball_oracle.hpp"
#include "temax/certifier.hpp"
#include "temax/decay_slab.hpp"
#include "temax/halfspace.hpp"
#include "temax/radial_operator.hpp"

using namespace temax;

namespace {

MediaQuad quad(double e, double m, double eh, double mh) {
  MediaQuad q;
  q.eps = e, q.mu = m, q.eps_hat = eh, q.mu_hat = mh;
  return q;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome half_space_exactness() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_m = 0, worst_b = 0;
  int done = 0;
  while (done < 200) {
    MediaQuad m = quad(0.2 + 4 * u(rng), 0.2 + 4 * u(rng), 0.2 + 4 * u(rng), 0.2 + 4 * u(rng));
    m.alpha2 = u(rng) < 0.5 ? 1 : -1;
    if (!check_admissible(m).ok) continue;
    const double lo = std::asin(0.5) / 2;
    const double phi = lo + (M_PI / 2 - 2 * lo) * u(rng) + (u(rng) < 0.5 ? 0.0 : M_PI / 2);
    const Wavenumber k{std::polar(2.0 + 98.0 * u(rng), phi), 0.5};
    const TangentialMode xi{20 * (u(rng) - 0.5), 20 * (u(rng) - 0.5)};
    TraceDatum t;
    for (auto* v : {&t.fe, &t.fm})
      for (auto& z : *v) z = cplx(2 * u(rng) - 1, 2 * u(rng) - 1);
    const auto r = cauchy_residual(solve_amplitudes(xi, k, m, t), {0, .05, .1, .2, .4, .8, 1.6, 3.2});
    worst_m = std::max(worst_m, r.maxwell_res);
    worst_b = std::max(worst_b, r.bc_res);
    ++done;
  }
  return {worst_m <= 1e-9 && worst_b <= 1e-9,
          fmt("200 tuples, max maxwell_res %.2e, max bc_res %.2e (tol 1e-9)", worst_m, worst_b)};
}

Outcome stability_boundedness() {
  const MediaQuad m = quad(2, 1, 1, 2);
  TraceDatum t;
  t.fe = {cplx(1, 0.5), cplx(-0.2)};
  t.fm = {cplx(0.3), cplx(0.1, -0.4)};
  const double k0 = 2.0;
  double lo = INFINITY, hi = 0;
  for (int i = 0; i <= 40; ++i) {
    const double ka = k0 * std::pow(100.0, i / 40.0);
    const double r = stability_ratio(solve_amplitudes({1, 0.5}, Wavenumber{std::polar(ka, M_PI / 4), 0.5}, m, t));
    lo = std::min(lo, r), hi = std::max(hi, r);
  }
  return {hi / lo <= 4.0, fmt("|k| in [2, 200], ratio range [%.3f, %.3f], max/min %.3f (limit 4)", lo, hi, hi / lo)};
}

Outcome symbol_bounds() {
  const Certificate c = certify(quad(2, 1, 1, 2), WedgeSpec{}, ScanGrid{}, 1e-3);
  ScanGrid fine;
  fine.xi_count = 256;
  fine.xi_min = 1e-6;
  fine.angle_count = 64;
  const auto d = scan_lower_bounds(quad(2, 1, 4, 2), WedgeSpec{}, fine);
  return {c.certified && c.scan.min_ratio_A >= 1e-3 && c.scan.min_ratio_B >= 1e-3 && d.min_ratio_A <= 1e-6,
          fmt("(2,1,1,2) min ratios A %.4g B %.4g (>= 1e-3); (2,1,4,2) refined min ratio A %.3g (<= 1e-6)",
              c.scan.min_ratio_A, c.scan.min_ratio_B, d.min_ratio_A)};
}

Outcome discreteness() {
  const Census c = spectrum_census(quad(2, 1, 1, 2), 12, 30.0, 1);
  return {!c.roots.empty() && c.max_residual <= 1e-8 && c.min_gap > 1e-6,
          fmt("%zu roots with |omega| <= 30, n <= 12, max residual %.2e (tol 1e-8), min gap %.3e (> 1e-6)",
              c.roots.size(), c.max_residual, c.min_gap)};
}

Outcome wedge_free() {
  const std::vector<double> ladder{1, 2, 5, 10, 20, 50};
  std::string detail;
  bool pass = true;
  for (const MediaQuad& m : {quad(2, 1, 1, 2), quad(3, 2, 1, 1)}) {
    const WedgeLadder wl = wedge_ladder(m, 0.5, 12, ladder, 3.0, 1);
    int roots = 0;
    for (const auto& r : wl.rungs) roots += r.total_roots;
    const bool ok = std::isfinite(wl.smallest_clean_omega0) && wl.smallest_clean_omega0 <= 50.0;
    pass = pass && ok;
    detail += fmt("%s(%g,%g,%g,%g) clean from omega0 = %g (roots on lower rungs %d)", detail.empty() ? "" : "; ",
                  m.eps, m.mu, m.eps_hat, m.mu_hat, wl.smallest_clean_omega0, roots);
  }
  return {pass, detail + ", gamma 0.5, R = 3 omega0, n <= 12"};
}

bool in_sector(const EigenvalueRecord& r, int n, Polarization p) {
  std::stringstream ss(r.sectors);
  std::string tok;
  const std::string want = std::to_string(n) + polarization_name(p);
  while (std::getline(ss, tok, '+'))
    if (tok == want) return true;
  return false;
}

Outcome operator_cross_validation() {
  const Wavenumber k{std::polar(10.0, M_PI / 4), 0.5};
  double worst = 0;
  int compared = 0;
  for (const MediaQuad& m : {quad(2, 1, 1, 2), quad(3, 2, 1, 1)}) {
    const auto media = RadialMedia::constant(m, 65);
    const Census c = spectrum_census(m, 2, 9.0, 1);
    for (Polarization p : {Polarization::TE, Polarization::TM})
      for (int n : {1, 2}) {
        std::vector<cplx> ball, phys;
        for (const auto& r : c.roots)
          if (in_sector(r, n, p)) ball.push_back(r.omega);
        for (const auto& e : physical_spectrum(media, k, n, p, 48, 1e-3, 9.5))
          if (e.physical) phys.push_back(e.omega);
        if (ball.size() < 5 || phys.size() < 5) return {false, fmt("sector %d%s has too few eigenvalues", n, polarization_name(p))};
        auto nearest = [](cplx z, const std::vector<cplx>& v) {
          double b = INFINITY;
          for (const cplx& w : v) b = std::min(b, std::abs(w - z) / std::abs(z));
          return b;
        };
        for (int i = 0; i < 5; ++i) {
          worst = std::max({worst, nearest(ball[i], phys), nearest(phys[i], ball)});
          ++compared;
        }
      }
  }
  return {worst <= 1e-3, fmt("%d eigenvalues in sectors n = 1, 2 (TE, TM) for two media, max relative deviation %.2e "
                             "(tol 1e-3)", compared, worst)};
}

Outcome limiting_absorption() {
  std::string detail;
  bool pass = true;
  for (int sign : {1, -1}) {
    SectorSystem s;
    s.media = RadialMedia::constant(quad(2, 1, 1, 2), 65);
    s.k = Wavenumber{std::polar(10.0, M_PI / 4), 0.5};
    s.grid = 48;
    s.hat_sign = sign;
    for (Polarization p : {Polarization::TE, Polarization::TM}) {
      s.pol = p;
      const auto rep = limiting_absorption_sweep(s, default_source(ChebGrid(48), 1), {1e-2, 1e-3, 1e-4});
      const double r = rep.ratios.at(0);
      pass = pass && r >= 5 && r <= 20;
      detail += fmt("%s%s%s ratio %.3f", detail.empty() ? "" : ", ", polarization_name(p), sign > 0 ? "" : "(reg)", r);
    }
  }
  return {pass, "delta 1e-2, 1e-3, 1e-4: " + detail + " (range [5, 20])"};
}

Outcome decay() {
  SlabProblem p;
  p.k = Wavenumber{std::polar(10.0, M_PI / 4), 0.5};
  const DecayFit w = fit_decay(p, {10, 20, 40});
  SlabProblem q = p;
  q.k = Wavenumber{cplx(0.0, 10.0), 0.5};
  q.enforce_wedge = false;
  const DecayFit r = fit_decay(q, {10, 20, 40});
  return {w.c2 > 0 && w.residual < 0.05 && r.c2 < 0.05 && r.violation,
          fmt("wedge c2 %.4f residual %.2f%% (< 5%%); real omega c2 %.2e, violation %s", w.c2, 100 * w.residual, r.c2,
              r.violation ? "reported" : "missing")};
}

Outcome operator_norm() {
  const auto media = RadialMedia::constant(quad(2, 1, 1, 2), 65);
  const auto th = sweep_threshold(media, 1, Polarization::TE, M_PI / 4, {1, 2, 4, 8, 16}, 48);
  if (!std::isfinite(th.threshold)) return {false, "no |k| with a first-order sweep"};
  double lo = INFINITY, hi = 0;
  for (int i = 0; i <= 4; ++i) {
    const double ka = th.threshold * std::pow(10.0, i / 4.0);
    const auto sv = operator_singular_values(
        operator_T_matrix(media, Wavenumber{std::polar(ka, M_PI / 4), 0.5}, 1, Polarization::TE, 64));
    lo = std::min(lo, ka * sv(0)), hi = std::max(hi, ka * sv(0));
  }
  return {hi / lo <= 4.0, fmt("threshold |k| = %g, |k| sigma_max in [%.3f, %.3f] over one decade, max/min %.3f "
                              "(limit 4)", th.threshold, lo, hi, hi / lo)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {1, "half-space exactness", 10, half_space_exactness},
      {2, "stability constant boundedness", 10, stability_boundedness},
      {3, "symbol lower bounds", 30, symbol_bounds},
      {4, "discreteness of the ball spectrum", 300, discreteness},
      {5, "eigenvalue-free wedge", 600, wedge_free},
      {6, "operator cross-validation", 300, operator_cross_validation},
      {7, "limiting absorption", 60, limiting_absorption},
      {8, "interior decay", 5, decay},
      {9, "operator norm estimate", 300, operator_norm},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.limit_s;
    failures += !pass;
    std::printf("%s %d %s: %s; %.2f s (limit %g s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_s);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
