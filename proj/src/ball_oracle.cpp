#include "temax/ball_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "temax/bessel.hpp"
#include "temax/error.hpp"

namespace temax {

namespace {

const cplx I(0.0, 1.0);

bool identical(const MediaQuad& m) { return m.eps == m.eps_hat && m.mu == m.mu_hat; }

template <class F>
void run_parallel(int units, int threads, F&& body) {
  threads = std::max(1, std::min(threads, units));
  if (threads == 1) {
    for (int u = 0; u < units; ++u) body(u);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int u = next++; u < units; u = next++) body(u);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& p : pool) p.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

std::string sector_tag(int n, Polarization p) { return std::to_string(n) + polarization_name(p); }

}  // namespace

const char* polarization_name(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

SectorDeterminant::SectorDeterminant(int n, Polarization pol, const MediaQuad& m) : n_(n), pol_(pol), media_(m) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "spherical harmonic degree must be at least 1");
  if (!m.positive()) throw Error(ErrorCode::invalid_media, "media constants must be positive");
  c1_ = std::sqrt(m.eps * m.mu);
  c2_ = std::sqrt(m.eps_hat * m.mu_hat);
  w1_ = pol == Polarization::TE ? m.mu : m.eps;
  w2_ = pol == Polarization::TE ? m.mu_hat : m.eps_hat;
  dfact_ = odd_double_factorial(n);
}

FnSample SectorDeterminant::sample(cplx omega, int damping) const {
  const auto ua = spherical_u(n_, c1_ * omega);
  const auto ub = spherical_u(n_, c2_ * omega);
  const cplx va = ua[n_ - 1] - static_cast<double>(n_) * ua[n_];
  const cplx vb = ub[n_ - 1] - static_cast<double>(n_) * ub[n_];
  cplx f = ua[n_] * vb / w2_ - ub[n_] * va / w1_;
  // u_n and v_n never vanish together, so this scale stays away from zero at the roots.
  double scale = (std::abs(ua[n_]) + std::abs(va)) * (std::abs(ub[n_]) + std::abs(vb)) * (1.0 / w1_ + 1.0 / w2_);
  if (damping != 0) {
    const cplx g = std::exp(I * static_cast<double>(damping) * (c1_ + c2_) * omega);
    f *= g;
    scale *= std::abs(g);
  }
  const double d2 = dfact_ * dfact_;
  return {d2 * f, d2 * scale};
}

cplx SectorDeterminant::derivative(cplx omega) const {
  const cplx k1 = c1_ * omega, k2 = c2_ * omega;
  const auto ua = spherical_u(n_ + 1, k1);
  const auto ub = spherical_u(n_ + 1, k2);
  const double n = n_;
  const cplx va = ua[n_ - 1] - n * ua[n_], vb = ub[n_ - 1] - n * ub[n_];
  // u_m'(z) = -z u_{m+1}(z)
  const cplx dua = c1_ * (-k1 * ua[n_ + 1]);
  const cplx dub = c2_ * (-k2 * ub[n_ + 1]);
  const cplx dva = c1_ * (-k1 * ua[n_] + n * k1 * ua[n_ + 1]);
  const cplx dvb = c2_ * (-k2 * ub[n_] + n * k2 * ub[n_ + 1]);
  return dfact_ * dfact_ * ((dua * vb + ua[n_] * dvb) / w2_ - (dub * va + ub[n_] * dva) / w1_);
}

Eigen::Matrix2cd SectorDeterminant::matching_matrix(cplx omega) const {
  const auto ua = spherical_u(n_, c1_ * omega);
  const auto ub = spherical_u(n_, c2_ * omega);
  const double n = n_;
  Eigen::Matrix2cd M;
  M(0, 0) = ua[n_];
  M(0, 1) = ub[n_];
  M(1, 0) = (ua[n_ - 1] - n * ua[n_]) / w1_;
  M(1, 1) = (ub[n_ - 1] - n * ub[n_]) / w2_;
  return M;
}

SectorDeterminant build_determinant(int n, Polarization pol, const MediaQuad& m) { return SectorDeterminant(n, pol, m); }

int count_roots(const SectorDeterminant& det, const Contour& contour, int damping) {
  return winding_number([&](cplx z) { return det.sample(z, damping); }, contour);
}

EigenvalueRecord refine_root(const SectorDeterminant& det, cplx seed, const RefineOptions& opt) {
  cplx w = seed;
  if (opt.trace) opt.trace->assign(1, w);
  int polish = -1;  // iterations left once |f| is below tolerance
  double last_step = INFINITY;
  for (int it = 1; it <= opt.max_iter; ++it) {
    const FnSample s = det.sample(w);
    const cplx d = det.derivative(w);
    if (!std::isfinite(std::abs(s.value)) || !std::isfinite(std::abs(d)) || d == 0.0) break;
    if (polish < 0 && std::abs(s.value) <= 1e-10 * s.scale) polish = 3;
    const cplx step = s.value / d;
    const bool stalled = std::abs(step) >= last_step || std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w));
    if (polish >= 0 && (polish == 0 || stalled)) {
      EigenvalueRecord r;
      r.omega = w;
      r.n = det.n();
      r.pol = det.polarization();
      r.iterations = it - 1;
      r.sectors = sector_tag(r.n, r.pol);
      const double rho = 1e-5 * std::max(1.0, std::abs(w));
      try {
        r.multiplicity = std::max(1, count_roots(det, circle(w, rho)));
      } catch (const Error&) {
        r.multiplicity = 1;
      }
      r.residual = eigenfield_residual(det, w, Eigen::Vector2cd::Zero());
      return r;
    }
    if (polish > 0) --polish;
    last_step = std::abs(step);
    w -= step;
    if (opt.trace) opt.trace->push_back(w);
    if (!(std::abs(w - seed) <= opt.max_radius)) break;
  }
  std::ostringstream os;
  os.precision(6);
  os << "Newton iteration did not converge from seed " << seed.real() << "," << seed.imag();
  throw Error(ErrorCode::refine_failure, os.str());
}

double eigenfield_residual(const EigenvalueRecord& rec, const MediaQuad& m, int radial_points) {
  const SectorDeterminant det(rec.n, rec.pol, m);
  return eigenfield_residual(det, rec.omega, Eigen::Vector2cd::Zero(), radial_points);
}

double eigenfield_residual(const SectorDeterminant& det, cplx omega, const Eigen::Vector2cd& coeffs_in,
                           int radial_points) {
  Eigen::Vector2cd c = coeffs_in;
  if (c.norm() == 0.0) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(det.matching_matrix(omega), Eigen::ComputeFullV);
    c = svd.matrixV().col(1);
  }
  const MediaQuad& m = det.media();
  const int n = det.n();
  const double L = n * (n + 1.0);
  const cplx k = I * omega;
  const bool te = det.polarization() == Polarization::TE;
  // (a, b): the coefficient of k in the equation producing the secondary field, and of the closing equation.
  const double a[2] = {te ? m.mu : m.eps, te ? m.mu_hat : m.eps_hat};
  const double b[2] = {te ? m.eps : m.mu, te ? m.eps_hat : m.mu_hat};
  const double cc[2] = {det.c1(), det.c2()};
  const cplx s[2] = {c(0), -c(1)};

  double res = 0.0, prim_scale = 0.0, sec_scale = 0.0;
  cplx prim_at1[2], sec_at1[2];
  for (int med = 0; med < 2; ++med) {
    const cplx kap = cc[med] * omega;
    // Normalised by the largest term on the grid so nodes of the mode do not inflate the ratio.
    double eq_err = 0.0, eq_scale = 0.0;
    for (int i = 1; i <= radial_points; ++i) {
      const double r = static_cast<double>(i) / radial_points;
      const auto u = spherical_u(n + 1, kap * r);
      const cplx v = u[n - 1] - static_cast<double>(n) * u[n];
      const double rn = std::pow(r, n);
      const cplx p = s[med] * rn * u[n];                       // primary tangential amplitude
      const cplx dpsi = s[med] * rn * v;                        // (r p)'
      const cplx d2psi = s[med] * (n * std::pow(r, n - 1) * v + rn * r * kap * kap * (-u[n] + double(n) * u[n + 1]));
      const cplx t1 = d2psi / (k * a[med] * r);
      const cplx t2 = L * p / (k * a[med] * r * r);
      const cplx t3 = k * b[med] * p;
      eq_err = std::max(eq_err, std::abs(t1 - t2 - t3));
      eq_scale = std::max(eq_scale, std::abs(t1) + std::abs(t2) + std::abs(t3));
      const cplx sec = dpsi / (k * a[med] * r);                 // secondary tangential amplitude (up to sign)
      prim_scale = std::max(prim_scale, std::abs(p));
      sec_scale = std::max(sec_scale, std::abs(sec));
      if (i == radial_points) {
        prim_at1[med] = p;
        sec_at1[med] = sec;
      }
    }
    if (eq_scale > 0) res = std::max(res, eq_err / eq_scale);
  }
  // Hatted minus unhatted tangential traces at r = 1.
  if (prim_scale > 0) res = std::max(res, std::abs(prim_at1[1] - prim_at1[0]) / prim_scale);
  if (sec_scale > 0) res = std::max(res, std::abs(sec_at1[1] - sec_at1[0]) / sec_scale);
  return res;
}

WedgeReport wedge_emptiness(const MediaQuad& m, const WedgeSpec& w, int n_max, double R, int threads) {
  w.validate();
  if (!(w.omega0 >= 1.0)) throw Error(ErrorCode::invalid_argument, "wedge scan requires omega0 >= 1");
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  if (identical(m)) throw Error(ErrorCode::degenerate_contrast, "degenerate media: zero contrast");
  WedgeReport rep;
  rep.gamma = w.gamma;
  rep.omega0 = w.omega0;
  rep.R = R;
  rep.n_max = n_max;
  if (R <= w.omega0) return rep;
  const double phi0 = w.min_angle();
  const int units = 2 * n_max;
  std::vector<std::vector<WedgeCell>> per(units);
  run_parallel(units, threads, [&](int u) {
    const int n = u / 2 + 1;
    const Polarization pol = (u % 2 == 0) ? Polarization::TE : Polarization::TM;
    const SectorDeterminant det(n, pol, m);
    for (int q = 0; q < 4; ++q) {
      const double a0 = phi0 + q * M_PI / 2, a1 = M_PI / 2 - phi0 + q * M_PI / 2;
      const int damping = q < 2 ? 1 : -1;
      // Split radially when the contour grazes a zero.
      std::vector<std::pair<double, double>> todo{{w.omega0, R}};
      int guard = 0;
      while (!todo.empty()) {
        auto [r0, r1] = todo.back();
        todo.pop_back();
        WedgeCell cell{n, pol, r0, r1, a0, a1, 0};
        try {
          cell.count = count_roots(det, annular_sector(r0, r1, a0, a1), damping);
          per[u].push_back(cell);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::contour_through_zero || ++guard > 64) throw;
          const double mid = r0 + 0.4871 * (r1 - r0);
          todo.push_back({r0, mid});
          todo.push_back({mid, r1});
        }
      }
    }
  });
  for (auto& v : per)
    for (auto& c : v) {
      rep.total_roots += c.count;
      if (c.count != 0) rep.clean = false;
      rep.cells.push_back(c);
    }
  return rep;
}

WedgeLadder wedge_ladder(const MediaQuad& m, double gamma, int n_max, const std::vector<double>& ladder, double factor,
                         int threads) {
  WedgeLadder out;
  for (double w0 : ladder) {
    const WedgeReport r = wedge_emptiness(m, WedgeSpec{gamma, w0}, n_max, factor * w0, threads);
    out.rungs.push_back(r);
    if (r.clean && std::isnan(out.first_clean_omega0)) out.first_clean_omega0 = w0;
  }
  for (auto it = out.rungs.rbegin(); it != out.rungs.rend() && it->clean; ++it) out.smallest_clean_omega0 = it->omega0;
  return out;
}

namespace {

class CellFinder {
 public:
  explicit CellFinder(const SectorDeterminant& det) : det_(det) {}

  int count(cplx lo, cplx hi) const { return count_roots(det_, rectangle(lo, hi)); }

  void process(cplx lo, cplx hi, int c, int depth) {
    if (c <= 0) return;
    const double wd = hi.real() - lo.real(), ht = hi.imag() - lo.imag();
    const double size = std::max(wd, ht);
    const cplx mid = 0.5 * (lo + hi);
    if (c == 1 || size < 1e-7 || depth > 60) {
      try {
        RefineOptions opt;
        opt.max_radius = 2.0 * size;
        EigenvalueRecord r = refine_root(det_, mid, opt);
        const double tol = 1e-9 * std::max(1.0, std::abs(r.omega));
        const bool inside = r.omega.real() >= lo.real() - tol && r.omega.real() <= hi.real() + tol &&
                            r.omega.imag() >= lo.imag() - tol && r.omega.imag() <= hi.imag() + tol;
        if (inside || size < 1e-7 || depth > 60) {
          if (c > 1) r.multiplicity = c;
          found.push_back(r);
          return;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::refine_failure || size < 1e-7 || depth > 60) throw;
      }
    }
    static const double fractions[] = {0.4871, 0.5237, 0.4419, 0.5583, 0.4102, 0.5966};
    for (double f : fractions) {
      cplx lo2 = lo, hi1 = hi;
      if (wd >= ht) {
        const double x = lo.real() + f * wd;
        hi1 = cplx(x, hi.imag());
        lo2 = cplx(x, lo.imag());
      } else {
        const double y = lo.imag() + f * ht;
        hi1 = cplx(hi.real(), y);
        lo2 = cplx(lo.real(), y);
      }
      int c1, c2;
      try {
        c1 = count(lo, hi1);
        c2 = count(lo2, hi);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::contour_through_zero) throw;
        continue;
      }
      if (c1 + c2 != c) continue;
      process(lo, hi1, c1, depth + 1);
      process(lo2, hi, c2, depth + 1);
      return;
    }
    throw Error(ErrorCode::refine_failure, "could not split a census cell consistently");
  }

  std::vector<EigenvalueRecord> found;

 private:
  const SectorDeterminant& det_;
};

}  // namespace

Census spectrum_census(const MediaQuad& m, int n_max, double R, int threads) {
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  if (!(R > 0)) throw Error(ErrorCode::invalid_argument, "census radius must be positive");
  if (!m.positive()) throw Error(ErrorCode::invalid_media, "media constants must be positive");
  if (identical(m)) throw Error(ErrorCode::degenerate_contrast, "degenerate media: zero contrast");
  const int units = 2 * n_max;
  std::vector<std::vector<EigenvalueRecord>> per(units);
  run_parallel(units, threads, [&](int u) {
    const int n = u / 2 + 1;
    const Polarization pol = (u % 2 == 0) ? Polarization::TE : Polarization::TM;
    const SectorDeterminant det(n, pol, m);
    CellFinder finder(det);
    static const double offsets[][4] = {{0.0137, 0.0291, 0.0219, 0.0173}, {0.0411, 0.0067, 0.0093, 0.0359}};
    for (const auto& o : offsets) {
      const cplx lo(-R - o[0], -R - o[1]), hi(R + o[2], R + o[3]);
      int c;
      try {
        c = finder.count(lo, hi);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::contour_through_zero) throw;
        continue;
      }
      finder.process(lo, hi, c, 0);
      break;
    }
    for (auto& r : finder.found)
      if (std::abs(r.omega) <= R) per[u].push_back(r);
  });

  std::vector<EigenvalueRecord> all;
  for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
  auto order = [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
    const double ma = std::abs(a.omega), mb = std::abs(b.omega);
    if (ma != mb) return ma < mb;
    const double pa = std::arg(a.omega), pb = std::arg(b.omega);
    if (pa != pb) return pa < pb;
    if (a.n != b.n) return a.n < b.n;
    return a.pol < b.pol;
  };
  std::sort(all.begin(), all.end(), order);

  Census out;
  out.R = R;
  out.n_max = n_max;
  for (const auto& r : all) {
    bool merged = false;
    for (auto& k : out.roots) {
      if (std::abs(k.omega - r.omega) < 1e-6) {
        k.multiplicity += r.multiplicity;
        k.sectors += "+" + r.sectors;
        k.residual = std::max(k.residual, r.residual);
        merged = true;
        break;
      }
    }
    if (!merged) out.roots.push_back(r);
  }
  std::sort(out.roots.begin(), out.roots.end(), order);
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    out.max_residual = std::max(out.max_residual, out.roots[i].residual);
    for (std::size_t j = i + 1; j < out.roots.size(); ++j)
      out.min_gap = std::min(out.min_gap, std::abs(out.roots[i].omega - out.roots[j].omega));
  }
  return out;
}

int counting_function(const Census& c, double r) {
  int n = 0;
  for (const auto& rec : c.roots)
    if (std::abs(rec.omega) <= r) ++n;
  return n;
}

}  // namespace temax
