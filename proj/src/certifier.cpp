#include "temax/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <tuple>

#include "temax/error.hpp"
#include "temax/halfspace.hpp"

namespace temax {

namespace {

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = std::exp(a + (b - a) * i / (n - 1));
  v.back() = hi;
  return v;
}

struct Best {
  double ratio = INFINITY;
  SymbolArgmin at;
  std::tuple<int, int, int> key() const { return {at.k_index, at.angle_index, at.xi_index}; }
  void offer(double r, const SymbolArgmin& p) {
    const std::tuple<int, int, int> pk{p.k_index, p.angle_index, p.xi_index};
    if (r < ratio || (r == ratio && pk < key())) {
      ratio = r;
      at = p;
    }
  }
};

}  // namespace

void ScanGrid::validate() const {
  if (xi_count < 1 || angle_count < 1 || k_count < 1) throw Error(ErrorCode::invalid_argument, "scan grid is empty");
  if (!(xi_min > 0 && xi_max >= xi_min)) throw Error(ErrorCode::invalid_argument, "bad |xi| range");
  if (!(k_min >= 1.0 && k_max >= k_min)) throw Error(ErrorCode::invalid_argument, "|k| range must satisfy 1 <= k_min <= k_max");
}

std::vector<double> ScanGrid::xi_values() const {
  std::vector<double> v{0.0};
  if (xi_count > 1) {
    auto rest = logspace(xi_min, xi_max, xi_count - 1);
    v.insert(v.end(), rest.begin(), rest.end());
  }
  return v;
}

std::vector<double> ScanGrid::k_values() const { return logspace(k_min, k_max, k_count); }

std::vector<double> ScanGrid::angles(double gamma) const {
  const double phi0 = 0.5 * std::asin(std::min(gamma, 1.0));
  const double lo = phi0, hi = M_PI / 2 - phi0;
  const int first = (angle_count + 1) / 2, second = angle_count - first;
  std::vector<double> v;
  auto fill = [&](int n, double shift) {
    for (int i = 0; i < n; ++i) v.push_back(shift + (n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1)));
  };
  fill(first, 0.0);
  fill(second, M_PI / 2);
  return v;
}

SymbolScanReport scan_lower_bounds(const MediaQuad& m, const WedgeSpec& w, const ScanGrid& grid) {
  m.validate();
  w.validate();
  grid.validate();
  const auto xs = grid.xi_values();
  const auto ks = grid.k_values();
  const auto th = grid.angles(w.gamma);

  const int nthreads = std::max(1, std::min<int>(grid.threads, static_cast<int>(ks.size())));
  std::vector<Best> bestA(nthreads), bestB(nthreads);
  auto work = [&](int t) {
    for (std::size_t ik = t; ik < ks.size(); ik += nthreads) {
      for (std::size_t ia = 0; ia < th.size(); ++ia) {
        const Wavenumber k{std::polar(ks[ik], th[ia]), w.gamma};
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
          const TangentialMode xi{xs[ix], 0.0};
          const double norm = xs[ix] * xs[ix] + ks[ik] * ks[ik];
          const SymbolArgmin at{xs[ix], k.k, static_cast<int>(ix), static_cast<int>(ia), static_cast<int>(ik)};
          bestA[t].offer(std::abs(denom_A(xi, k, m)) / norm, at);
          bestB[t].offer(std::abs(denom_B(xi, k, m)) / norm, at);
        }
      }
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& p : pool) p.join();
  }
  Best A, B;
  for (int t = 0; t < nthreads; ++t) {
    A.offer(bestA[t].ratio, bestA[t].at);
    B.offer(bestB[t].ratio, bestB[t].at);
  }
  SymbolScanReport r;
  r.min_ratio_A = A.ratio;
  r.min_ratio_B = B.ratio;
  r.argmin_A = A.at;
  r.argmin_B = B.at;
  r.grid = grid;
  r.gamma = w.gamma;
  r.points = static_cast<long>(xs.size() * ks.size() * th.size());
  return r;
}

Certificate certify(const MediaQuad& m, const WedgeSpec& w, const ScanGrid& grid, double threshold) {
  Certificate c;
  c.threshold = threshold;
  c.admissibility = check_admissible(m);
  c.scan = scan_lower_bounds(m, w, grid);
  c.certified = c.admissibility.ok && c.scan.min_ratio_A >= threshold && c.scan.min_ratio_B >= threshold;
  return c;
}

}  // namespace temax
