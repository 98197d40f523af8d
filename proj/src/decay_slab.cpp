#include "temax/decay_slab.hpp"

#include <cmath>

#include "temax/error.hpp"

namespace temax {

namespace {

const cplx I(0.0, 1.0);

SlabMode deriv(const SlabMode& m, cplx lambda) { return {lambda * m.c1, -lambda * m.c2}; }
SlabMode scale(const SlabMode& m, cplx a) { return {a * m.c1, a * m.c2}; }
SlabMode add(const SlabMode& a, const SlabMode& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }

/// ∫_a^b e^{p x + t} conj(e^{p' x + t'}) dx with all exponents kept bounded.
cplx cross_integral(cplx p, cplx t, cplx pp, cplx tp, double a, double b) {
  const cplx q = p + std::conj(pp);
  const cplx pre = std::exp(t + std::conj(tp) + q * a);
  const cplx len = q * (b - a);
  if (std::abs(len) < 1e-8) return pre * (b - a) * (1.0 + 0.5 * len);
  return pre * (std::exp(len) - 1.0) / q;
}

double mode_energy(const SlabMode& m, cplx lambda, double a, double b) {
  // φ₁ = e^{λx - λ}, φ₂ = e^{-λx}
  const cplx p[2] = {lambda, -lambda}, t[2] = {-lambda, 0.0};
  const cplx c[2] = {m.c1, m.c2};
  cplx acc = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) acc += c[j] * std::conj(c[l]) * cross_integral(p[j], t[j], p[l], t[l], a, b);
  return acc.real();
}

}  // namespace

void SlabProblem::validate() const {
  if (!(eps > 0 && mu > 0)) throw Error(ErrorCode::invalid_media, "slab media must be positive");
  if (!(s > 0 && s < 0.5)) throw Error(ErrorCode::invalid_argument, "collar width s must lie in (0, 1/2)");
  if (!(k.abs() >= 1.0)) throw Error(ErrorCode::invalid_argument, "|k| must be at least 1");
  if (enforce_wedge && !k.in_wedge()) throw Error(ErrorCode::branch_degeneracy, "k lies outside the wedge");
}

cplx SlabMode::at(double x, cplx lambda) const { return c1 * std::exp(lambda * (x - 1.0)) + c2 * std::exp(-lambda * x); }

cvec3 SlabProfile::E_at(double x) const { return {E[0].at(x, lambda), E[1].at(x, lambda), E[2].at(x, lambda)}; }
cvec3 SlabProfile::H_at(double x) const { return {H[0].at(x, lambda), H[1].at(x, lambda), H[2].at(x, lambda)}; }

double SlabProfile::energy(double a, double b) const {
  double e = 0.0;
  for (int c = 0; c < 3; ++c) e += mode_energy(E[c], lambda, a, b) + mode_energy(H[c], lambda, a, b);
  return e;
}

SlabProfile slab_solve(const SlabProblem& p) {
  p.validate();
  const cplx z = p.xi.norm2() + p.k.k * p.k.k * p.eps * p.mu;
  SlabProfile prof;
  if (p.enforce_wedge) {
    prof.lambda = decaying_sqrt(z);
  } else {
    prof.lambda = std::sqrt(z);
    if (std::abs(prof.lambda) < 1e-12) throw Error(ErrorCode::branch_degeneracy, "slab exponent vanishes");
  }
  const cplx lam = prof.lambda, el = std::exp(-lam), d = 1.0 - el * el;
  if (std::abs(d) < 1e-12) throw Error(ErrorCode::degenerate_symbol, "slab is resonant at this k");
  // E_t = [e0 sinh(λ(1-x)) + e1 sinh(λx)] / sinh λ
  for (int c = 0; c < 2; ++c) prof.E[c] = {(p.e1[c] - el * p.e0[c]) / d, (p.e0[c] - el * p.e1[c]) / d};
  // iξ·E_t + E₃' = 0
  const cplx ix1 = I * p.xi.xi1, ix2 = I * p.xi.xi2;
  prof.E[2] = {-(ix1 * prof.E[0].c1 + ix2 * prof.E[1].c1) / lam, (ix1 * prof.E[0].c2 + ix2 * prof.E[1].c2) / lam};
  // H = curl E / (kμ)
  const cplx f = 1.0 / (p.k.k * p.mu);
  prof.H[0] = scale(add(scale(prof.E[2], ix2), scale(deriv(prof.E[1], lam), -1.0)), f);
  prof.H[1] = scale(add(deriv(prof.E[0], lam), scale(prof.E[2], -ix1)), f);
  prof.H[2] = scale(add(scale(prof.E[1], ix1), scale(prof.E[0], -ix2)), f);
  return prof;
}

double interior_collar_ratio(const SlabProfile& prof, double s) {
  const double inner = prof.energy(s, 1.0 - s);
  const double collar = prof.energy(0.0, s) + prof.energy(1.0 - s, 1.0);
  if (!(collar > 0)) throw Error(ErrorCode::undefined_ratio, "collar energy vanishes");
  return std::sqrt(inner / collar);
}

DecayFit fit_decay(const SlabProblem& p, const std::vector<double>& k_abs, double min_c2) {
  if (k_abs.size() < 3) throw Error(ErrorCode::invalid_argument, "decay fit needs at least three |k| values");
  DecayFit fit;
  fit.k_abs = k_abs;
  fit.s = p.s;
  const double arg = std::arg(p.k.k);
  std::vector<double> y;
  for (double ka : k_abs) {
    SlabProblem q = p;
    q.k.k = std::polar(ka, arg);
    fit.ratios.push_back(interior_collar_ratio(slab_solve(q), p.s));
    y.push_back(std::log(fit.ratios.back()));
  }
  const double n = static_cast<double>(k_abs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k_abs.size(); ++i) {
    sx += k_abs[i], sy += y[i], sxx += k_abs[i] * k_abs[i], sxy += k_abs[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  fit.c2 = -slope;
  fit.c1 = std::exp(icept);
  fit.residual = 0.0;
  for (std::size_t i = 0; i < k_abs.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(std::expm1(icept + slope * k_abs[i] - y[i])));
  fit.violation = !(fit.c2 > min_c2);
  return fit;
}

}  // namespace temax
