#include "temax/halfspace.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"
#include "temax/error.hpp"

namespace temax {

namespace {

const cplx I(0.0, 1.0);

cvec3 cross(const cvec3& a, const cvec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm3(const cvec3& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }
double norm2v(const cvec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

cvec3 sub(const cvec3& a, const cvec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
cvec3 scale(cplx s, const cvec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

void require_k(const Wavenumber& k) {
  if (!(k.abs() >= 1.0)) throw Error(ErrorCode::invalid_argument, "|k| must be at least 1");
  if (!k.in_wedge()) throw Error(ErrorCode::branch_degeneracy, "k lies outside the wedge |Im k^2| >= gamma |k|^2");
}

/// Amplitude at x₃ = 0 of (E, H) for tangential amplitude a in a medium with wavenumber κ = k or αk.
void boundary_fields(const cvec2& a, const TangentialMode& xi, cplx lam, cplx kappa, double mu, cvec3& E, cvec3& H) {
  const cplx xa = xi.xi1 * a[0] + xi.xi2 * a[1];
  E = {a[0], a[1], I * xa / lam};
  const cvec3 d{I * xi.xi1, I * xi.xi2, -lam};
  const cvec3 c = cross(d, E);
  H = scale(1.0 / (kappa * mu), c);
}

}  // namespace

double TraceDatum::norm() const { return std::sqrt(std::norm(fe[0]) + std::norm(fe[1]) + std::norm(fm[0]) + std::norm(fm[1])); }

cplx decaying_sqrt(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0)
    throw Error(ErrorCode::branch_degeneracy, "square root argument on the closed negative real axis");
  cplx w = std::sqrt(z);
  if (w.real() < 0.0) w = -w;
  return w;
}

cvec2 trace_h(const cvec2& fe) { return {-fe[1], fe[0]}; }

cplx trace_g(const cvec2& fm, const TangentialMode& xi, const Wavenumber& k) {
  return -(xi.xi1 * fm[0] + xi.xi2 * fm[1]) / k.k;
}

cplx denom_A(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m) {
  const double a2 = m.alpha2;
  const cplx k2 = k.k * k.k;
  return (a2 * m.eps_hat * m.eps_hat - m.eps * m.eps) * xi.norm2() +
         a2 * k2 * m.eps * m.eps_hat * m.mu * m.mu_hat * (m.eps_hat / m.mu_hat - m.eps / m.mu);
}

cplx denom_B(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m) {
  const double a2 = m.alpha2;
  const cplx k2 = k.k * k.k;
  return (m.mu * m.mu - a2 * m.mu_hat * m.mu_hat) * xi.norm2() +
         a2 * k2 * m.eps * m.eps_hat * m.mu * m.mu_hat * (m.mu / m.eps - m.mu_hat / m.eps_hat);
}

ModeAmplitudes make_amplitudes(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m,
                               const TraceDatum& trace, const cvec2& a, const cvec2& a_hat) {
  ModeAmplitudes amp;
  amp.xi = xi;
  amp.k = k;
  amp.media = m;
  amp.trace = trace;
  amp.a = a;
  amp.a_hat = a_hat;
  const cplx k2 = k.k * k.k;
  amp.lambda = decaying_sqrt(xi.norm2() + k2 * m.eps * m.mu);
  amp.lambda_hat = decaying_sqrt(xi.norm2() + static_cast<double>(m.alpha2) * k2 * m.eps_hat * m.mu_hat);
  return amp;
}

ModeAmplitudes solve_amplitudes(const TangentialMode& xi, const Wavenumber& k, const MediaQuad& m,
                                const TraceDatum& trace) {
  m.validate();
  require_k(k);
  const double scale_ref = 1e-12 * (xi.norm2() + std::norm(k.k));
  const cplx dA = denom_A(xi, k, m);
  const cplx dB = denom_B(xi, k, m);
  if (std::abs(dA) < scale_ref || std::abs(dB) < scale_ref)
    throw Error(ErrorCode::degenerate_symbol, "symbol denominator vanishes: contrast condition violated");

  ModeAmplitudes amp = make_amplitudes(xi, k, m, trace, {}, {});
  const cplx lam = amp.lambda, lamh = amp.lambda_hat;
  const cplx alpha = m.alpha();
  const cvec2 h = trace_h(trace.fe);
  const cplx g = trace_g(trace.fm, xi, k);
  const cplx xh = xi.xi1 * h[0] + xi.xi2 * h[1];

  // Normal-flux matching fixes ξ·â.
  const cplx S = lam * lamh * (m.eps * lamh + alpha * m.eps_hat * lam) / dA * (g - m.eps * xh / lam);
  // Tangential H matching, with 1/P rationalised through denom_B.
  const cplx Q = S / (alpha * m.mu_hat * lamh) - (S - xh) / (m.mu * lam);
  const cplx invP = alpha * m.mu * m.mu_hat * (m.mu * lamh + alpha * m.mu_hat * lam) / dB;
  const double xv[2] = {xi.xi1, xi.xi2};
  for (int j = 0; j < 2; ++j) {
    amp.a_hat[j] = (xv[j] * Q - lam * h[j] / m.mu - k.k * trace.fm[j]) * invP;
    amp.a[j] = amp.a_hat[j] - h[j];
  }
  return amp;
}

FieldSample evaluate_fields(const ModeAmplitudes& amp, double x3) {
  FieldSample s;
  s.x3 = x3;
  const cplx alpha = amp.media.alpha();
  cvec3 E0, H0, Eh0, Hh0;
  boundary_fields(amp.a, amp.xi, amp.lambda, amp.k.k, amp.media.mu, E0, H0);
  boundary_fields(amp.a_hat, amp.xi, amp.lambda_hat, alpha * amp.k.k, amp.media.mu_hat, Eh0, Hh0);
  const cplx d = std::exp(-amp.lambda * x3);
  const cplx dh = std::exp(-amp.lambda_hat * x3);
  s.E = scale(d, E0);
  s.H = scale(d, H0);
  s.E_hat = scale(dh, Eh0);
  s.H_hat = scale(dh, Hh0);
  return s;
}

CauchyResidual cauchy_residual(const ModeAmplitudes& amp, const std::vector<double>& x3_grid) {
  if (x3_grid.size() < 8) throw Error(ErrorCode::invalid_argument, "residual grid needs at least 8 points");
  CauchyResidual r;
  const cplx alpha = amp.media.alpha();
  const cvec3 d{I * amp.xi.xi1, I * amp.xi.xi2, -amp.lambda};
  const cvec3 dh{I * amp.xi.xi1, I * amp.xi.xi2, -amp.lambda_hat};

  auto rel = [](const cvec3& a, const cvec3& b) {
    const double den = norm3(a) + norm3(b);
    return den > 0.0 ? norm3(sub(a, b)) / den : 0.0;
  };
  for (double x : x3_grid) {
    const FieldSample s = evaluate_fields(amp, x);
    // curl E = κμH and curl H = -κεE in each medium.
    r.maxwell_res = std::max(r.maxwell_res, rel(cross(d, s.E), scale(amp.k.k * amp.media.mu, s.H)));
    r.maxwell_res = std::max(r.maxwell_res, rel(cross(d, s.H), scale(-amp.k.k * amp.media.eps, s.E)));
    r.maxwell_res =
        std::max(r.maxwell_res, rel(cross(dh, s.E_hat), scale(alpha * amp.k.k * amp.media.mu_hat, s.H_hat)));
    r.maxwell_res =
        std::max(r.maxwell_res, rel(cross(dh, s.H_hat), scale(-alpha * amp.k.k * amp.media.eps_hat, s.E_hat)));
  }

  const FieldSample s0 = evaluate_fields(amp, 0.0);
  const cvec3 e3{0.0, 0.0, 1.0};
  const cvec3 je = cross(sub(s0.E_hat, s0.E), e3);
  const cvec3 jm = cross(sub(s0.H_hat, s0.H), e3);
  const cvec2 je_t{je[0], je[1]}, jm_t{jm[0], jm[1]};
  const cvec2 de{je_t[0] - amp.trace.fe[0], je_t[1] - amp.trace.fe[1]};
  const cvec2 dm{jm_t[0] - amp.trace.fm[0], jm_t[1] - amp.trace.fm[1]};
  const double ref = norm2v(amp.trace.fe) + norm2v(amp.trace.fm) + norm2v(je_t) + norm2v(jm_t) +
                     norm3(cross(s0.E, e3)) + norm3(cross(s0.H, e3));
  r.bc_res = ref > 0.0 ? (norm2v(de) + norm2v(dm)) / ref : 0.0;
  return r;
}

double stability_ratio(const ModeAmplitudes& amp) {
  const TraceDatum& t = amp.trace;
  const double tn = t.norm();
  if (!(tn > 0.0)) throw Error(ErrorCode::undefined_ratio, "stability ratio undefined for zero trace data");
  const FieldSample s = evaluate_fields(amp, 0.0);
  const double xi2 = amp.xi.norm2();
  // ∫₀^∞ |c e^{-λx}|² dx = |c|²/(2 Re λ); the H¹ weight adds |ξ|² + |λ|².
  auto l2sq = [](const cvec3& c, cplx lam) { return (std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2])) / (2.0 * lam.real()); };
  const double l2 = l2sq(s.E, amp.lambda) + l2sq(s.H, amp.lambda);
  const double l2h = l2sq(s.E_hat, amp.lambda_hat) + l2sq(s.H_hat, amp.lambda_hat);
  const double h1 = (1.0 + xi2 + std::norm(amp.lambda)) * l2 + (1.0 + xi2 + std::norm(amp.lambda_hat)) * l2h;
  const double kabs = amp.k.abs();
  const double num = std::sqrt(h1) + kabs * std::sqrt(l2 + l2h);

  const double w_half = std::pow(1.0 + xi2, 0.25);
  const cplx div_e = I * (amp.xi.xi1 * t.fe[0] + amp.xi.xi2 * t.fe[1]);
  const cplx div_m = I * (amp.xi.xi1 * t.fm[0] + amp.xi.xi2 * t.fm[1]);
  const double den = std::sqrt(kabs) * tn + w_half * tn + w_half * std::sqrt(std::norm(div_e) + std::norm(div_m)) / kabs;
  return num / den;
}

PecProfile pec_source_solve(const TangentialMode& xi, const Wavenumber& k, double eps, double mu,
                            const SourceProfile& jm, double support_end, const std::vector<double>& x3_grid) {
  if (!(eps > 0 && mu > 0)) throw Error(ErrorCode::invalid_media, "media constants must be positive");
  require_k(k);
  if (!(support_end > 0.0)) throw Error(ErrorCode::invalid_argument, "source support must have positive length");
  const cplx kk = k.k;
  const cplx lam = decaying_sqrt(xi.norm2() + kk * kk * eps * mu);
  const double xv[2] = {xi.xi1, xi.xi2};

  static const detail::GaussLegendre gl(16);
  const double panel = std::min(0.5 / std::abs(lam), support_end / 4.0);

  PecProfile out;
  out.x3 = x3_grid;
  out.E.resize(x3_grid.size());
  out.H.resize(x3_grid.size());

  for (std::size_t p = 0; p < x3_grid.size(); ++p) {
    const double x = x3_grid[p];
    // Accumulators: I_D[J_t], ∂x I_D[J_t], I_Dy[J3], ∫∂x∂y G_D J3, I_N[J3], I_Ny[J_t].
    cvec2 iD{}, iDx{};
    cplx iDy = 0.0, iDxy = 0.0, iN = 0.0;
    cvec2 iNy{};
    auto integrate = [&](double lo, double hi) {
      if (hi <= lo) return;
      const int np = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
      const double hpan = (hi - lo) / np;
      for (int q = 0; q < np; ++q) {
        const double a = lo + q * hpan;
        for (std::size_t g = 0; g < gl.x.size(); ++g) {
          const double y = a + 0.5 * hpan * (gl.x[g] + 1.0);
          const double wgt = 0.5 * hpan * gl.w[g];
          const cvec3 J = jm(y);
          const double s = (x > y) ? 1.0 : -1.0;
          const cplx e1 = std::exp(-lam * std::abs(x - y));
          const cplx e2 = std::exp(-lam * (x + y));
          const cplx gD = (e1 - e2) / (2.0 * lam);
          const cplx gN = (e1 + e2) / (2.0 * lam);
          const cplx gDx = (-s * e1 + e2) * 0.5;
          const cplx gDy = (s * e1 + e2) * 0.5;
          const cplx gDxy = -lam * (e1 + e2) * 0.5;
          const cplx gNy = (s * e1 - e2) * 0.5;
          for (int j = 0; j < 2; ++j) {
            iD[j] += wgt * gD * J[j];
            iDx[j] += wgt * gDx * J[j];
            iNy[j] += wgt * gNy * J[j];
          }
          iDy += wgt * gDy * J[2];
          iDxy += wgt * gDxy * J[2];
          iN += wgt * gN * J[2];
        }
      }
    };
    integrate(0.0, std::min(x, support_end));
    integrate(std::max(0.0, x), support_end);

    const cvec3 Jx = (x <= support_end) ? jm(x) : cvec3{};
    const cplx xiD = xv[0] * iD[0] + xv[1] * iD[1];
    const cplx xiDx = xv[0] * iDx[0] + xv[1] * iDx[1];
    const cplx xiNy = xv[0] * iNy[0] + xv[1] * iNy[1];
    const cplx dIDy = iDxy + Jx[2];
    cvec3 E, Ex;
    for (int j = 0; j < 2; ++j) {
      E[j] = kk * mu * iD[j] + xv[j] * xiD / (kk * eps) + I * xv[j] * iDy / (kk * eps);
      Ex[j] = kk * mu * iDx[j] + xv[j] * xiDx / (kk * eps) + I * xv[j] * dIDy / (kk * eps);
    }
    E[2] = (-xi.norm2() * iN + Jx[2] + I * xiNy) / (kk * eps);
    // curl E with ∂₁,∂₂ → iξ and ∂₃ taken from the differentiated kernels.
    const cvec3 curl{I * xv[1] * E[2] - Ex[1], Ex[0] - I * xv[0] * E[2], I * xv[0] * E[1] - I * xv[1] * E[0]};
    out.E[p] = E;
    out.H[p] = scale(1.0 / (kk * mu), curl);
  }
  return out;
}

double pec_residual(const PecProfile& p, const TangentialMode& xi, const Wavenumber& k, double eps, double mu,
                    const SourceProfile& jm) {
  (void)mu;
  const std::size_t n = p.x3.size();
  if (n < 8) throw Error(ErrorCode::invalid_argument, "residual grid needs at least 8 points");
  const double h = p.x3[1] - p.x3[0];
  static const double c6[3] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  double jmax = 0.0;
  for (double x : p.x3) jmax = std::max(jmax, norm3(jm(x)));
  if (jmax == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 3; i + 3 < n; ++i) {
    cvec3 dH{};
    for (int c = 0; c < 3; ++c)
      for (int m = 1; m <= 3; ++m) dH[c] += c6[m - 1] * (p.H[i + m][c] - p.H[i - m][c]) / h;
    const cvec3& H = p.H[i];
    const cvec3 curl{I * xi.xi2 * H[2] - dH[1], dH[0] - I * xi.xi1 * H[2], I * xi.xi1 * H[1] - I * xi.xi2 * H[0]};
    const cvec3 J = jm(p.x3[i]);
    cvec3 res;
    for (int c = 0; c < 3; ++c) res[c] = curl[c] + k.k * eps * p.E[i][c] - J[c];
    worst = std::max(worst, norm3(res) / jmax);
  }
  return worst;
}

double profile_l2(const PecProfile& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < p.x3.size(); ++i) {
    const double h = p.x3[i + 1] - p.x3[i];
    const double f0 = norm3(p.E[i]) * norm3(p.E[i]) + norm3(p.H[i]) * norm3(p.H[i]);
    const double f1 = norm3(p.E[i + 1]) * norm3(p.E[i + 1]) + norm3(p.H[i + 1]) * norm3(p.H[i + 1]);
    acc += 0.5 * h * (f0 + f1);
  }
  return std::sqrt(acc);
}

double source_l2(const SourceProfile& jm, const std::vector<double>& x3_grid) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x3_grid.size(); ++i) {
    const double h = x3_grid[i + 1] - x3_grid[i];
    const double f0 = norm3(jm(x3_grid[i]));
    const double f1 = norm3(jm(x3_grid[i + 1]));
    acc += 0.5 * h * (f0 * f0 + f1 * f1);
  }
  return std::sqrt(acc);
}

}  // namespace temax
