#include "temax/radial_operator.hpp"

#include <algorithm>
#include <cmath>

#include "temax/error.hpp"

namespace temax {

namespace {

const cplx I(0.0, 1.0);

using Field = RadialMedia::Field;

struct Coeffs {
  Eigen::VectorXd a, b, ah, bh;  // (a, b) = (μ, ε) for TE and (ε, μ) for TM
  cplx kk, kh;                   // effective wavenumbers in the two media
};

Coeffs coefficients(const SectorSystem& sys, const ChebGrid& g) {
  const bool te = sys.pol == Polarization::TE;
  const Field fa = te ? Field::mu : Field::eps, fb = te ? Field::eps : Field::mu;
  const Field fah = te ? Field::mu_hat : Field::eps_hat, fbh = te ? Field::eps_hat : Field::mu_hat;
  Coeffs c;
  c.a.resize(g.N + 1), c.b.resize(g.N + 1), c.ah.resize(g.N + 1), c.bh.resize(g.N + 1);
  for (int i = 0; i <= g.N; ++i) {
    c.a(i) = sys.media.value(fa, g.r(i));
    c.b(i) = sys.media.value(fb, g.r(i));
    c.ah(i) = sys.media.value(fah, g.r(i));
    c.bh(i) = sys.media.value(fbh, g.r(i));
  }
  const cplx k2 = sys.k.k * sys.k.k;
  const double a_sign = k2.imag() > 0 ? 1.0 : (k2.imag() < 0 ? -1.0 : 0.0);
  const cplx kd = (1.0 - I * a_sign * sys.delta) * sys.k.k;
  // The TM sector is the TE sector under (E, H, ε, μ, k) → (H, E, μ, ε, -k).
  c.kk = te ? kd : -kd;
  c.kh = static_cast<double>(sys.hat_sign) * c.kk;
  return c;
}

/// Collocation matrix of -(q'/a)' + (L/(a r²) + κ² b) q with the boundary rows.
Eigen::MatrixXcd system_matrix(const SectorSystem& sys, const ChebGrid& g, const Coeffs& c) {
  const int M = g.N + 1;
  const double L = sys.n * (sys.n + 1.0);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
  auto block = [&](int off, const Eigen::VectorXd& a, const Eigen::VectorXd& b, cplx kap) {
    const Eigen::MatrixXd op = -g.D * a.cwiseInverse().asDiagonal() * g.D;
    for (int i = 1; i < g.N; ++i) {
      for (int j = 0; j < M; ++j) A(off + i, off + j) = op(i, j);
      A(off + i, off + i) += L / (a(i) * g.r(i) * g.r(i)) + kap * kap * b(i);
    }
    A(off, off) = 1.0;  // regularity at the centre
  };
  block(0, c.a, c.b, c.kk);
  block(M, c.ah, c.bh, c.kh);
  // q(1) = q̂(1) and q'(1)/a = ± q̂'(1)/â: tangential traces of both fields.
  A(g.N, g.N) = 1.0;
  A(g.N, M + g.N) = -1.0;
  for (int j = 0; j < M; ++j) {
    A(M + g.N, j) = g.D(g.N, j) / c.a(g.N);
    A(M + g.N, M + j) = -static_cast<double>(sys.hat_sign) * g.D(g.N, j) / c.ah(g.N);
  }
  return A;
}

/// Right-hand side map from stacked nodal sources [s; w; ŝ; ŵ].
Eigen::MatrixXcd source_matrix(const ChebGrid& g, const Coeffs& c) {
  const int M = g.N + 1;
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2 * M, 4 * M);
  for (int i = 1; i < g.N; ++i) {
    B(i, i) = c.kk * g.r(i) * c.b(i);
    B(i, M + i) = -c.kk * c.kk * g.r(i) * c.b(i);
    B(M + i, 2 * M + i) = c.kh * g.r(i) * c.bh(i);
    B(M + i, 3 * M + i) = -c.kh * c.kh * g.r(i) * c.bh(i);
  }
  return B;
}

/// Output map: fields = Out·[q; q̂] + Pass·source.
void output_maps(const ChebGrid& g, const Coeffs& c, Eigen::MatrixXcd& out, Eigen::MatrixXcd& pass) {
  const int M = g.N + 1;
  out = Eigen::MatrixXcd::Zero(4 * M, 2 * M);
  pass = Eigen::MatrixXcd::Zero(4 * M, 4 * M);
  for (int i = 1; i <= g.N; ++i) {
    const double r = g.r(i);
    out(i, i) = 1.0 / r;
    pass(i, M + i) = 1.0;
    out(M + i, i) = 1.0 / (r * c.kk);
    out(2 * M + i, M + i) = 1.0 / r;
    pass(2 * M + i, 3 * M + i) = 1.0;
    out(3 * M + i, M + i) = 1.0 / (r * c.kh);
  }
}

/// H inner product on stacked nodal profiles.
Eigen::MatrixXd gram_nodal(const SectorSystem& sys, const ChebGrid& g, const Coeffs& c) {
  const int M = g.N + 1;
  const double L = sys.n * (sys.n + 1.0);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4 * M, 4 * M);
  const Eigen::MatrixXd DR = g.D * g.r.asDiagonal();
  auto blocks = [&](int off, const Eigen::VectorXd& a) {
    for (int i = 0; i < M; ++i) G(off + i, off + i) = g.w(i) * L * g.r(i) * g.r(i);
    const Eigen::VectorXd wa = g.w.cwiseQuotient(a.cwiseProduct(a));
    // ∫ (L² |w|² + L |(r w)'|²) / a² dr
    G.block(off + M, off + M, M, M) = L * DR.transpose() * wa.asDiagonal() * DR;
    G.block(off + M, off + M, M, M).diagonal() += L * L * wa;
  };
  blocks(0, c.a);
  blocks(2 * M, c.ah);
  return G;
}

void require_contrast(const MediaQuad& m) {
  const double tol = 1e-8;
  if (std::abs(m.eps - m.eps_hat) <= tol * m.eps && std::abs(m.mu - m.mu_hat) <= tol * m.mu)
    throw Error(ErrorCode::degenerate_contrast, "degenerate media: zero contrast");
}

}  // namespace

void SectorSystem::validate() const {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sector degree must be at least 1");
  if (grid < 8) throw Error(ErrorCode::invalid_argument, "radial grid must have N >= 8");
  if (delta < 0) throw Error(ErrorCode::invalid_argument, "delta must be nonnegative");
  if (hat_sign != 1 && hat_sign != -1) throw Error(ErrorCode::invalid_argument, "hat_sign must be +1 or -1");
  if (!(k.abs() >= 1.0)) throw Error(ErrorCode::invalid_argument, "|k| must be at least 1");
  if (!k.in_wedge()) throw Error(ErrorCode::branch_degeneracy, "k lies outside the wedge");
  if (media.grid_size() < 2) throw Error(ErrorCode::invalid_media, "radial media not initialised");
  require_contrast(media.boundary());
}

SectorField SectorField::zero(int nodes) {
  SectorField f;
  f.s = f.w = f.s_hat = f.w_hat = Eigen::VectorXcd::Zero(nodes);
  return f;
}

Eigen::VectorXcd SectorField::stacked() const {
  const Eigen::Index M = s.size();
  Eigen::VectorXcd x(4 * M);
  x << s, w, s_hat, w_hat;
  return x;
}

SectorField SectorField::unstack(const Eigen::VectorXcd& x) {
  const Eigen::Index M = x.size() / 4;
  SectorField f;
  f.s = x.segment(0, M);
  f.w = x.segment(M, M);
  f.s_hat = x.segment(2 * M, M);
  f.w_hat = x.segment(3 * M, M);
  return f;
}

LinearSystem assemble_sector(const SectorSystem& sys, const SectorField& source) {
  sys.validate();
  const ChebGrid g(sys.grid);
  if (source.s.size() != g.N + 1) throw Error(ErrorCode::invalid_argument, "source size does not match the grid");
  const Coeffs c = coefficients(sys, g);
  LinearSystem ls;
  ls.A = system_matrix(sys, g, c);
  ls.b = source_matrix(g, c) * source.stacked();
  if (sys.delta > 0) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(ls.A);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-13 * sv(0)))
      throw Error(ErrorCode::discretization, "regularised sector system is numerically singular; refine the grid");
  }
  return ls;
}

SectorSolution solve_sector(const SectorSystem& sys, const SectorField& source) {
  const LinearSystem ls = assemble_sector(sys, source);
  const ChebGrid g(sys.grid);
  const Coeffs c = coefficients(sys, g);
  const Eigen::VectorXcd x = ls.A.partialPivLu().solve(ls.b);
  const int M = g.N + 1;
  SectorSolution sol;
  sol.q = x.head(M);
  sol.q_hat = x.tail(M);
  Eigen::MatrixXcd out, pass;
  output_maps(g, c, out, pass);
  sol.fields = SectorField::unstack(out * x + pass * source.stacked());
  return sol;
}

double sector_norm(const SectorSystem& sys, const SectorField& f) {
  const ChebGrid g(sys.grid);
  const Coeffs c = coefficients(sys, g);
  const Eigen::VectorXcd x = f.stacked();
  return (x.adjoint() * gram_nodal(sys, g, c).cast<cplx>() * x)(0).real();
}

double h_constraint_residual(const SectorField& f) {
  const Eigen::Index N = f.s.size() - 1;
  const double scale = std::max({f.s.cwiseAbs().maxCoeff(), f.w.cwiseAbs().maxCoeff(), f.s_hat.cwiseAbs().maxCoeff(),
                                 f.w_hat.cwiseAbs().maxCoeff()});
  if (scale == 0.0) return 0.0;
  const double origin = std::max({std::abs(f.s(0)), std::abs(f.w(0)), std::abs(f.s_hat(0)), std::abs(f.w_hat(0))});
  return std::max(origin, std::abs(f.w(N) - f.w_hat(N))) / scale;
}

SectorField default_source(const ChebGrid& g, int n) {
  SectorField f = SectorField::zero(g.N + 1);
  for (int i = 0; i <= g.N; ++i) {
    const double r = g.r(i), rn = std::pow(r, n);
    f.s(i) = rn * std::exp(r);
    f.w(i) = rn * (1.0 - 0.5 * r);
    f.s_hat(i) = rn * std::cos(2.0 * r);
    f.w_hat(i) = rn * (1.0 - 0.5 * r) + 0.3 * rn * (r - 1.0) * r;
  }
  return f;
}

SweepReport limiting_absorption_sweep(const SectorSystem& sys, const SectorField& source,
                                      const std::vector<double>& deltas) {
  if (deltas.size() < 2) throw Error(ErrorCode::invalid_argument, "sweep needs at least two deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0)) throw Error(ErrorCode::invalid_argument, "sweep deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw Error(ErrorCode::invalid_argument, "sweep deltas must decrease");
  }
  SweepReport rep;
  rep.deltas = deltas;
  std::vector<SectorField> sols;
  for (double d : deltas) {
    SectorSystem s = sys;
    s.delta = d;
    sols.push_back(solve_sector(s, source).fields);
  }
  for (std::size_t i = 0; i + 1 < sols.size(); ++i) {
    const SectorField diff = SectorField::unstack(sols[i].stacked() - sols[i + 1].stacked());
    rep.differences.push_back(std::sqrt(sector_norm(sys, diff)));
  }
  rep.first_order = true;
  for (std::size_t i = 0; i + 1 < rep.differences.size(); ++i) {
    const double ratio = rep.differences[i + 1] > 0 ? rep.differences[i] / rep.differences[i + 1] : INFINITY;
    const double expect = (deltas[i] - deltas[i + 1]) / (deltas[i + 1] - deltas[i + 2]);
    rep.ratios.push_back(ratio);
    rep.expected.push_back(expect);
    if (!(ratio >= 0.5 * expect && ratio <= 2.0 * expect)) rep.first_order = false;
  }
  const std::size_t m = sols.size();
  const double d1 = deltas[m - 2], d2 = deltas[m - 1];
  const Eigen::VectorXcd x1 = sols[m - 2].stacked(), x2 = sols[m - 1].stacked();
  rep.extrapolated = SectorField::unstack(x2 - (x1 - x2) * (d2 / (d1 - d2)));
  SectorSystem s0 = sys;
  s0.delta = 0.0;
  const SectorField direct = solve_sector(s0, source).fields;
  const double dn = std::sqrt(sector_norm(sys, direct));
  const SectorField gap = SectorField::unstack(rep.extrapolated.stacked() - direct.stacked());
  rep.limit_mismatch = dn > 0 ? std::sqrt(sector_norm(sys, gap)) / dn : 0.0;
  return rep;
}

OperatorT operator_T_matrix(const RadialMedia& media, const Wavenumber& k, int n, Polarization pol, int grid) {
  OperatorT op;
  op.sys.n = n;
  op.sys.pol = pol;
  op.sys.media = media;
  op.sys.k = k;
  op.sys.grid = grid;
  op.sys.validate();
  const ChebGrid g(grid);
  const Coeffs c = coefficients(op.sys, g);
  const int N = g.N, M = N + 1;

  // Coordinates: s, w, ŝ at nodes 1..N and ŵ at nodes 1..N-1 (ŵ(1) = w(1)).
  const int dim = 4 * N - 1;
  op.basis = Eigen::MatrixXcd::Zero(4 * M, dim);
  std::vector<int> pick(dim);
  int col = 0;
  for (int blk = 0; blk < 4; ++blk) {
    const int last = (blk == 3) ? N - 1 : N;
    for (int i = 1; i <= last; ++i) {
      op.basis(blk * M + i, col) = 1.0;
      pick[col] = blk * M + i;
      ++col;
    }
  }
  op.basis(3 * M + N, 2 * N - 1) = 1.0;  // ŵ(1) shares the w(1) coordinate

  const Eigen::MatrixXcd A = system_matrix(op.sys, g, c);
  Eigen::MatrixXcd out, pass;
  output_maps(g, c, out, pass);
  const Eigen::MatrixXcd rhs = source_matrix(g, c) * op.basis;
  const Eigen::MatrixXcd Tn = out * A.partialPivLu().solve(rhs) + pass * op.basis;
  op.T.resize(dim, dim);
  for (int r = 0; r < dim; ++r) op.T.row(r) = Tn.row(pick[r]);

  const Eigen::MatrixXcd G = gram_nodal(op.sys, g, c).cast<cplx>();
  op.gram = op.basis.adjoint() * G * op.basis;

  op.flip.resize(dim);
  const bool te = pol == Polarization::TE;
  col = 0;
  for (int blk = 0; blk < 4; ++blk) {
    const int last = (blk == 3) ? N - 1 : N;
    // E-type slots: s for TE, w for TM.
    const bool e_type = te ? (blk % 2 == 0) : (blk % 2 == 1);
    for (int i = 1; i <= last; ++i) op.flip(col++) = e_type ? -1.0 : 1.0;
  }
  return op;
}

Eigen::VectorXd operator_singular_values(const OperatorT& op) {
  const Eigen::LLT<Eigen::MatrixXcd> llt(op.gram);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::discretization, "H Gram matrix is not positive definite");
  const Eigen::MatrixXcd R = llt.matrixU();
  // R T R⁻¹ via a triangular solve from the right.
  const Eigen::MatrixXcd RT = R * op.T;
  const Eigen::MatrixXcd M = R.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(RT);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues();
}

std::vector<SpectrumEntry> spectrum_T(const OperatorT& op) {
  const Eigen::MatrixXcd TS = op.T * op.flip.cast<cplx>().asDiagonal();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(TS, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::discretization, "eigensolver failed");
  const auto& ev = es.eigenvalues();
  const double big = ev.cwiseAbs().maxCoeff();
  std::vector<SpectrumEntry> out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!(std::abs(ev(i)) > 1e-10 * big)) continue;
    SpectrumEntry e;
    e.tau = ev(i);
    e.omega = -I * (op.sys.k.k + 1.0 / ev(i));
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    const double ma = std::abs(a.omega), mb = std::abs(b.omega);
    if (ma != mb) return ma < mb;
    return std::arg(a.omega) < std::arg(b.omega);
  });
  return out;
}

std::vector<SpectrumEntry> physical_spectrum(const RadialMedia& media, const Wavenumber& k, int n, Polarization pol,
                                             int grid, double tol, double omega_max) {
  auto coarse = spectrum_T(operator_T_matrix(media, k, n, pol, grid));
  const auto fine = spectrum_T(operator_T_matrix(media, k, n, pol, 2 * grid));
  std::vector<SpectrumEntry> out;
  for (auto& e : coarse) {
    if (std::abs(e.omega) > omega_max) continue;
    double best = INFINITY;
    for (const auto& f : fine) best = std::min(best, std::abs(f.omega - e.omega));
    e.movement = best / std::max(std::abs(e.omega), 1e-300);
    e.physical = e.movement < tol;
    out.push_back(e);
  }
  return out;
}

ThresholdReport sweep_threshold(const RadialMedia& media, int n, Polarization pol, double arg,
                                const std::vector<double>& k_abs, int grid, int hat_sign) {
  ThresholdReport rep;
  rep.k_abs = k_abs;
  for (double ka : k_abs) {
    SectorSystem s;
    s.n = n;
    s.pol = pol;
    s.media = media;
    s.k = Wavenumber{std::polar(ka, arg), 0.5};
    s.grid = grid;
    s.hat_sign = hat_sign;
    const ChebGrid g(grid);
    rep.sweeps.push_back(limiting_absorption_sweep(s, default_source(g, n), {1e-2, 1e-3, 1e-4}));
  }
  for (std::size_t i = rep.sweeps.size(); i-- > 0;) {
    if (!rep.sweeps[i].first_order) break;
    rep.threshold = k_abs[i];
  }
  return rep;
}

}  // namespace temax
