#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "temax/error.hpp"
#include "temax/halfspace.hpp"

using namespace temax;

namespace {

const cplx I(0.0, 1.0);

MediaQuad quad(double e, double m, double eh, double mh, int a2 = 1) {
  MediaQuad q;
  q.eps = e, q.mu = m, q.eps_hat = eh, q.mu_hat = mh, q.alpha2 = a2;
  return q;
}

// Eigen's cross() conjugates complex operands; Maxwell's equations need the bilinear product.
Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

// Boundary values of one decaying plane-wave family, built from first principles:
// E = (a, iξ·a/λ) e^{-λx₃}, H = (∇×E)/(κμ) with ∇ ↦ (iξ₁, iξ₂, -λ).
void plane_wave(const Eigen::Vector2cd& a, double x1, double x2, cplx lam, cplx kappa, double mu, Eigen::Vector3cd& E,
                Eigen::Vector3cd& H) {
  E << a(0), a(1), I * (x1 * a(0) + x2 * a(1)) / lam;
  const Eigen::Vector3cd d(I * x1, I * x2, -lam);
  H = cross(d, E) / (kappa * mu);
}

// Direct 4×4 solve of the jump conditions (Ê-E)×e₃ = f_e, (Ĥ-H)×e₃ = f_m.
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> brute_force(const TangentialMode& xi, cplx k, const MediaQuad& m,
                                                           const TraceDatum& t) {
  const cplx alpha = m.alpha2 == 1 ? cplx(1.0) : I;
  cplx lam = std::sqrt(cplx(xi.norm2()) + k * k * m.eps * m.mu);
  cplx lamh = std::sqrt(cplx(xi.norm2()) + alpha * alpha * k * k * m.eps_hat * m.mu_hat);
  if (lam.real() < 0) lam = -lam;
  if (lamh.real() < 0) lamh = -lamh;
  Eigen::Matrix4cd M;
  for (int c = 0; c < 4; ++c) {
    Eigen::Vector2cd a = Eigen::Vector2cd::Zero(), ah = Eigen::Vector2cd::Zero();
    (c < 2 ? a(c) : ah(c - 2)) = 1.0;
    Eigen::Vector3cd E, H, Eh, Hh;
    plane_wave(a, xi.xi1, xi.xi2, lam, k, m.mu, E, H);
    plane_wave(ah, xi.xi1, xi.xi2, lamh, alpha * k, m.mu_hat, Eh, Hh);
    const Eigen::Vector3cd e3(0, 0, 1);
    const Eigen::Vector3cd je = cross(Eh - E, e3), jm = cross(Hh - H, e3);
    M.col(c) << je(0), je(1), jm(0), jm(1);
  }
  Eigen::Vector4cd rhs(t.fe[0], t.fe[1], t.fm[0], t.fm[1]);
  const Eigen::Vector4cd x = M.fullPivLu().solve(rhs);
  return {x.head<2>(), x.tail<2>()};
}

TraceDatum random_trace(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TraceDatum t;
  for (auto* v : {&t.fe, &t.fm})
    for (auto& z : *v) z = cplx(u(rng), u(rng));
  return t;
}

}  // namespace

TEST_CASE("decaying square root branch") {
  CHECK(std::abs(decaying_sqrt(4.0) - 2.0) < 1e-15);
  CHECK(std::abs(decaying_sqrt(cplx(0, 2)) - cplx(1, 1)) < 1e-15);
  CHECK(std::abs(decaying_sqrt(cplx(0, -2)) - cplx(1, -1)) < 1e-15);
  CHECK_THROWS_AS(decaying_sqrt(-1.0), Error);
  CHECK_THROWS_AS(decaying_sqrt(0.0), Error);
}

TEST_CASE("trace helpers and denominators by hand substitution") {
  auto h = trace_h({cplx(1), cplx(0)});
  CHECK((h[0] == cplx(0) && h[1] == cplx(1)));
  h = trace_h({cplx(0), cplx(1)});
  CHECK((h[0] == cplx(-1) && h[1] == cplx(0)));
  CHECK(std::abs(trace_g({cplx(1), cplx(0)}, {2, 0}, Wavenumber{2.0, 0.5}) - cplx(-1)) < 1e-15);
  CHECK(std::abs(trace_g({cplx(0), cplx(1)}, {3, 0}, Wavenumber{cplx(1, 2), 0.5})) == 0.0);

  const cplx k = std::sqrt(cplx(0, 4));  // k² = 4i
  CHECK(std::abs(denom_A({0, 0}, Wavenumber{k, 0.5}, quad(2, 1, 1, 1)) - cplx(0, -8)) < 1e-13);
  CHECK(std::abs(denom_A({1, 0}, Wavenumber{0.0, 0.5}, quad(2, 1, 1, 1)) - cplx(-3)) < 1e-13);
  CHECK(std::abs(denom_B({0, 0}, Wavenumber{k, 0.5}, quad(1, 2, 1, 1)) - cplx(0, 8)) < 1e-13);
  CHECK(std::abs(denom_B({1, 0}, Wavenumber{0.0, 0.5}, quad(1, 2, 1, 1)) - cplx(3)) < 1e-13);
  CHECK(std::abs(denom_A({0.7, 0.2}, Wavenumber{k, 0.5}, quad(1.3, 2, 1.3, 2))) == 0.0);
  CHECK(std::abs(denom_B({0.7, 0.2}, Wavenumber{k, 0.5}, quad(1.3, 2, 1.3, 2))) == 0.0);
}

TEST_CASE("closed-form amplitudes agree with a direct solve of the jump conditions") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int a2 = trial % 2 ? -1 : 1;
    const MediaQuad m = quad(0.5 + 3 * u(rng), 0.5 + 3 * u(rng), 0.5 + 3 * u(rng), 0.5 + 3 * u(rng), a2);
    const double phi = M_PI / 12 + (M_PI / 2 - M_PI / 6) * u(rng) + (u(rng) < 0.5 ? 0.0 : M_PI / 2);
    const Wavenumber k{std::polar(2.0 + 50 * u(rng), phi), 0.5};
    const TangentialMode xi{10 * (u(rng) - 0.5), 10 * (u(rng) - 0.5)};
    const TraceDatum t = random_trace(rng);
    const auto amp = solve_amplitudes(xi, k, m, t);
    const auto [a, ah] = brute_force(xi, k.k, m, t);
    const double scale = a.norm() + ah.norm();
    const double err = (std::abs(amp.a[0] - a(0)) + std::abs(amp.a[1] - a(1)) + std::abs(amp.a_hat[0] - ah(0)) +
                        std::abs(amp.a_hat[1] - ah(1))) / scale;
    worst = std::max(worst, err);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("post-conditions of the amplitude solve") {
  const MediaQuad m = quad(2, 1, 1, 2);
  const Wavenumber k{std::polar(7.0, 1.1), 0.5};
  const TangentialMode xi{1.5, -0.4};
  TraceDatum t;
  t.fe = {cplx(0.3, -1), cplx(0.2, 0.5)};
  t.fm = {cplx(-0.7, 0.1), cplx(1, 1)};
  const auto amp = solve_amplitudes(xi, k, m, t);
  const auto h = trace_h(t.fe);
  CHECK(std::abs(amp.a_hat[0] - amp.a[0] - h[0]) < 1e-13);
  CHECK(std::abs(amp.a_hat[1] - amp.a[1] - h[1]) < 1e-13);
  // normal-flux identity
  const cplx xa = xi.xi1 * amp.a[0] + xi.xi2 * amp.a[1];
  const cplx xah = xi.xi1 * amp.a_hat[0] + xi.xi2 * amp.a_hat[1];
  const cplx lhs = m.eps_hat * xah / amp.lambda_hat - m.eps * xa / amp.lambda;
  const cplx g = trace_g(t.fm, xi, k);
  CHECK(std::abs(lhs - g) < 1e-10 * (std::abs(g) + 1));

  const auto r = cauchy_residual(amp, {0, .1, .2, .4, .8, 1.2, 1.6, 2.0});
  CHECK(r.maxwell_res < 1e-13);
  CHECK(r.bc_res < 1e-13);

  // the residual check is not vacuous
  for (double d : {1e-6, 1e-3}) {
    auto p = make_amplitudes(xi, k, m, t, amp.a, {amp.a_hat[0], amp.a_hat[1] + d});
    const auto rp = cauchy_residual(p, {0, .1, .2, .4, .8, 1.2, 1.6, 2.0});
    CHECK(rp.bc_res > 0.01 * d);
  }
}

TEST_CASE("zero data and zero wave vector") {
  const MediaQuad m = quad(2, 1, 1, 2);
  const Wavenumber k{std::polar(5.0, M_PI / 4), 0.5};
  const auto z = solve_amplitudes({0.4, 0.1}, k, m, TraceDatum{});
  for (int j = 0; j < 2; ++j) CHECK((z.a[j] == cplx(0) && z.a_hat[j] == cplx(0)));
  const auto s = evaluate_fields(z, 0.3);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(s.E[j]) + std::abs(s.H_hat[j]) == 0.0);
  const auto r0 = cauchy_residual(z, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK((r0.maxwell_res == 0.0 && r0.bc_res == 0.0));
  CHECK_THROWS_AS(stability_ratio(z), Error);

  TraceDatum t;
  t.fe = {cplx(1), cplx(0)};
  const auto amp = solve_amplitudes({0, 0}, k, m, t);
  CHECK(std::abs(amp.a_hat[0] - amp.a[0]) < 1e-15);
  CHECK(std::abs(amp.a_hat[1] - amp.a[1] - 1.0) < 1e-14);
  const auto r = cauchy_residual(amp, {0, .5, 1, 1.5, 2, 2.5, 3, 3.5});
  CHECK(r.bc_res < 1e-14);
  CHECK(r.maxwell_res < 1e-14);
}

TEST_CASE("field evaluation decays exponentially") {
  const MediaQuad m = quad(2, 1, 1, 2);
  TraceDatum t;
  t.fe = {cplx(1, 1), cplx(0, 1)};
  t.fm = {cplx(0.5), cplx(-1)};
  const auto amp = solve_amplitudes({1, 2}, Wavenumber{std::polar(4.0, 1.0), 0.5}, m, t);
  const auto s0 = evaluate_fields(amp, 0.0), s1 = evaluate_fields(amp, 1.0), s2 = evaluate_fields(amp, 2.0);
  CHECK((s0.E[0] == amp.a[0] && s0.E[1] == amp.a[1]));
  const double f = std::exp(-amp.lambda.real());
  for (int j = 0; j < 3; ++j) CHECK(std::abs(s2.E[j]) <= std::abs(s1.E[j]) * f * (1 + 1e-12));
}

TEST_CASE("input contracts of the amplitude solve") {
  const MediaQuad m = quad(2, 1, 1, 2);
  TraceDatum t;
  t.fe = {cplx(1), cplx(0)};
  auto code = [&](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  CHECK(code([&] { solve_amplitudes({1, 0}, Wavenumber{5.0, 0.5}, m, t); }) == ErrorCode::branch_degeneracy);
  CHECK(code([&] { solve_amplitudes({1, 0}, Wavenumber{std::polar(0.5, 0.8), 0.5}, m, t); }) ==
        ErrorCode::invalid_argument);
  CHECK(code([&] { solve_amplitudes({1, 0}, Wavenumber{std::polar(5.0, 0.8), 0.5}, quad(1.5, 1, 1.5, 1), t); }) ==
        ErrorCode::degenerate_symbol);
}

TEST_CASE("stability ratio is homogeneous and bounded in k") {
  const MediaQuad m = quad(2, 1, 1, 2);
  TraceDatum t;
  t.fe = {cplx(1, 0.5), cplx(-0.2)};
  t.fm = {cplx(0.3), cplx(0.1, -0.4)};
  TraceDatum t10 = t;
  for (auto* v : {&t10.fe, &t10.fm})
    for (auto& z : *v) z *= 10.0;
  const Wavenumber k{std::polar(6.0, M_PI / 4), 0.5};
  const double r1 = stability_ratio(solve_amplitudes({1, 0.5}, k, m, t));
  const double r10 = stability_ratio(solve_amplitudes({1, 0.5}, k, m, t10));
  CHECK(r10 == doctest::Approx(r1).epsilon(1e-12));

  double lo = INFINITY, hi = 0;
  for (int i = 0; i <= 20; ++i) {
    const double ka = 2.0 * std::pow(100.0, i / 20.0);
    const double r = stability_ratio(solve_amplitudes({1, 0.5}, Wavenumber{std::polar(ka, M_PI / 4), 0.5}, m, t));
    lo = std::min(lo, r), hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 4.0);
}

TEST_CASE("source problem with a perfectly conducting face") {
  const TangentialMode xi{1.0, 0.5};
  const double eps = 2.0, mu = 1.0;
  auto bump = [](double x) -> cvec3 {
    const double b = x < 1.0 ? std::pow(std::sin(M_PI * x), 4) : 0.0;
    return {cplx(b), cplx(0.5 * b, 0.2 * b), cplx(0.0, b)};
  };
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(1.5 * i / 400);

  SUBCASE("zero source") {
    auto zero = [](double) -> cvec3 { return {}; };
    const auto p = pec_source_solve(xi, Wavenumber{std::polar(5.0, M_PI / 4), 0.5}, eps, mu, zero, 1.0, grid);
    CHECK(profile_l2(p) == 0.0);
  }
  SUBCASE("residual and boundary condition") {
    const Wavenumber k{std::polar(8.0, M_PI / 4), 0.5};
    const auto p = pec_source_solve(xi, k, eps, mu, bump, 1.0, grid);
    CHECK(pec_residual(p, xi, k, eps, mu, bump) <= 1e-6);
    CHECK(std::abs(p.E[0][0]) + std::abs(p.E[0][1]) < 1e-12 * profile_l2(p));
  }
  SUBCASE("norm scales like 1/|k|") {
    double lo = INFINITY, hi = 0;
    for (double ka : {4.0, 8.0, 16.0, 32.0}) {
      const auto p = pec_source_solve(xi, Wavenumber{std::polar(ka, M_PI / 4), 0.5}, eps, mu, bump, 1.0, grid);
      const double c = ka * profile_l2(p) / source_l2(bump, grid);
      lo = std::min(lo, c), hi = std::max(hi, c);
    }
    CHECK(hi / lo < 4.0);
  }
  SUBCASE("wedge violated") {
    CHECK_THROWS_AS(pec_source_solve(xi, Wavenumber{5.0, 0.5}, eps, mu, bump, 1.0, grid), Error);
  }
}
