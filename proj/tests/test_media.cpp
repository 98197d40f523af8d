#include <doctest.h>

#include "temax/error.hpp"
#include "temax/media.hpp"

using namespace temax;

namespace {

MediaQuad quad(double e, double m, double eh, double mh) {
  MediaQuad q;
  q.eps = e, q.mu = m, q.eps_hat = eh, q.mu_hat = mh;
  return q;
}

int code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  }
  return 0;
}

}  // namespace

TEST_CASE("media constants are validated") {
  CHECK_NOTHROW(quad(2, 1, 1, 2).validate());
  CHECK(code_of([] { quad(0, 1, 1, 2).validate(); }) == static_cast<int>(ErrorCode::invalid_media));
  CHECK(code_of([] { quad(2, -1, 1, 2).validate(); }) == static_cast<int>(ErrorCode::invalid_media));
  CHECK(code_of([] { quad(2, 1, NAN, 2).validate(); }) == static_cast<int>(ErrorCode::invalid_media));
  MediaQuad q = quad(2, 1, 1, 2);
  q.alpha2 = 0;
  CHECK(code_of([&] { q.validate(); }) == static_cast<int>(ErrorCode::invalid_media));
  q.alpha2 = -1;
  CHECK_NOTHROW(q.validate());
}

TEST_CASE("admissibility margins") {
  const auto r = check_admissible(quad(2, 1, 1, 2));
  CHECK(r.ok);
  CHECK(r.margins[0] == doctest::Approx(1.0));
  CHECK(r.margins[1] == doctest::Approx(1.0));
  CHECK(r.margins[2] == doctest::Approx(1.5));

  // equal impedance ratios: third margin vanishes
  const auto d = check_admissible(quad(2, 1, 4, 2));
  CHECK_FALSE(d.ok);
  CHECK(d.margins[2] == 0.0);
  CHECK_FALSE(check_admissible(quad(1.5, 1, 1.5, 1)).ok);
}

TEST_CASE("wedge membership of k and omega") {
  const Wavenumber diag{std::polar(10.0, M_PI / 4), 0.5};
  CHECK(diag.in_wedge());
  CHECK(diag.in_wedge(-1));
  CHECK_FALSE((Wavenumber{10.0, 0.5}).in_wedge());
  CHECK_FALSE((Wavenumber{cplx(0.0, 10.0), 0.5}).in_wedge());
  // edge: |Im k²| = γ|k|² at arg k = asin(γ)/2
  const WedgeSpec w{0.5, 5.0};
  CHECK(w.min_angle() == doctest::Approx(M_PI / 12));
  CHECK((Wavenumber{std::polar(3.0, M_PI / 12 + 1e-9), 0.5}).in_wedge());
  CHECK_FALSE((Wavenumber{std::polar(3.0, M_PI / 12 - 1e-6), 0.5}).in_wedge());

  CHECK(wedge_contains(w, std::polar(10.0, M_PI / 4)));
  CHECK_FALSE(wedge_contains(w, std::polar(4.0, M_PI / 4)));
  CHECK_FALSE(wedge_contains(w, cplx(10.0, 0.0)));
  const Wavenumber k = Wavenumber::from_omega(cplx(3.0, 4.0), 0.5);
  CHECK(std::abs(k.omega() - cplx(3.0, 4.0)) < 1e-15);
}

TEST_CASE("radial media sampling and validation") {
  const auto c = RadialMedia::constant(quad(2, 1, 1, 2), 33);
  CHECK(c.is_constant());
  CHECK(c.value(RadialMedia::Field::eps, 0.37) == 2.0);
  CHECK(c.boundary().mu_hat == 2.0);
  CHECK_NOTHROW(c.validate());

  auto lin = [](double r) { return 2.0 + 0.5 * r; };
  auto one = [](double) { return 1.0; };
  auto two = [](double) { return 2.0; };
  const auto s = RadialMedia::sampled(lin, one, one, two, 65);
  CHECK_FALSE(s.is_constant());
  CHECK(s.value(RadialMedia::Field::eps, 0.3) == doctest::Approx(2.15).epsilon(1e-14));
  CHECK(s.collar_slope(RadialMedia::Field::eps) == doctest::Approx(0.5));
  CHECK(s.boundary().eps == doctest::Approx(2.5));
  CHECK_NOTHROW(s.validate());

  // slope 20 on the collar exceeds the bound Λ = 10
  auto steep = [](double r) { return r < 0.9 ? 2.0 : 2.0 + 20.0 * (r - 0.9); };
  const auto bad = RadialMedia::sampled(steep, one, one, two, 201);
  CHECK(code_of([&] { bad.validate(); }) == static_cast<int>(ErrorCode::invalid_media));

  auto big = [](double) { return 20.0; };
  const auto out = RadialMedia::sampled(big, one, one, two, 9);
  CHECK(code_of([&] { out.validate(); }) == static_cast<int>(ErrorCode::invalid_media));
  CHECK(code_of([] { RadialMedia::constant(quad(2, 1, 1, 2), 1); }) == static_cast<int>(ErrorCode::invalid_argument));
}

TEST_CASE("error code names") {
  CHECK(std::string(error_code_name(ErrorCode::degenerate_contrast)) == "degenerate-contrast");
  CHECK(std::string(error_code_name(ErrorCode::decay_violation)) == "decay-violation");
}
