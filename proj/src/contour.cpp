#include "temax/contour.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "temax/error.hpp"

namespace temax {

cplx Segment::at(double s) const {
  if (kind == Kind::line) return a + s * (b - a);
  return center + std::polar(radius, t0 + s * (t1 - t0));
}

double Segment::length() const {
  if (kind == Kind::line) return std::abs(b - a);
  return radius * std::abs(t1 - t0);
}

Contour rectangle(cplx lo, cplx hi) {
  const cplx p0 = lo, p1(hi.real(), lo.imag()), p2 = hi, p3(lo.real(), hi.imag());
  Contour c(4);
  c[0].a = p0, c[0].b = p1;
  c[1].a = p1, c[1].b = p2;
  c[2].a = p2, c[2].b = p3;
  c[3].a = p3, c[3].b = p0;
  return c;
}

Contour annular_sector(double r0, double r1, double phi0, double phi1) {
  Contour c;
  Segment s;
  s.a = std::polar(r0, phi0), s.b = std::polar(r1, phi0);
  c.push_back(s);
  Segment outer;
  outer.kind = Segment::Kind::arc, outer.radius = r1, outer.t0 = phi0, outer.t1 = phi1;
  c.push_back(outer);
  s.a = std::polar(r1, phi1), s.b = std::polar(r0, phi1);
  c.push_back(s);
  if (r0 > 0.0) {
    Segment inner;
    inner.kind = Segment::Kind::arc, inner.radius = r0, inner.t0 = phi1, inner.t1 = phi0;
    c.push_back(inner);
  }
  return c;
}

Contour circle(cplx center, double radius) {
  Segment s;
  s.kind = Segment::Kind::arc, s.center = center, s.radius = radius, s.t0 = 0.0, s.t1 = 2.0 * M_PI;
  return {s};
}

int winding_number(const ScaledFn& f, const Contour& c, const WindingOptions& opt) {
  auto eval = [&](cplx z) {
    const FnSample v = f(z);
    if (!(std::abs(v.value) > opt.zero_tol * v.scale) || !std::isfinite(std::abs(v.value))) {
      std::ostringstream os;
      os.precision(17);
      os << "contour passes through or near a zero at " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
      throw Error(ErrorCode::contour_through_zero, os.str());
    }
    return v.value;
  };
  double total = 0.0;
  for (const Segment& seg : c) {
    double s = 0.0, ds = 1.0 / opt.initial_steps;
    cplx f0 = eval(seg.at(0.0));
    while (s < 1.0) {
      ds = std::min({ds, 1.0 - s, 1.0 / opt.initial_steps});
      const cplx f1 = eval(seg.at(s + ds));
      const double d = std::arg(f1 / f0);
      bool ok = std::abs(d) < M_PI / 2;
      if (ok) {
        // The half steps must agree with the full step, guarding against a skipped turn.
        const cplx fm = eval(seg.at(s + 0.5 * ds));
        const double d2 = std::arg(fm / f0) + std::arg(f1 / fm);
        ok = std::abs(d2 - d) < 1e-9;
      }
      if (!ok) {
        ds *= 0.5;
        if (ds < opt.min_step) throw Error(ErrorCode::contour_through_zero, "phase tracking step underflow");
        continue;
      }
      total += d;
      s += ds;
      f0 = f1;
      ds *= 1.5;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

}  // namespace temax
