#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gmb/geom/constructions.hpp"
#include "oracle.hpp"
#include "suites.hpp"

namespace gmb::testing {

namespace {

namespace g = geom;
namespace o = oracle;

constexpr double kTol = 1e-9;
constexpr double kPi = 3.141592653589793;

using Ln = g::Line<double>;
using Circ = g::Circle<double>;

struct Checker {
  SuiteResult& r;
  std::string name;
  int sample = 0;
  double worst = 0.0;

  // Records |value| < 1e-9.
  void zero(double value, const char* what) {
    worst = std::max(worst, std::abs(value));
    if (std::abs(value) < kTol) {
      r.check(true, {});
      return;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s sample %d: %s = %.3g", name.c_str(), sample, what, value);
    r.check(false, buf);
  }
  void near(const V2& a, const V2& b, const char* what) { zero((a - b).norm(), what); }
  void holds(bool ok, const char* what) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s sample %d: %s", name.c_str(), sample, what);
    r.check(ok, ok ? std::string() : std::string(buf));
  }
};

template <typename Body>
void run(SuiteResult& r, const std::string& name, int samples, Rng& rng, Body body) {
  Checker c{r, name};
  for (c.sample = 0; c.sample < samples; ++c.sample) body(c, rng);
}

double on_line(const V2& p, const V2& a, const V2& b) { return o::signed_distance(p, a, b); }
double on_line(const V2& p, const Ln& l) { return o::signed_distance(p, l.p1, l.p2); }
double on_circle(const V2& p, const Circ& c) { return (p - c.center).norm() - c.radius; }

// Internal tangency of (center, r) inside circle (ABC), plus tangency to the
// side lines AB and AC.
void mixtilinear_checks(Checker& c, const Triangle& t, const V2& center, double radius) {
  const V2 oc = o::circumcenter(t.a, t.b, t.c);
  const double big = (t.a - oc).norm();
  c.zero(o::line_distance(center, t.a, t.b) - radius, "distance to AB minus radius");
  c.zero(o::line_distance(center, t.a, t.c) - radius, "distance to AC minus radius");
  c.zero((center - oc).norm() - (big - radius), "internal tangency to circumcircle");
  c.holds(radius > 0 && radius < big, "radius between 0 and the circumradius");
}

}  // namespace

SuiteResult construction_suite(int samples) {
  SuiteResult r{"construction oracles"};
  Rng rng(777);
  const int n = samples;

  // --- points -------------------------------------------------------------
  run(r, "midp", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const V2 m = g::midpoint<double>(a, b);
    c.zero((m - a).norm() - (m - b).norm(), "|MA| - |MB|");
    c.zero(on_line(m, a, b), "M off AB");
  });
  run(r, "centroid", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    c.near(g::centroid<double>(t.a, t.b, t.c), o::centroid(t.a, t.b, t.c), "distance to median intersection");
  });
  run(r, "circumcenter", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 p = g::circumcenter<double>(t.a, t.b, t.c);
    c.zero((p - t.a).norm() - (p - t.b).norm(), "|OA| - |OB|");
    c.zero((p - t.a).norm() - (p - t.c).norm(), "|OA| - |OC|");
    c.near(p, o::circumcenter(t.a, t.b, t.c), "distance to linear-solve circumcenter");
  });
  run(r, "incenter", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 p = g::incenter<double>(t.a, t.b, t.c);
    const double da = o::signed_distance(p, t.b, t.c), db = o::signed_distance(p, t.c, t.a),
                 dc = o::signed_distance(p, t.a, t.b);
    c.zero(da - db, "signed distance to BC minus to CA");
    c.zero(da - dc, "signed distance to BC minus to AB");
    c.holds(da * o::signed_distance(t.a, t.b, t.c) > 0, "on the wrong side of BC");
    c.near(p, o::incenter(t.a, t.b, t.c), "distance to bisector intersection");
  });
  run(r, "excenter", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 p = g::excenter<double>(t.a, t.b, t.c);
    const double da = o::line_distance(p, t.b, t.c), db = o::line_distance(p, t.c, t.a),
                 dc = o::line_distance(p, t.a, t.b);
    c.zero(da - db, "distance to BC minus to CA");
    c.zero(da - dc, "distance to BC minus to AB");
    c.holds(o::signed_distance(p, t.b, t.c) * o::signed_distance(t.a, t.b, t.c) < 0, "beyond BC from A");
    c.holds(o::signed_distance(p, t.a, t.b) * o::signed_distance(t.c, t.a, t.b) > 0, "inside angle A (AB side)");
    c.holds(o::signed_distance(p, t.a, t.c) * o::signed_distance(t.b, t.a, t.c) > 0, "inside angle A (AC side)");
  });
  run(r, "orthocenter", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 h = g::orthocenter<double>(t.a, t.b, t.c);
    c.zero((h - t.a).dot((t.c - t.b).normalized()), "AH . BC");
    c.zero((h - t.b).dot((t.c - t.a).normalized()), "BH . CA");
    c.zero((h - t.c).dot((t.b - t.a).normalized()), "CH . AB");
  });
  run(r, "foot", n, rng, [](Checker& c, Rng& g) {
    const V2 p = g.point(), a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const V2 f = g::foot<double>(p, Ln{a, b});
    c.zero(on_line(f, a, b), "foot off the line");
    c.zero((p - f).dot((b - a).normalized()), "PF . AB");
  });
  run(r, "harmonic-conj", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    double t;
    do t = g.uniform(-1.5, 2.5);
    while (std::abs(t - 0.5) < 0.15 || std::abs(t) < 0.05 || std::abs(t - 1) < 0.05);
    const V2 pc = a + (b - a) * t;
    const V2 d = g::harmonic_conjugate<double>(pc, a, b);
    // Signed coordinates along AB.
    const V2 u = (b - a).normalized();
    const double xa = 0, xb = (b - a).norm(), xc = (pc - a).dot(u), xd = (d - a).dot(u);
    const double cross_ratio = ((xc - xa) / (xc - xb)) / ((xd - xa) / (xd - xb));
    c.zero(on_line(d, a, b), "D off AB");
    c.zero(cross_ratio + 1.0, "(A,B;C,D) + 1");
  });
  run(r, "inter-ll", n, rng, [](Checker& c, Rng& g) {
    const V2 x = g.point();
    const double t1 = g.angle();
    const double t2 = t1 + g.uniform(0.4, kPi - 0.4);
    const Ln l1{x + o::unit(t1) * g.uniform(-2, -0.3), x + o::unit(t1) * g.uniform(0.3, 2)};
    const Ln l2{x + o::unit(t2) * g.uniform(-2, -0.3), x + o::unit(t2) * g.uniform(0.3, 2)};
    const V2 p = g::intersect_lines(l1, l2);
    c.zero(on_line(p, l1), "off L1");
    c.zero(on_line(p, l2), "off L2");
  });
  run(r, "inter-lc", n, rng, [](Checker& c, Rng& g) {
    const Circ circ{g.point(1), g.uniform(0.5, 2)};
    const V2 u = g.unit();
    const V2 foot = circ.center + u * (circ.radius * g.uniform(0, 0.95));
    const Ln l{foot - V2(-u.y(), u.x()) * g.uniform(0.3, 2), foot + V2(-u.y(), u.x()) * g.uniform(0.3, 2)};
    const auto [p, q] = g::line_circle_roots(l, circ);
    for (const V2& x : {p, q}) {
      c.zero(on_line(x, l), "root off the line");
      c.zero(on_circle(x, circ), "root off the circle");
    }
  });
  run(r, "inter-cc", n, rng, [](Checker& c, Rng& g) {
    const double r1 = g.uniform(0.5, 2), r2 = g.uniform(0.5, 2);
    const double lo = std::abs(r1 - r2) + 0.05, hi = r1 + r2 - 0.05;
    const Circ c1{g.point(1), r1};
    const Circ c2{c1.center + g.unit() * g.uniform(lo, std::max(lo, hi)), r2};
    const auto [p, q] = g::circle_circle_roots(c1, c2);
    for (const V2& x : {p, q}) {
      c.zero(on_circle(x, c1), "root off circle 1");
      c.zero(on_circle(x, c2), "root off circle 2");
    }
  });
  run(r, "isogonal-conj", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 p = random_interior_point(g, t);
    c.near(g::isogonal_conjugate<double>(p, t.a, t.b, t.c), o::isogonal_conjugate(p, t.a, t.b, t.c),
           "distance to reflected-cevian intersection");
    // The circumcenter and orthocenter are isogonal conjugates.
    const V2 circ = o::circumcenter(t.a, t.b, t.c);
    c.near(g::isogonal_conjugate<double>(circ, t.a, t.b, t.c), o::orthocenter(t.a, t.b, t.c),
           "isogonal(circumcenter) - orthocenter");
  });
  run(r, "isotomic-conj", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 p = random_interior_point(g, t);
    c.near(g::isotomic_conjugate<double>(p, t.a, t.b, t.c), o::isotomic_conjugate(p, t.a, t.b, t.c),
           "distance to reflected-foot cevian intersection");
    // The centroid is its own isotomic conjugate.
    const V2 m = o::centroid(t.a, t.b, t.c);
    c.near(g::isotomic_conjugate<double>(m, t.a, t.b, t.c), m, "isotomic(centroid) - centroid");
  });
  run(r, "mixtilinear-incenter", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 p = g::mixtilinear_incenter<double>(t.a, t.b, t.c);
    mixtilinear_checks(c, t, p, o::line_distance(p, t.a, t.b));
    c.zero(on_line(p, t.a, o::incenter(t.a, t.b, t.c)), "off the A-bisector");
  });
  run(r, "amidp", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 oc = o::circumcenter(t.a, t.b, t.c);
    const double rad = (t.a - oc).norm();
    for (bool same : {false, true}) {
      const V2 m = g::arc_midpoint<double>(t.a, t.b, t.c, same);
      c.zero((m - oc).norm() - rad, "off the circumcircle");
      c.zero((m - t.a).norm() - (m - t.b).norm(), "|MA| - |MB|");
      const double side = o::signed_distance(m, t.a, t.b) * o::signed_distance(t.c, t.a, t.b);
      c.holds(same ? side > 0 : side < 0, same ? "amidp-same on C's side" : "amidp-opp on C's side");
    }
  });

  // --- lines --------------------------------------------------------------
  run(r, "connecting", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const Ln l{a, b};
    c.zero(on_line(a, l), "A off");
    c.zero(on_line(b, l), "B off");
  });
  run(r, "isogonal", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 d = random_interior_point(g, t);
    const Ln l = g::isogonal_line<double>(d, t.a, t.b, t.c);
    const o::RayLine ref = o::reflected_cevian(d, t.a, t.b, t.c);
    c.zero(on_line(t.a, l), "A off the isogonal");
    c.zero(on_line(t.a + o::unit(ref.angle), l), "direction differs from angle reflection");
  });
  run(r, "isotomic", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const V2 d = random_interior_point(g, t);
    const Ln l = g::isotomic_line<double>(d, t.a, t.b, t.c);
    c.zero(on_line(t.a, l), "A off the isotomic");
    c.zero(on_line(o::isotomic_foot(d, t.a, t.b, t.c), l), "reflected foot off the isotomic");
  });
  run(r, "perp-bis", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const Ln l = g::perpendicular_bisector<double>(a, b);
    for (const V2& p : {l.p1, l.p2}) c.zero((p - a).norm() - (p - b).norm(), "point not equidistant");
    c.zero((l.p2 - l.p1).normalized().dot((b - a).normalized()), "not perpendicular to AB");
  });
  run(r, "perp-at", n, rng, [](Checker& c, Rng& g) {
    const V2 p = g.point(), a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const Ln l = g::perpendicular_at<double>(p, Ln{a, b});
    c.zero(on_line(p, l), "A off");
    c.zero((l.p2 - l.p1).normalized().dot((b - a).normalized()), "not perpendicular");
  });
  run(r, "reflect-ll", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const V2 m1 = g.point(), m2 = m1 + g.unit() * g.uniform(0.5, 3);
    const Ln out = g::reflect_line<double>(Ln{a, b}, Ln{m1, m2});
    for (const V2& p : {out.p1, out.p2}) c.zero(on_line(o::reflect(p, m1, m2), a, b), "mirror image off L");
  });

  // --- circles ------------------------------------------------------------
  run(r, "c3", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const Circ k = g::circle_through<double>(t.a, t.b, t.c);
    for (const V2& p : {t.a, t.b, t.c}) c.zero(on_circle(p, k), "vertex off the circle");
  });
  run(r, "incircle", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const Circ k = g::incircle<double>(t.a, t.b, t.c);
    c.zero(o::line_distance(k.center, t.b, t.c) - k.radius, "not tangent to BC");
    c.zero(o::line_distance(k.center, t.c, t.a) - k.radius, "not tangent to CA");
    c.zero(o::line_distance(k.center, t.a, t.b) - k.radius, "not tangent to AB");
    // Tangent from inside: the center is on the same side of each side as the
    // opposite vertex.
    c.holds(o::signed_distance(k.center, t.b, t.c) * o::signed_distance(t.a, t.b, t.c) > 0 &&
                o::signed_distance(k.center, t.c, t.a) * o::signed_distance(t.b, t.c, t.a) > 0 &&
                o::signed_distance(k.center, t.a, t.b) * o::signed_distance(t.c, t.a, t.b) > 0,
            "center outside the triangle");
  });
  run(r, "excircle", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const Circ k = g::excircle<double>(t.a, t.b, t.c);
    c.zero(o::line_distance(k.center, t.b, t.c) - k.radius, "not tangent to BC");
    c.zero(o::line_distance(k.center, t.c, t.a) - k.radius, "not tangent to line CA");
    c.zero(o::line_distance(k.center, t.a, t.b) - k.radius, "not tangent to line AB");
    c.holds(o::signed_distance(k.center, t.b, t.c) * o::signed_distance(t.a, t.b, t.c) < 0, "center not beyond BC");
  });
  run(r, "mixtilinear-incircle", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const Circ k = g::mixtilinear_incircle<double>(t.a, t.b, t.c);
    mixtilinear_checks(c, t, k.center, k.radius);
  });
  run(r, "diam", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = a + g.unit() * g.uniform(0.5, 3);
    const Circ k = g::diameter_circle<double>(a, b);
    c.zero(on_circle(a, k), "A off");
    c.zero(on_circle(b, k), "B off");
    // Thales: any other point of the circle sees AB at a right angle.
    const V2 x = k.center + o::unit(g.angle()) * k.radius;
    if ((x - a).norm() > 1e-3 && (x - b).norm() > 1e-3)
      c.zero((a - x).normalized().dot((b - x).normalized()), "angle AXB not right");
  });
  run(r, "coa", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = g.point();
    const Circ k = g::circle_at_through<double>(a, b);
    c.near(k.center, a, "center moved");
    c.zero(on_circle(b, k), "point off");
  });

  // --- numbers ------------------------------------------------------------
  run(r, "area", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    c.zero(g::triangle_area<double>(t.a, t.b, t.c) - o::heron_area(t.a, t.b, t.c), "shoelace vs Heron");
  });
  run(r, "dist", n, rng, [](Checker& c, Rng& g) {
    const V2 a = g.point(), b = g.point();
    c.zero(g::dist<double>(a, b) - std::hypot(a.x() - b.x(), a.y() - b.y()), "vs hypot");
  });
  run(r, "uangle", n, rng, [](Checker& c, Rng& g) {
    const Triangle t = random_triangle(g);
    const double want = std::acos((t.a - t.b).normalized().dot((t.c - t.b).normalized()));
    c.zero(g::undirected_angle<double>(t.a, t.b, t.c) - want, "vs arccos of the normalized dot product");
    // Angle sum of a triangle.
    c.zero(g::undirected_angle<double>(t.a, t.b, t.c) + g::undirected_angle<double>(t.b, t.c, t.a) +
               g::undirected_angle<double>(t.c, t.a, t.b) - kPi,
           "angle sum minus pi");
  });
  run(r, "arithmetic", n, rng, [](Checker& c, Rng& g) {
    const double x = g.uniform(0.1, 3), y = g.uniform(0.1, 3);
    c.zero(geom::pow(x, y) - std::exp(y * std::log(x)), "pow");
    c.zero(geom::sqrt(x) * geom::sqrt(x) - x, "sqrt");
    c.zero(geom::kPi - kPi, "pi");
  });

  char buf[96];
  std::snprintf(buf, sizeof buf, "%ld defining-property checks, %ld above 1e-9", r.checks, r.failed);
  r.summary = buf;
  return r;
}

}  // namespace gmb::testing
