#pragma once

#include <utility>

#include "gmb/geom/primitives.hpp"

// Closed-form constructions of the geometry library. Every function is a
// template over the scalar, so the same code builds tape expressions and
// evaluates plain doubles.

namespace gmb::geom {

// ---------------------------------------------------------------------------
// Points

template <typename S>
Vec2<S> midpoint(const Vec2<S>& a, const Vec2<S>& b) {
  return (a + b) * 0.5;
}

template <typename S>
Vec2<S> centroid(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return (a + b + c) / 3.0;
}

template <typename S>
Vec2<S> circumcenter(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const Vec2<S> ab = b - a;
  const Vec2<S> ac = c - a;
  const S d = cross(ab, ac) * 2.0;
  const S nb = squared_norm(ab);
  const S nc = squared_norm(ac);
  const S ux = (ac.y() * nb - ab.y() * nc) / d;
  const S uy = (ab.x() * nc - ac.x() * nb) / d;
  return a + vec(ux, uy);
}

// Weighted combination (wa A + wb B + wc C) / (wa + wb + wc).
template <typename S>
Vec2<S> barycentric(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, const S& wa, const S& wb,
                    const S& wc) {
  return (a * wa + b * wb + c * wc) / (wa + wb + wc);
}

template <typename S>
Vec2<S> incenter(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return barycentric(a, b, c, dist(b, c), dist(c, a), dist(a, b));
}

// Excenter opposite A.
template <typename S>
Vec2<S> excenter(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return barycentric(a, b, c, -dist(b, c), dist(c, a), dist(a, b));
}

template <typename S>
Vec2<S> orthocenter(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return a + b + c - circumcenter(a, b, c) * 2.0;
}

template <typename S>
Vec2<S> foot(const Vec2<S>& p, const Line<S>& l) {
  return l.p1 + direction(l) * projection_coefficient(p, l);
}

template <typename S>
Vec2<S> reflect_point(const Vec2<S>& p, const Line<S>& l) {
  return foot(p, l) * 2.0 - p;
}

// Harmonic conjugate of c with respect to segment ab. Off-line inputs are
// projected onto ab first.
template <typename S>
Vec2<S> harmonic_conjugate(const Vec2<S>& c, const Vec2<S>& a, const Vec2<S>& b) {
  const S t = projection_coefficient(c, Line<S>{a, b});
  const S s = t / (t * 2.0 - 1.0);
  return a + (b - a) * s;
}

template <typename S>
Vec2<S> intersect_lines(const Line<S>& l1, const Line<S>& l2) {
  const Vec2<S> d1 = direction(l1);
  const Vec2<S> d2 = direction(l2);
  const S t = cross(l2.p1 - l1.p1, d2) / cross(d1, d2);
  return l1.p1 + d1 * t;
}

namespace detail {

// Signed doubled areas of (p,b,c), (a,p,c), (a,b,p): barycentrics of p.
template <typename S>
void signed_barycentrics(const Vec2<S>& p, const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, S& u,
                         S& v, S& w) {
  u = cross(b - p, c - p);
  v = cross(c - p, a - p);
  w = cross(a - p, b - p);
}

}  // namespace detail

template <typename S>
Vec2<S> isogonal_conjugate(const Vec2<S>& p, const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  S u, v, w;
  detail::signed_barycentrics(p, a, b, c, u, v, w);
  const S la = squared_norm(c - b);
  const S lb = squared_norm(a - c);
  const S lc = squared_norm(b - a);
  return barycentric(a, b, c, la * v * w, lb * u * w, lc * u * v);
}

template <typename S>
Vec2<S> isotomic_conjugate(const Vec2<S>& p, const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  S u, v, w;
  detail::signed_barycentrics(p, a, b, c, u, v, w);
  return barycentric(a, b, c, v * w, u * w, u * v);
}

// Factor bc / (s (s - a)) = 1 / cos^2(A/2) scaling the A-incenter ray to
// the A-mixtilinear incircle.
template <typename S>
S mixtilinear_scale(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const S la = dist(b, c);
  const S lb = dist(c, a);
  const S lc = dist(a, b);
  const S s = (la + lb + lc) * 0.5;
  return lb * lc / (s * (s - la));
}

template <typename S>
Vec2<S> mixtilinear_incenter(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return a + (incenter(a, b, c) - a) * mixtilinear_scale(a, b, c);
}

// Midpoint of arc AB of circle (ABC); `same_side` picks the arc through C.
template <typename S>
Vec2<S> arc_midpoint(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, bool same_side) {
  const Vec2<S> o = circumcenter(a, b, c);
  const S r = dist(o, a);
  const Vec2<S> m = midpoint(a, b);
  const Vec2<S> ab = b - a;
  const Vec2<S> n = perp(ab) / norm(ab);
  const S side_c = dot(c - m, n);
  const Vec2<S> plus = o + n * r;
  const Vec2<S> minus = o - n * r;
  return same_side ? select(side_c, plus, minus) : select(side_c, minus, plus);
}

// ---------------------------------------------------------------------------
// Lines

template <typename S>
Line<S> perpendicular_bisector(const Vec2<S>& a, const Vec2<S>& b) {
  const Vec2<S> m = midpoint(a, b);
  return {m, m + perp(b - a)};
}

template <typename S>
Line<S> perpendicular_at(const Vec2<S>& p, const Line<S>& l) {
  return {p, p + perp(direction(l))};
}

// Reflection of line AD in the bisector of angle A.
template <typename S>
Line<S> isogonal_line(const Vec2<S>& d, const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const Vec2<S> ab = b - a;
  const Vec2<S> ac = c - a;
  const Vec2<S> bis = ab / norm(ab) + ac / norm(ac);
  const Vec2<S> u = bis / norm(bis);
  const Vec2<S> v = d - a;
  const Vec2<S> reflected = u * (dot(v, u) * 2.0) - v;
  return {a, a + reflected};
}

// Line from A through the reflection, in the midpoint of BC, of AD's foot on BC.
template <typename S>
Line<S> isotomic_line(const Vec2<S>& d, const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const Vec2<S> x = intersect_lines(Line<S>{a, d}, Line<S>{b, c});
  return {a, b + c - x};
}

template <typename S>
Line<S> reflect_line(const Line<S>& l, const Line<S>& mirror) {
  return {reflect_point(l.p1, mirror), reflect_point(l.p2, mirror)};
}

// ---------------------------------------------------------------------------
// Circles

template <typename S>
Circle<S> circle_through(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const Vec2<S> o = circumcenter(a, b, c);
  return {o, dist(o, a)};
}

template <typename S>
S triangle_area(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  return abs(cross(b - a, c - a)) * 0.5;
}

template <typename S>
Circle<S> incircle(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const S s = (dist(b, c) + dist(c, a) + dist(a, b)) * 0.5;
  return {incenter(a, b, c), triangle_area(a, b, c) / s};
}

template <typename S>
Circle<S> excircle(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const S la = dist(b, c);
  const S s = (la + dist(c, a) + dist(a, b)) * 0.5;
  return {excenter(a, b, c), triangle_area(a, b, c) / (s - la)};
}

template <typename S>
Circle<S> mixtilinear_incircle(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const Circle<S> in = incircle(a, b, c);
  const S k = mixtilinear_scale(a, b, c);
  return {a + (in.center - a) * k, in.radius * k};
}

template <typename S>
Circle<S> diameter_circle(const Vec2<S>& a, const Vec2<S>& b) {
  return {midpoint(a, b), dist(a, b) * 0.5};
}

// Circle centered at `center` passing through `through`.
template <typename S>
Circle<S> circle_at_through(const Vec2<S>& center, const Vec2<S>& through) {
  return {center, dist(center, through)};
}

// ---------------------------------------------------------------------------
// Numbers

// Angle ABC in [0, pi].
template <typename S>
S undirected_angle(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const Vec2<S> u = a - b;
  const Vec2<S> v = c - b;
  return atan2(abs(cross(u, v)), dot(u, v));
}

// ---------------------------------------------------------------------------
// Intersections with two roots. The first element is the "+" branch.

template <typename S>
std::pair<Vec2<S>, Vec2<S>> line_circle_roots(const Line<S>& l, const Circle<S>& c) {
  const Vec2<S> d = direction(l);
  const Vec2<S> u = d / norm(d);
  const Vec2<S> f = l.p1 + u * dot(c.center - l.p1, u);
  const S h = sqrt(hinge(c.radius * c.radius - squared_norm(c.center - f)));
  return {f + u * h, f - u * h};
}

template <typename S>
std::pair<Vec2<S>, Vec2<S>> circle_circle_roots(const Circle<S>& c1, const Circle<S>& c2) {
  const Vec2<S> e = c2.center - c1.center;
  const S d2 = squared_norm(e);
  const S d = sqrt(d2);
  const S along = (d2 + c1.radius * c1.radius - c2.radius * c2.radius) / (d * 2.0);
  const S h = sqrt(hinge(c1.radius * c1.radius - along * along));
  const Vec2<S> eu = e / d;
  const Vec2<S> base = c1.center + eu * along;
  const Vec2<S> n = perp(eu);
  return {base + n * h, base - n * h};
}

// Zero iff the line meets the circle.
template <typename S>
S line_circle_gap(const Line<S>& l, const Circle<S>& c) {
  return hinge(distance_to_line(c.center, l) - c.radius);
}

// Zero iff the circles meet: |r1 - r2| <= d <= r1 + r2.
template <typename S>
S circle_circle_gap(const Circle<S>& c1, const Circle<S>& c2) {
  const S d = dist(c1.center, c2.center);
  return hinge(d - (c1.radius + c2.radius)) + hinge(abs(c1.radius - c2.radius) - d);
}

}  // namespace gmb::geom
