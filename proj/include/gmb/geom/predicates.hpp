#pragma once

#include <span>
#include <vector>

#include "gmb/geom/constructions.hpp"

namespace gmb::geom {

// How a residual value encodes satisfaction.
enum class Sense {
  Zero,         // holds iff value == 0
  Positive,     // holds iff value > 0
  NonNegative,  // holds iff value >= 0
};

template <typename S>
struct Residual {
  S value;
  Sense sense = Sense::Zero;
};

template <typename S>
using Residuals = std::vector<Residual<S>>;

// Amount by which a residual misses its target; zero when satisfied (up to
// the boundary for Positive).
template <typename S>
S violation(const Residual<S>& r) {
  if (r.sense == Sense::Zero) return r.value;
  return hinge(-r.value);
}

inline bool holds_strictly(double value, Sense sense, double tolerance) {
  switch (sense) {
    case Sense::Zero: return std::abs(value) < tolerance;
    case Sense::Positive: return value > 0;
    case Sense::NonNegative: return value >= 0;
  }
  return false;
}

namespace pred {

template <typename S>
Residuals<S> zero(std::initializer_list<S> values) {
  Residuals<S> out;
  for (const S& v : values) out.push_back({v, Sense::Zero});
  return out;
}

template <typename S>
Residuals<S> points_equal(const Vec2<S>& p, const Vec2<S>& q) {
  return zero<S>({p.x() - q.x(), p.y() - q.y()});
}

template <typename S>
void append(Residuals<S>& out, const Residuals<S>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Scale-invariant: cross product over the sum of squared side lengths.
template <typename S>
Residuals<S> coll(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  const S scale = squared_norm(b - a) + squared_norm(c - b) + squared_norm(a - c);
  return zero<S>({cross(b - a, c - a) / scale});
}

// Distance to the line relative to the defining segment length.
template <typename S>
Residuals<S> on_line(const Vec2<S>& p, const Line<S>& l) {
  const Vec2<S> d = direction(l);
  return zero<S>({cross(d, p - l.p1) / squared_norm(d)});
}

template <typename S>
Residuals<S> on_circ(const Vec2<S>& p, const Circle<S>& c) {
  return zero<S>({dist(p, c.center) - c.radius});
}

template <typename S>
Residuals<S> on_ray(const Vec2<S>& p, const Vec2<S>& a, const Vec2<S>& b) {
  const Line<S> l{a, b};
  Residuals<S> out = on_line(p, l);
  out.push_back({projection_coefficient(p, l), Sense::NonNegative});
  return out;
}

template <typename S>
Residuals<S> on_seg(const Vec2<S>& p, const Vec2<S>& a, const Vec2<S>& b) {
  const Line<S> l{a, b};
  Residuals<S> out = on_line(p, l);
  const S t = projection_coefficient(p, l);
  out.push_back({t, Sense::NonNegative});
  out.push_back({S(1.0) - t, Sense::NonNegative});
  return out;
}

template <typename S>
Residuals<S> perpendicular(const Line<S>& l1, const Line<S>& l2) {
  const Vec2<S> d1 = direction(l1);
  const Vec2<S> d2 = direction(l2);
  return zero<S>({dot(d1, d2) / (norm(d1) * norm(d2))});
}

template <typename S>
Residuals<S> parallel(const Line<S>& l1, const Line<S>& l2) {
  const Vec2<S> d1 = direction(l1);
  const Vec2<S> d2 = direction(l2);
  return zero<S>({cross(d1, d2) / (norm(d1) * norm(d2))});
}

template <typename S>
Residuals<S> concur(const Line<S>& l1, const Line<S>& l2, const Line<S>& l3) {
  return on_line(intersect_lines(l1, l2), l3);
}

template <typename S>
Residuals<S> cong(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, const Vec2<S>& d) {
  return zero<S>({dist(a, b) - dist(c, d)});
}

template <typename S>
Residuals<S> contri(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, const Vec2<S>& d,
                    const Vec2<S>& e, const Vec2<S>& f) {
  return zero<S>({dist(a, b) - dist(d, e), dist(b, c) - dist(e, f), dist(c, a) - dist(f, d)});
}

// Similarity by proportional sides: AB/DE = BC/EF = CA/FD.
template <typename S>
Residuals<S> sim_tri(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, const Vec2<S>& d,
                     const Vec2<S>& e, const Vec2<S>& f) {
  const S ab = dist(a, b), bc = dist(b, c), ca = dist(c, a);
  const S de = dist(d, e), ef = dist(e, f), fd = dist(f, d);
  return zero<S>({ab * ef - bc * de, bc * fd - ca * ef});
}

template <typename S>
Residuals<S> cycl(std::span<const Vec2<S>> points) {
  const Circle<S> c = circle_through(points[0], points[1], points[2]);
  Residuals<S> out;
  for (std::size_t i = 3; i < points.size(); ++i) append(out, on_circ(points[i], c));
  return out;
}

template <typename S>
Residuals<S> eq_ratio(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c, const Vec2<S>& d,
                      const Vec2<S>& e, const Vec2<S>& f, const Vec2<S>& g, const Vec2<S>& h) {
  return zero<S>({dist(a, b) * dist(g, h) - dist(c, d) * dist(e, f)});
}

template <typename S>
Residuals<S> greater(const S& lhs, const S& rhs) {
  return {{lhs - rhs, Sense::Positive}};
}

template <typename S>
Residuals<S> greater_equal(const S& lhs, const S& rhs) {
  return {{lhs - rhs, Sense::NonNegative}};
}

template <typename S>
Residuals<S> opp_sides(const Vec2<S>& a, const Vec2<S>& b, const Line<S>& l) {
  return {{-(signed_distance(a, l) * signed_distance(b, l)), Sense::Positive}};
}

template <typename S>
Residuals<S> same_side(const Vec2<S>& a, const Vec2<S>& b, const Line<S>& l) {
  return {{signed_distance(a, l) * signed_distance(b, l), Sense::Positive}};
}

// Outside the circle the residual is the gap d - r; where the line cuts the
// circle it is half the chord, so it grows linearly with the separation of the
// two crossings. Penetrations below 1e-12 r^2 in r^2 - d^2 are rounding noise of
// an exact tangency and fall back to the gap.
template <typename S>
Residuals<S> tangent_lc(const Line<S>& l, const Circle<S>& c) {
  const S d = distance_to_line(c.center, l);
  const S gap = d - c.radius;
  const S r2 = c.radius * c.radius;
  const S half_chord = sqrt(hinge(r2 - d * d - r2 * 1e-12));
  return zero<S>({select(gap, gap, max(half_chord, -gap))});
}

template <typename S>
Residuals<S> tangent_cc(const Circle<S>& c1, const Circle<S>& c2) {
  const S d = dist(c1.center, c2.center);
  return zero<S>({min(abs(d - (c1.radius + c2.radius)), abs(d - abs(c1.radius - c2.radius)))});
}

template <typename S>
Residuals<S> tangent_at_lc(const Vec2<S>& a, const Line<S>& l, const Circle<S>& c) {
  Residuals<S> out = on_line(a, l);
  append(out, on_circ(a, c));
  append(out, perpendicular(l, Line<S>{c.center, a}));
  return out;
}

template <typename S>
Residuals<S> tangent_at_cc(const Vec2<S>& a, const Circle<S>& c1, const Circle<S>& c2) {
  Residuals<S> out = on_circ(a, c1);
  append(out, on_circ(a, c2));
  append(out, coll(c1.center, a, c2.center));
  return out;
}

}  // namespace pred

}  // namespace gmb::geom
