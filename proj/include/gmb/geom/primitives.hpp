#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "gmb/ad/var.hpp"

namespace gmb::geom {

// Scalar functions for both double and ad::Var. Unqualified calls inside this
// namespace resolve to the right overload for either scalar.
using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::log;
using std::max;
using std::min;
using std::pow;
using std::sin;
using std::sqrt;
using ad::abs;
using ad::atan2;
using ad::cos;
using ad::exp;
using ad::log;
using ad::max;
using ad::min;
using ad::pow;
using ad::sin;
using ad::sqrt;
using ad::sigmoid;
using ad::softplus;
using ad::select;
using gmb::sigmoid;
using gmb::softplus;
using gmb::select;

inline constexpr double kPi = 3.14159265358979323846;

template <typename S>
using Vec2 = Eigen::Matrix<S, 2, 1>;

template <typename S>
struct Line {
  Vec2<S> p1;
  Vec2<S> p2;
};

template <typename S>
struct Circle {
  Vec2<S> center;
  S radius;
};

template <typename S>
Vec2<S> vec(const S& x, const S& y) {
  return Vec2<S>(x, y);
}

template <typename DA, typename DB>
typename DA::Scalar dot(const Eigen::MatrixBase<DA>& a_, const Eigen::MatrixBase<DB>& b_) {
  const auto a = a_.eval();
  const auto b = b_.eval();
  return a.x() * b.x() + a.y() * b.y();
}

// z-component of the 3D cross product.
template <typename DA, typename DB>
typename DA::Scalar cross(const Eigen::MatrixBase<DA>& a_, const Eigen::MatrixBase<DB>& b_) {
  const auto a = a_.eval();
  const auto b = b_.eval();
  return a.x() * b.y() - a.y() * b.x();
}

template <typename D>
typename D::Scalar squared_norm(const Eigen::MatrixBase<D>& a) {
  return dot(a, a);
}

template <typename D>
typename D::Scalar norm(const Eigen::MatrixBase<D>& a) {
  return sqrt(squared_norm(a));
}

// Counter-clockwise rotation by 90 degrees.
template <typename D>
Vec2<typename D::Scalar> perp(const Eigen::MatrixBase<D>& a_) {
  const auto a = a_.eval();
  return Vec2<typename D::Scalar>(-a.y(), a.x());
}

template <typename S>
S dist(const Vec2<S>& a, const Vec2<S>& b) {
  return norm(b - a);
}

template <typename S>
S hinge(const S& x) {
  return max(x, S(0.0));
}

template <typename S>
Vec2<S> select(const S& cond, const Vec2<S>& a, const Vec2<S>& b) {
  return Vec2<S>(select(cond, a.x(), b.x()), select(cond, a.y(), b.y()));
}

template <typename S>
Vec2<S> unit_at(const S& angle) {
  return Vec2<S>(cos(angle), sin(angle));
}

template <typename S>
Vec2<S> direction(const Line<S>& l) {
  return l.p2 - l.p1;
}

// Signed distance of p from l; positive on the left of p1 -> p2.
template <typename S>
S signed_distance(const Vec2<S>& p, const Line<S>& l) {
  const Vec2<S> d = direction(l);
  return cross(d, p - l.p1) / norm(d);
}

template <typename S>
S distance_to_line(const Vec2<S>& p, const Line<S>& l) {
  return abs(signed_distance(p, l));
}

// Projection coefficient t with foot = p1 + t (p2 - p1).
template <typename S>
S projection_coefficient(const Vec2<S>& p, const Line<S>& l) {
  const Vec2<S> d = direction(l);
  return dot(p - l.p1, d) / squared_norm(d);
}

}  // namespace gmb::geom
