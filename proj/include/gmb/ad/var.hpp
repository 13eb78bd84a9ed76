#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "gmb/ad/tape.hpp"

namespace gmb::ad {

// Scalar type used to build tapes through ordinary arithmetic.
//
// A Var is either an untaped literal (no tape, just a double) or a reference
// to a tape node. Operations on two literals fold to a literal, so constant
// subexpressions never reach the tape.
class Var {
 public:
  Var() = default;
  Var(double v) : literal_(v) {}  // NOLINT(google-explicit-constructor)
  Var(Tape* tape, ScalarRef ref) : tape_(tape), ref_(ref) {}

  bool is_literal() const { return tape_ == nullptr; }
  Tape* tape() const { return tape_; }

  // Literal value, or the node's value at the tape's initial parameters.
  double value() const { return tape_ ? tape_->initial_value(ref_) : literal_; }

  // Node reference; literals are materialized as constants on `tape`.
  ScalarRef ref_on(Tape& tape) const {
    if (!tape_) return tape.constant(literal_);
    if (tape_ != &tape) throw std::invalid_argument("Var used with a different tape");
    return ref_;
  }
  ScalarRef ref() const {
    if (!tape_) throw std::logic_error("literal Var has no tape node");
    return ref_;
  }

  Var& operator+=(const Var& o);
  Var& operator-=(const Var& o);
  Var& operator*=(const Var& o);
  Var& operator/=(const Var& o);

 private:
  Tape* tape_ = nullptr;
  ScalarRef ref_{};
  double literal_ = 0.0;
};

namespace detail {

inline Tape* common_tape(const Var& a, const Var& b) {
  if (a.tape() && b.tape() && a.tape() != b.tape()) throw std::invalid_argument("Vars from different tapes");
  return a.tape() ? a.tape() : b.tape();
}

inline Var unary(Op op, const Var& a) {
  if (a.is_literal()) return Var(eval_op(op, a.value(), 0, 0));
  Tape& t = *a.tape();
  return Var(&t, t.apply(op, {a.ref()}));
}

inline Var binary(Op op, const Var& a, const Var& b) {
  Tape* t = common_tape(a, b);
  if (!t) return Var(eval_op(op, a.value(), b.value(), 0));
  return Var(t, t->apply(op, {a.ref_on(*t), b.ref_on(*t)}));
}

}  // namespace detail

inline Var operator+(const Var& a, const Var& b) {
  if (b.is_literal() && b.value() == 0.0 && !a.is_literal()) return a;
  if (a.is_literal() && a.value() == 0.0 && !b.is_literal()) return b;
  return detail::binary(Op::Add, a, b);
}
inline Var operator-(const Var& a, const Var& b) {
  if (b.is_literal() && b.value() == 0.0 && !a.is_literal()) return a;
  return detail::binary(Op::Sub, a, b);
}
inline Var operator*(const Var& a, const Var& b) {
  if (b.is_literal() && b.value() == 1.0 && !a.is_literal()) return a;
  if (a.is_literal() && a.value() == 1.0 && !b.is_literal()) return b;
  return detail::binary(Op::Mul, a, b);
}
inline Var operator/(const Var& a, const Var& b) {
  if (b.is_literal() && b.value() == 1.0 && !a.is_literal()) return a;
  return detail::binary(Op::Div, a, b);
}
inline Var operator-(const Var& a) { return detail::unary(Op::Neg, a); }
inline Var operator+(const Var& a) { return a; }

inline Var& Var::operator+=(const Var& o) { return *this = *this + o; }
inline Var& Var::operator-=(const Var& o) { return *this = *this - o; }
inline Var& Var::operator*=(const Var& o) { return *this = *this * o; }
inline Var& Var::operator/=(const Var& o) { return *this = *this / o; }

inline Var sqrt(const Var& a) { return detail::unary(Op::Sqrt, a); }
inline Var abs(const Var& a) { return detail::unary(Op::Abs, a); }
inline Var sin(const Var& a) { return detail::unary(Op::Sin, a); }
inline Var cos(const Var& a) { return detail::unary(Op::Cos, a); }
inline Var exp(const Var& a) { return detail::unary(Op::Exp, a); }
inline Var log(const Var& a) { return detail::unary(Op::Log, a); }
inline Var sigmoid(const Var& a) { return detail::unary(Op::Sigmoid, a); }
inline Var softplus(const Var& a) { return detail::unary(Op::Softplus, a); }
inline Var pow(const Var& a, const Var& b) { return detail::binary(Op::Pow, a, b); }
inline Var atan2(const Var& y, const Var& x) { return detail::binary(Op::Atan2, y, x); }
inline Var min(const Var& a, const Var& b) { return detail::binary(Op::Min, a, b); }
inline Var max(const Var& a, const Var& b) { return detail::binary(Op::Max, a, b); }

// `a` when cond >= 0, otherwise `b`; gradients flow only through the chosen
// branch.
inline Var select(const Var& cond, const Var& a, const Var& b) {
  if (cond.is_literal()) return cond.value() >= 0 ? a : b;
  Tape* t = cond.tape();
  if ((a.tape() && a.tape() != t) || (b.tape() && b.tape() != t))
    throw std::invalid_argument("Vars from different tapes");
  return Var(t, t->apply(Op::Select, {cond.ref_on(*t), a.ref_on(*t), b.ref_on(*t)}));
}

}  // namespace gmb::ad

namespace gmb {

inline double sigmoid(double x) { return ad::eval_op(ad::Op::Sigmoid, x, 0, 0); }
inline double softplus(double x) { return ad::eval_op(ad::Op::Softplus, x, 0, 0); }
inline double select(double cond, double a, double b) { return cond >= 0 ? a : b; }

// Inverse of softplus, for choosing raw initial values.
inline double softplus_inverse(double y) { return std::log(std::expm1(y)); }

}  // namespace gmb

namespace Eigen {

template <>
struct NumTraits<gmb::ad::Var> : NumTraits<double> {
  using Real = gmb::ad::Var;
  using NonInteger = gmb::ad::Var;
  using Nested = gmb::ad::Var;
  using Literal = gmb::ad::Var;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<gmb::ad::Var, double, BinaryOp> {
  using ReturnType = gmb::ad::Var;
};
template <typename BinaryOp>
struct ScalarBinaryOpTraits<double, gmb::ad::Var, BinaryOp> {
  using ReturnType = gmb::ad::Var;
};

}  // namespace Eigen
