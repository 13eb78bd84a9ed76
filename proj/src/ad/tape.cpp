#include "gmb/ad/tape.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gmb::ad {

namespace {

std::atomic<std::uint32_t> next_serial{1};

double stable_sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double stable_softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Param: return "param";
    case Op::Const: return "const";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Neg: return "neg";
    case Op::Sqrt: return "sqrt";
    case Op::Pow: return "pow";
    case Op::Abs: return "abs";
    case Op::Min: return "min";
    case Op::Max: return "max";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Atan2: return "atan2";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sigmoid: return "sigmoid";
    case Op::Softplus: return "softplus";
    case Op::Select: return "select";
  }
  return "?";
}

int op_arity(Op op) {
  switch (op) {
    case Op::Param:
    case Op::Const: return 0;
    case Op::Neg:
    case Op::Sqrt:
    case Op::Abs:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Log:
    case Op::Sigmoid:
    case Op::Softplus: return 1;
    case Op::Select: return 3;
    default: return 2;
  }
}

double eval_op(Op op, double a, double b, double c) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    case Op::Neg: return -a;
    case Op::Sqrt: return std::sqrt(a);
    case Op::Pow: return std::pow(a, b);
    case Op::Abs: return std::abs(a);
    case Op::Min: return a <= b ? a : b;
    case Op::Max: return a >= b ? a : b;
    case Op::Sin: return std::sin(a);
    case Op::Cos: return std::cos(a);
    case Op::Atan2: return std::atan2(a, b);
    case Op::Exp: return std::exp(a);
    case Op::Log: return std::log(a);
    case Op::Sigmoid: return stable_sigmoid(a);
    case Op::Softplus: return stable_softplus(a);
    case Op::Select: return a >= 0 ? b : c;
    case Op::Param:
    case Op::Const: break;
  }
  throw std::logic_error("eval_op: leaf op");
}

Tape::Tape() : serial_(next_serial.fetch_add(1)) {}

void Tape::check(ScalarRef ref) const {
  if (ref.tape != serial_) throw std::invalid_argument("ScalarRef used with a different tape");
  if (ref.index >= nodes_.size()) throw std::out_of_range("ScalarRef index out of range");
}

ScalarRef Tape::new_param(double init) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({Op::Param, {}, init});
  eager_.push_back(init);
  param_slot_.push_back(static_cast<std::uint32_t>(params_.size()));
  ScalarRef ref{index, serial_};
  params_.push_back(ref);
  return ref;
}

ScalarRef Tape::constant(double value) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({Op::Const, {}, value});
  eager_.push_back(value);
  param_slot_.push_back(ScalarRef::kInvalid);
  return {index, serial_};
}

ScalarRef Tape::apply(Op op, std::span<const ScalarRef> args) {
  if (op == Op::Param || op == Op::Const) throw std::invalid_argument("apply: use new_param/constant");
  if (static_cast<int>(args.size()) != op_arity(op)) throw std::invalid_argument("apply: arity mismatch");
  Node node{op, {}, 0.0};
  double in[3] = {0, 0, 0};
  for (std::size_t i = 0; i < args.size(); ++i) {
    check(args[i]);
    node.in[i] = args[i].index;
    in[i] = eager_[args[i].index];
  }
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(node);
  eager_.push_back(eval_op(op, in[0], in[1], in[2]));
  param_slot_.push_back(ScalarRef::kInvalid);
  return {index, serial_};
}

void Tape::add_loss(ScalarRef node, double weight) {
  check(node);
  if (!std::isfinite(weight) || weight < 0) throw std::invalid_argument("loss weight must be finite and >= 0");
  losses_.push_back({node, weight});
}

double Tape::initial_value(ScalarRef ref) const {
  check(ref);
  return eager_[ref.index];
}

Eigen::VectorXd Tape::initial_params() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(params_.size()));
  for (std::size_t i = 0; i < params_.size(); ++i) out[static_cast<Eigen::Index>(i)] = nodes_[params_[i].index].payload;
  return out;
}

bool Tape::forward(const Eigen::Ref<const Eigen::VectorXd>& params, std::vector<double>& values) const {
  if (static_cast<std::size_t>(params.size()) != params_.size())
    throw std::invalid_argument("forward: parameter vector length mismatch");
  values.resize(nodes_.size());
  bool finite = true;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    double v;
    switch (n.op) {
      case Op::Param: v = params[param_slot_[i]]; break;
      case Op::Const: v = n.payload; break;
      default: {
        const int arity = op_arity(n.op);
        const double a = values[n.in[0]];
        const double b = arity > 1 ? values[n.in[1]] : 0.0;
        const double c = arity > 2 ? values[n.in[2]] : 0.0;
        v = eval_op(n.op, a, b, c);
      }
    }
    values[i] = v;
    finite = finite && std::isfinite(v);
  }
  return finite;
}

double Tape::total_loss(const std::vector<double>& values) const {
  double total = 0.0;
  for (const LossRoot& l : losses_) total += l.weight * values[l.node.index];
  return total;
}

EvalStatus Tape::backward(std::uint32_t last, std::vector<double>& adj, const std::vector<double>& values,
                          Eigen::Ref<Eigen::VectorXd> out) const {
  out.setZero();
  for (std::int64_t i = last; i >= 0; --i) {
    const double g = adj[static_cast<std::size_t>(i)];
    if (g == 0.0) continue;
    if (!std::isfinite(g)) return EvalStatus::NonFiniteGradient;
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    const double v = values[static_cast<std::size_t>(i)];
    const std::uint32_t ia = n.in[0], ib = n.in[1], ic = n.in[2];
    switch (n.op) {
      case Op::Param: out[param_slot_[static_cast<std::size_t>(i)]] += g; break;
      case Op::Const: break;
      case Op::Add: adj[ia] += g; adj[ib] += g; break;
      case Op::Sub: adj[ia] += g; adj[ib] -= g; break;
      case Op::Mul:
        adj[ia] += g * values[ib];
        adj[ib] += g * values[ia];
        break;
      case Op::Div: {
        const double b = values[ib];
        adj[ia] += g / b;
        adj[ib] -= g * values[ia] / (b * b);
        break;
      }
      case Op::Neg: adj[ia] -= g; break;
      // sqrt'(0) is taken as 0 so that clamped discriminants and coincident
      // points do not poison the whole gradient.
      case Op::Sqrt:
        if (v > 0) adj[ia] += g * 0.5 / v;
        break;
      case Op::Pow: {
        const double a = values[ia], b = values[ib];
        if (b != 0.0) adj[ia] += g * b * std::pow(a, b - 1.0);
        if (a > 0) adj[ib] += g * v * std::log(a);
        break;
      }
      case Op::Abs:
        if (values[ia] > 0) adj[ia] += g;
        else if (values[ia] < 0) adj[ia] -= g;
        break;
      case Op::Min:
        if (values[ia] <= values[ib]) adj[ia] += g;
        else adj[ib] += g;
        break;
      case Op::Max:
        if (values[ia] >= values[ib]) adj[ia] += g;
        else adj[ib] += g;
        break;
      case Op::Sin: adj[ia] += g * std::cos(values[ia]); break;
      case Op::Cos: adj[ia] -= g * std::sin(values[ia]); break;
      case Op::Atan2: {
        const double y = values[ia], x = values[ib];
        const double r2 = x * x + y * y;
        if (r2 > 0) {
          adj[ia] += g * x / r2;
          adj[ib] -= g * y / r2;
        }
        break;
      }
      case Op::Exp: adj[ia] += g * v; break;
      case Op::Log: adj[ia] += g / values[ia]; break;
      case Op::Sigmoid: adj[ia] += g * v * (1.0 - v); break;
      case Op::Softplus: adj[ia] += g * stable_sigmoid(values[ia]); break;
      case Op::Select:
        if (values[ia] >= 0) adj[ib] += g;
        else adj[ic] += g;
        break;
    }
  }
  for (Eigen::Index k = 0; k < out.size(); ++k)
    if (!std::isfinite(out[k])) return EvalStatus::NonFiniteGradient;
  return EvalStatus::Ok;
}

EvalStatus Tape::gradient(ScalarRef root, const std::vector<double>& values, std::vector<double>& adjoint,
                          Eigen::Ref<Eigen::VectorXd> out) const {
  check(root);
  if (values.size() != nodes_.size()) throw std::invalid_argument("gradient: stale value buffer");
  if (static_cast<std::size_t>(out.size()) != params_.size()) throw std::invalid_argument("gradient: output size");
  if (!std::isfinite(values[root.index])) return EvalStatus::NonFiniteValue;
  adjoint.assign(root.index + 1, 0.0);
  adjoint[root.index] = 1.0;
  return backward(root.index, adjoint, values, out);
}

EvalStatus Tape::loss_gradient(const std::vector<double>& values, std::vector<double>& adjoint,
                               Eigen::Ref<Eigen::VectorXd> out) const {
  if (values.size() != nodes_.size()) throw std::invalid_argument("gradient: stale value buffer");
  if (static_cast<std::size_t>(out.size()) != params_.size()) throw std::invalid_argument("gradient: output size");
  if (losses_.empty()) {
    out.setZero();
    return EvalStatus::Ok;
  }
  std::uint32_t last = 0;
  for (const LossRoot& l : losses_) last = std::max(last, l.node.index);
  adjoint.assign(last + 1, 0.0);
  for (const LossRoot& l : losses_) {
    if (!std::isfinite(values[l.node.index])) return EvalStatus::NonFiniteValue;
    adjoint[l.node.index] += l.weight;
  }
  return backward(last, adjoint, values, out);
}

std::string Tape::dump() const {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    std::snprintf(buf, sizeof buf, "%zu %s", i, std::string(op_name(n.op)).c_str());
    out += buf;
    for (int k = 0; k < op_arity(n.op); ++k) {
      std::snprintf(buf, sizeof buf, " %u", n.in[static_cast<std::size_t>(k)]);
      out += buf;
    }
    if (n.op == Op::Const || n.op == Op::Param) {
      std::snprintf(buf, sizeof buf, " %.17g", n.payload);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace gmb::ad
