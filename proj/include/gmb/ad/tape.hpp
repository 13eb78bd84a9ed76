#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gmb::ad {

enum class Op : std::uint8_t {
  Param,
  Const,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Sqrt,
  Pow,
  Abs,
  Min,
  Max,
  Sin,
  Cos,
  Atan2,
  Exp,
  Log,
  Sigmoid,
  Softplus,
  Select,  // (cond, a, b): a when cond >= 0, else b
};

std::string_view op_name(Op op);
int op_arity(Op op);

// Handle to one node of a Tape. Carries the issuing tape's serial so that
// cross-tape use is caught at construction time.
struct ScalarRef {
  static constexpr std::uint32_t kInvalid = 0xffffffffu;

  std::uint32_t index = kInvalid;
  std::uint32_t tape = 0;

  bool valid() const { return index != kInvalid; }
  friend bool operator==(const ScalarRef&, const ScalarRef&) = default;
};

struct Node {
  Op op;
  std::array<std::uint32_t, 3> in{};
  double payload = 0.0;  // constant value, or initial value for Param
};

struct LossRoot {
  ScalarRef node;
  double weight;
};

enum class EvalStatus { Ok, NonFiniteValue, NonFiniteGradient };

// Append-only scalar computation graph. Nodes only reference earlier nodes,
// so node order is a topological order. Each appended node is evaluated
// eagerly at the initial parameter values, which lets graph construction
// inspect intermediate values.
//
// After construction the tape is read-only: forward() and gradient() take
// caller-owned scratch buffers and may run concurrently.
class Tape {
 public:
  Tape();

  ScalarRef new_param(double init);
  ScalarRef constant(double value);
  ScalarRef apply(Op op, std::span<const ScalarRef> args);
  ScalarRef apply(Op op, std::initializer_list<ScalarRef> args) {
    return apply(op, std::span<const ScalarRef>(args.begin(), args.size()));
  }
  void add_loss(ScalarRef node, double weight);

  std::size_t size() const { return nodes_.size(); }
  std::size_t num_params() const { return params_.size(); }
  std::uint32_t serial() const { return serial_; }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::span<const ScalarRef> params() const { return params_; }
  std::span<const LossRoot> losses() const { return losses_; }

  // Value computed at construction time (initial parameter values).
  double initial_value(ScalarRef ref) const;
  Eigen::VectorXd initial_params() const;

  // Evaluates all nodes in order. Returns false if any value is non-finite;
  // values are still fully populated per IEEE semantics.
  bool forward(const Eigen::Ref<const Eigen::VectorXd>& params,
               std::vector<double>& values) const;

  // Sum of weight * value over the registered loss roots.
  double total_loss(const std::vector<double>& values) const;

  // d(root)/d(param slot) by reverse accumulation. `values` must come from a
  // forward() call with the same parameters.
  EvalStatus gradient(ScalarRef root, const std::vector<double>& values,
                      std::vector<double>& adjoint,
                      Eigen::Ref<Eigen::VectorXd> out) const;

  // Gradient of total_loss().
  EvalStatus loss_gradient(const std::vector<double>& values,
                           std::vector<double>& adjoint,
                           Eigen::Ref<Eigen::VectorXd> out) const;

  // One node per line: "<id> <op> <inputs...> [payload]".
  std::string dump() const;

 private:
  void check(ScalarRef ref) const;
  EvalStatus backward(std::uint32_t last, std::vector<double>& adjoint,
                      const std::vector<double>& values,
                      Eigen::Ref<Eigen::VectorXd> out) const;

  std::uint32_t serial_;
  std::vector<Node> nodes_;
  std::vector<double> eager_;
  std::vector<ScalarRef> params_;
  std::vector<std::uint32_t> param_slot_;  // node index -> slot, or kInvalid
  std::vector<LossRoot> losses_;
};

// Forward semantics shared by the tape and the scalar overloads.
double eval_op(Op op, double a, double b, double c);

}  // namespace gmb::ad
