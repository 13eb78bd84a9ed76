#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gmb/ad/tape.hpp"
#include "gmb/ad/var.hpp"
#include "gmb/dsl/validate.hpp"
#include "gmb/geom/predicates.hpp"

namespace gmb::lower {

using ad::Var;
using Point = geom::Vec2<Var>;
using LineObj = geom::Line<Var>;
using CircleObj = geom::Circle<Var>;
using GeoObject = std::variant<Point, LineObj, CircleObj, Var>;

class LoweringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoweringOptions {
  double hard_weight = 1.0;
  double existence_weight = 1.0;
  double distinct_weight = 1.0;
  double norm_weight = 1e-3;
  double d_min = 0.1;
  double not_margin = 0.05;
};

// Sampling distribution of one free parameter.
struct SlotPrior {
  double mean = 0.0;
  double stddev = 1.0;
};

enum class SoftKind { Existence, NormRegularizer, Distinctness };

struct HardLoss {
  Var residual;  // violation; the loss is weight * residual^2
  double weight;
  std::string source;
};

struct SoftLoss {
  Var residual;
  double weight;
  SoftKind kind;
};

struct EvalGoal {
  std::string source;
  geom::Residuals<Var> residuals;
};

struct NamedObject {
  std::string name;
  dsl::Type type;
  GeoObject value;
  // Parameter slots created by the command that introduced the object.
  std::vector<std::uint32_t> slots;
};

struct DistinctPair {
  std::string first;  // names, or a description for internal points
  std::string second;
  Point a;
  Point b;
};

struct CompiledProblem {
  LoweringOptions options;
  std::unique_ptr<ad::Tape> tape;
  std::vector<NamedObject> objects;
  std::map<std::string, std::size_t> index;
  std::vector<Point> point_registry;
  std::vector<SlotPrior> priors;  // aligned with tape parameter slots
  // Assert residuals and construction obligations (parameterization
  // constraints, intersection existence); success requires all below eps.
  std::vector<HardLoss> hard;
  std::vector<SoftLoss> soft;
  std::vector<EvalGoal> evals;
  // Pairs that must be separated by at least d_min in an accepted model.
  std::vector<DistinctPair> distinct;

  const NamedObject& object(const std::string& name) const;

  // Largest absolute hard residual (asserts, obligations and intersection
  // existence) under a forward pass.
  double max_hard_residual(const std::vector<double>& values) const;
  std::size_t num_params() const { return tape->num_params(); }
};

// Lowers a validated program. Initial parameter values are drawn from `rng`
// through each slot's prior.
CompiledProblem lower_program(const dsl::ValidatedProgram& program, std::mt19937_64& rng,
                              const LoweringOptions& options = {});

// Same, with every slot initialized at its prior mean.
CompiledProblem lower_program(const dsl::ValidatedProgram& program, const LoweringOptions& options = {});

// Value of a lowered scalar under a forward pass.
inline double value_of(const Var& v, const std::vector<double>& values) {
  return v.is_literal() ? v.value() : values[v.ref().index];
}

inline geom::Vec2<double> value_of(const Point& p, const std::vector<double>& values) {
  return {value_of(p.x(), values), value_of(p.y(), values)};
}

}  // namespace gmb::lower
