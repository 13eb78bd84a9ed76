#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "gmb/lower/lowering.hpp"

namespace gmb::opt {

struct OptimizerConfig {
  int n_models = 1;
  int n_inits = 10;
  int max_tries = 3;
  double learning_rate = 0.1;
  double decay = 0.7;
  int max_iters = 5000;
  double eps = 0.001;
  std::uint64_t seed = 0;
  int parallelism = 1;
  double momentum = 0.0;
  int decay_every = 1000;
  // Loss is recorded in the attempt trace every this many iterations.
  int trace_every = 500;
};

// Throws std::invalid_argument on out-of-range fields.
void validate_config(const OptimizerConfig& config);

// Staircase schedule: learning_rate * decay^floor(k / decay_every).
double learning_rate_at(const OptimizerConfig& config, int iteration);

enum class AttemptStatus { Success, FailedMaxIters, FailedNonFinite, RejectedDuplicate };

std::string_view status_name(AttemptStatus status);

struct LossCheckpoint {
  int iteration;
  double loss;
};

struct OptimizationOutcome {
  AttemptStatus status = AttemptStatus::FailedMaxIters;
  Eigen::VectorXd params;
  int iterations = 0;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  double max_hard_residual = 0.0;
  std::vector<LossCheckpoint> trace;
};

struct Initialization {
  Eigen::VectorXd params;
  double loss;
};

// `n` draws from the slot priors, sorted by ascending total loss with
// non-finite losses last.
std::vector<Initialization> sample_initializations(const lower::CompiledProblem& problem, int n,
                                                   std::mt19937_64& rng);

// Gradient descent from `init` until every hard residual is below eps, the
// iteration budget runs out, or a value turns non-finite.
OptimizationOutcome descend(const lower::CompiledProblem& problem, const Eigen::VectorXd& init,
                            const OptimizerConfig& config);

// True iff every pair recorded as distinct is at least d_min apart.
bool check_distinct(const lower::CompiledProblem& problem, const Eigen::VectorXd& params, double d_min);

struct AttemptRecord {
  int index;  // 0-based attempt number, equal to the initialization's rank
  OptimizationOutcome outcome;
  double wall_ms = 0.0;
};

struct RunReport {
  std::vector<AttemptRecord> attempts;
  int models_found = 0;
  double wall_ms = 0.0;
};

struct RunResult {
  std::vector<Eigen::VectorXd> models;
  RunReport report;

  bool found() const { return !models.empty(); }
};

// Samples n_inits initializations from config.seed and consumes them
// best-first with at most max_tries descents.
RunResult run(const lower::CompiledProblem& problem, const OptimizerConfig& config);

// As run(), with caller-supplied initializations consumed in the given order.
RunResult run_ranked(const lower::CompiledProblem& problem, const std::vector<Initialization>& ranked,
                     const OptimizerConfig& config);

}  // namespace gmb::opt
