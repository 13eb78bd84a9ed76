#include "gmb/opt/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace gmb::opt {

using lower::CompiledProblem;

void validate_config(const OptimizerConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(c.n_models >= 1, "n_models must be positive");
  require(c.n_inits >= 1, "n_inits must be positive");
  require(c.max_tries >= 1, "max_tries must be positive");
  require(c.learning_rate > 0 && std::isfinite(c.learning_rate), "learning rate must be positive");
  require(c.decay > 0 && c.decay <= 1, "decay must lie in (0, 1]");
  require(c.max_iters >= 1, "max_iters must be positive");
  require(c.eps > 0 && std::isfinite(c.eps), "eps must be positive");
  require(c.parallelism >= 1, "parallelism must be positive");
  require(c.momentum >= 0 && c.momentum < 1, "momentum must lie in [0, 1)");
  require(c.decay_every >= 1, "decay interval must be positive");
  require(c.trace_every >= 1, "trace interval must be positive");
}

double learning_rate_at(const OptimizerConfig& config, int iteration) {
  double factor = 1.0;
  for (int stage = iteration / config.decay_every; stage > 0; --stage) factor *= config.decay;
  return config.learning_rate * factor;
}

std::string_view status_name(AttemptStatus status) {
  switch (status) {
    case AttemptStatus::Success: return "success";
    case AttemptStatus::FailedMaxIters: return "failed-max-iters";
    case AttemptStatus::FailedNonFinite: return "failed-non-finite";
    case AttemptStatus::RejectedDuplicate: return "rejected-duplicate";
  }
  return "?";
}

std::vector<Initialization> sample_initializations(const CompiledProblem& problem, int n, std::mt19937_64& rng) {
  const ad::Tape& tape = *problem.tape;
  std::vector<Initialization> out;
  std::vector<double> values;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(problem.priors.size()));
    for (std::size_t s = 0; s < problem.priors.size(); ++s) {
      const lower::SlotPrior& p = problem.priors[s];
      x[static_cast<Eigen::Index>(s)] = p.mean + p.stddev * normal(rng);
    }
    tape.forward(x, values);
    double loss = tape.total_loss(values);
    if (!std::isfinite(loss)) loss = std::numeric_limits<double>::infinity();
    out.push_back({std::move(x), loss});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Initialization& a, const Initialization& b) { return a.loss < b.loss; });
  return out;
}

OptimizationOutcome descend(const CompiledProblem& problem, const Eigen::VectorXd& init,
                            const OptimizerConfig& config) {
  const ad::Tape& tape = *problem.tape;
  if (init.size() != static_cast<Eigen::Index>(tape.num_params()))
    throw std::invalid_argument("initialization length does not match the parameter count");

  OptimizationOutcome out;
  Eigen::VectorXd x = init;
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(x.size());
  std::vector<double> values, adjoint;

  for (int k = 0;; ++k) {
    const bool finite = tape.forward(x, values);
    const double loss = tape.total_loss(values);
    if (k == 0) out.initial_loss = loss;
    out.iterations = k;
    out.final_loss = loss;
    if (k % config.trace_every == 0) out.trace.push_back({k, loss});
    if (!finite || !std::isfinite(loss)) {
      out.status = AttemptStatus::FailedNonFinite;
      break;
    }
    out.max_hard_residual = problem.max_hard_residual(values);
    if (out.max_hard_residual < config.eps) {
      out.status = AttemptStatus::Success;
      break;
    }
    if (k == config.max_iters) {
      out.status = AttemptStatus::FailedMaxIters;
      break;
    }
    if (tape.loss_gradient(values, adjoint, grad) != ad::EvalStatus::Ok) {
      out.status = AttemptStatus::FailedNonFinite;
      break;
    }
    velocity = velocity * config.momentum + grad;
    x -= velocity * learning_rate_at(config, k);
  }
  if (out.trace.empty() || out.trace.back().iteration != out.iterations)
    out.trace.push_back({out.iterations, out.final_loss});
  out.params = std::move(x);
  return out;
}

bool check_distinct(const CompiledProblem& problem, const Eigen::VectorXd& params, double d_min) {
  std::vector<double> values;
  if (!problem.tape->forward(params, values)) return false;
  for (const lower::DistinctPair& pair : problem.distinct) {
    const auto a = lower::value_of(pair.a, values);
    const auto b = lower::value_of(pair.b, values);
    if (!((a - b).norm() >= d_min)) return false;
  }
  return true;
}

namespace {

AttemptRecord attempt(const CompiledProblem& problem, const Initialization& init, int index,
                      const OptimizerConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  AttemptRecord rec{index, descend(problem, init.params, config), 0.0};
  if (rec.outcome.status == AttemptStatus::Success &&
      !check_distinct(problem, rec.outcome.params, problem.options.d_min))
    rec.outcome.status = AttemptStatus::RejectedDuplicate;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

RunResult run_ranked(const CompiledProblem& problem, const std::vector<Initialization>& ranked,
                     const OptimizerConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  const int budget = std::min<int>(config.max_tries, static_cast<int>(ranked.size()));
  int next = 0;
  while (next < budget && static_cast<int>(result.models.size()) < config.n_models) {
    const int batch = std::min(config.parallelism, budget - next);
    std::vector<AttemptRecord> records(static_cast<std::size_t>(batch));
    if (batch == 1) {
      records[0] = attempt(problem, ranked[static_cast<std::size_t>(next)], next, config);
    } else {
      std::vector<std::thread> workers;
      for (int i = 0; i < batch; ++i)
        workers.emplace_back([&, i] {
          records[static_cast<std::size_t>(i)] =
              attempt(problem, ranked[static_cast<std::size_t>(next + i)], next + i, config);
        });
      for (auto& w : workers) w.join();
    }
    // Accept in attempt order; attempts past the point where enough models
    // were found are dropped so the report matches a sequential run.
    for (AttemptRecord& rec : records) {
      if (static_cast<int>(result.models.size()) >= config.n_models) break;
      if (rec.outcome.status == AttemptStatus::Success) result.models.push_back(rec.outcome.params);
      result.report.attempts.push_back(std::move(rec));
    }
    next += batch;
  }
  result.report.models_found = static_cast<int>(result.models.size());
  result.report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

RunResult run(const CompiledProblem& problem, const OptimizerConfig& config) {
  validate_config(config);
  std::mt19937_64 rng(config.seed);
  return run_ranked(problem, sample_initializations(problem, config.n_inits, rng), config);
}

}  // namespace gmb::opt
