#include "gmb/io/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gmb::io {

bool operator==(const Model& a, const Model& b) {
  const auto& x = a.config;
  const auto& y = b.config;
  return a.points == b.points && a.lines == b.lines && a.circles == b.circles && a.numbers == b.numbers &&
         a.seed == b.seed && x.n_models == y.n_models && x.n_inits == y.n_inits && x.max_tries == y.max_tries &&
         x.learning_rate == y.learning_rate && x.decay == y.decay && x.max_iters == y.max_iters &&
         x.eps == y.eps && x.parallelism == y.parallelism && x.momentum == y.momentum;
}

namespace {

void require_finite(double v, const std::string& name) {
  if (!std::isfinite(v)) throw NonFiniteModel("object '" + name + "' has a non-finite value");
}

Vec2d checked(const lower::Point& p, const std::vector<double>& values, const std::string& name) {
  const Vec2d v = lower::value_of(p, values);
  require_finite(v.x(), name);
  require_finite(v.y(), name);
  return v;
}

}  // namespace

Model extract_model(const lower::CompiledProblem& problem, const Eigen::VectorXd& params,
                    const opt::OptimizerConfig& config) {
  std::vector<double> values;
  problem.tape->forward(params, values);
  Model m;
  m.seed = config.seed;
  m.config = config;
  for (const lower::NamedObject& o : problem.objects) {
    if (const auto* p = std::get_if<lower::Point>(&o.value)) {
      m.points[o.name] = checked(*p, values, o.name);
    } else if (const auto* l = std::get_if<lower::LineObj>(&o.value)) {
      m.lines[o.name] = {checked(l->p1, values, o.name), checked(l->p2, values, o.name)};
    } else if (const auto* c = std::get_if<lower::CircleObj>(&o.value)) {
      const double r = lower::value_of(c->radius, values);
      require_finite(r, o.name);
      if (!(r > 0)) throw NonFiniteModel("circle '" + o.name + "' has a non-positive radius");
      m.circles[o.name] = {checked(c->center, values, o.name), r};
    } else {
      const double v = lower::value_of(std::get<ad::Var>(o.value), values);
      require_finite(v, o.name);
      m.numbers[o.name] = v;
    }
  }
  return m;
}

EvalReport evaluate_goals(const lower::CompiledProblem& problem, const Eigen::VectorXd& params,
                          double tolerance) {
  std::vector<double> values;
  problem.tape->forward(params, values);
  EvalReport report;
  for (const lower::EvalGoal& goal : problem.evals) {
    EvalEntry e{goal.source, 0.0, true, tolerance};
    for (const auto& r : goal.residuals) {
      const double v = lower::value_of(r.value, values);
      const double miss = r.sense == geom::Sense::Zero ? std::abs(v) : std::max(0.0, -v);
      if (std::isnan(miss) || std::isnan(e.max_residual))
        e.max_residual = std::numeric_limits<double>::quiet_NaN();
      else
        e.max_residual = std::max(e.max_residual, miss);
      e.pass = e.pass && geom::holds_strictly(v, r.sense, tolerance);
    }
    report.push_back(std::move(e));
  }
  return report;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace gmb::io
