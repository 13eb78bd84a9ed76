#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gmb/lower/lowering.hpp"
#include "gmb/opt/optimizer.hpp"

namespace gmb::io {

using Vec2d = geom::Vec2<double>;

struct ModelLine {
  Vec2d p1;
  Vec2d p2;
  friend bool operator==(const ModelLine&, const ModelLine&) = default;
};

struct ModelCircle {
  Vec2d center;
  double radius = 0.0;
  friend bool operator==(const ModelCircle&, const ModelCircle&) = default;
};

struct Model {
  std::map<std::string, Vec2d> points;
  std::map<std::string, ModelLine> lines;
  std::map<std::string, ModelCircle> circles;
  std::map<std::string, double> numbers;
  std::uint64_t seed = 0;
  opt::OptimizerConfig config;

  friend bool operator==(const Model& a, const Model& b);
};

class NonFiniteModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluates every named object at `params`.
Model extract_model(const lower::CompiledProblem& problem, const Eigen::VectorXd& params,
                    const opt::OptimizerConfig& config);

struct EvalEntry {
  std::string source;
  double max_residual = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  friend bool operator==(const EvalEntry&, const EvalEntry&) = default;
};

using EvalReport = std::vector<EvalEntry>;

// Zero-type residuals pass when |r| < tolerance; inequalities must hold
// strictly at the model. The reported residual is the largest violation.
EvalReport evaluate_goals(const lower::CompiledProblem& problem, const Eigen::VectorXd& params,
                          double tolerance);

struct SvgOptions {
  double margin = 0.1;
  int width_px = 600;
};

std::string render_svg(const Model& model, const SvgOptions& options = {});

// Optional pieces of the JSON document.
struct JsonOptions {
  bool timings = false;
};

std::string emit_json(const Model& model, const EvalReport& evals, const opt::RunReport& run,
                      const JsonOptions& options = {});

// Reads back the model and eval sections of an emit_json document.
struct ParsedDocument {
  Model model;
  EvalReport evals;
};
ParsedDocument parse_json(const std::string& text);

// Formats a double with 17 significant digits.
std::string format_real(double v);

}  // namespace gmb::io
