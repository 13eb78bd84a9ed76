#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gmb/io/model.hpp"
#include "suites.hpp"

namespace gmb::testing {

namespace {
constexpr std::size_t kKeptFailures = 8;

double corner_angle_deg(const V2& v, const V2& u, const V2& w) {
  const V2 a = (u - v).normalized(), b = (w - v).normalized();
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0)) * 180.0 / 3.141592653589793;
}
}  // namespace

void SuiteResult::check(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failed;
  if (failures.size() < kKeptFailures) failures.push_back(what);
}

Triangle random_triangle(Rng& rng, double min_side, double min_angle_deg) {
  for (;;) {
    Triangle t{rng.point(), rng.point(), rng.point()};
    if ((t.a - t.b).norm() < min_side || (t.b - t.c).norm() < min_side || (t.c - t.a).norm() < min_side) continue;
    if (corner_angle_deg(t.a, t.b, t.c) < min_angle_deg || corner_angle_deg(t.b, t.c, t.a) < min_angle_deg ||
        corner_angle_deg(t.c, t.a, t.b) < min_angle_deg)
      continue;
    return t;
  }
}

Triangle random_acute_triangle(Rng& rng) {
  for (;;) {
    Triangle t = random_triangle(rng);
    if (corner_angle_deg(t.a, t.b, t.c) < 85 && corner_angle_deg(t.b, t.c, t.a) < 85 &&
        corner_angle_deg(t.c, t.a, t.b) < 85)
      return t;
  }
}

V2 random_interior_point(Rng& rng, const Triangle& t) {
  const double u = rng.uniform(0.15, 1.0), v = rng.uniform(0.15, 1.0), w = rng.uniform(0.15, 1.0);
  return (t.a * u + t.b * v + t.c * w) / (u + v + w);
}

std::string corpus_path(const std::string& file) { return std::string(GMB_CORPUS_DIR) + "/" + file; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SolveRecord solve_with_seed(const dsl::ValidatedProgram& program, const opt::OptimizerConfig& config) {
  SolveRecord rec;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(config.seed);
  const lower::CompiledProblem problem = lower::lower_program(program, rng);
  rec.result = opt::run(problem, config);
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rec.found = rec.result.found();
  rec.attempts = static_cast<int>(rec.result.report.attempts.size());
  rec.first_attempt_success =
      !rec.result.report.attempts.empty() && rec.result.report.attempts.front().outcome.status == opt::AttemptStatus::Success;
  if (rec.found) {
    for (const io::EvalEntry& e : io::evaluate_goals(problem, rec.result.models.front(), 10.0 * config.eps)) {
      ++rec.evals_total;
      rec.evals_passed += e.pass ? 1 : 0;
    }
  }
  return rec;
}

}  // namespace gmb::testing
