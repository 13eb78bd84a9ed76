#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gmb/dsl/validate.hpp"
#include "gmb/io/model.hpp"
#include "gmb/lower/lowering.hpp"
#include "gmb/opt/optimizer.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoModel = 1;
constexpr int kExitInvalid = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Parses and validates; reports errors as "<file>:<line>:<col>: ...".
std::optional<gmb::dsl::ValidatedProgram> load(const std::string& path) {
  std::string source;
  if (!read_file(path, source)) {
    std::cerr << path << ": cannot read file\n";
    return std::nullopt;
  }
  try {
    return gmb::dsl::compile_source(source);
  } catch (const gmb::dsl::Error& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return std::nullopt;
  }
}

struct SolveArgs {
  std::string file;
  gmb::opt::OptimizerConfig config;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"svg", "json"};
  bool dump_tape = false;
  double eval_tol = 0.0;  // 0 means 10 * eps
  bool timings = false;
};

int solve(const SolveArgs& args) {
  auto program = load(args.file);
  if (!program) return kExitInvalid;

  bool want_svg = false, want_json = false;
  for (const std::string& f : args.formats) {
    if (f == "svg")
      want_svg = true;
    else if (f == "json")
      want_json = true;
    else {
      std::cerr << "unknown format '" << f << "'\n";
      return kExitInvalid;
    }
  }
  try {
    gmb::opt::validate_config(args.config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  }

  std::mt19937_64 rng(args.config.seed);
  gmb::lower::CompiledProblem problem;
  try {
    problem = gmb::lower::lower_program(*program, rng);
  } catch (const gmb::lower::LoweringError& e) {
    std::cerr << args.file << ": lowering error: " << e.what() << "\n";
    return kExitInvalid;
  }
  if (args.dump_tape) std::cout << problem.tape->dump();

  const gmb::opt::RunResult result = gmb::opt::run(problem, args.config);
  for (const auto& a : result.report.attempts)
    std::cerr << "attempt " << a.index + 1 << ": " << gmb::opt::status_name(a.outcome.status) << " after "
              << a.outcome.iterations << " iterations, loss " << a.outcome.final_loss << "\n";
  if (!result.found()) {
    std::cerr << args.file << ": no model found after " << result.report.attempts.size() << " attempt(s)\n";
    return kExitNoModel;
  }

  const double tol = args.eval_tol > 0 ? args.eval_tol : 10.0 * args.config.eps;
  const std::string stem = fs::path(args.file).stem().string();
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  for (std::size_t k = 0; k < result.models.size(); ++k) {
    gmb::io::Model model;
    try {
      model = gmb::io::extract_model(problem, result.models[k], args.config);
    } catch (const gmb::io::NonFiniteModel& e) {
      std::cerr << args.file << ": " << e.what() << "\n";
      return kExitNoModel;
    }
    const gmb::io::EvalReport evals = gmb::io::evaluate_goals(problem, result.models[k], tol);
    for (const auto& e : evals)
      std::cout << (e.pass ? "PASS " : "FAIL ") << e.source << " (residual " << e.max_residual << ")\n";
    const fs::path base = fs::path(args.out_dir) / (stem + ".model" + std::to_string(k + 1));
    if (want_svg && !write_file(base.string() + ".svg", gmb::io::render_svg(model))) {
      std::cerr << base.string() << ".svg: cannot write\n";
      return kExitInvalid;
    }
    if (want_json &&
        !write_file(base.string() + ".json",
                    gmb::io::emit_json(model, evals, result.report, {.timings = args.timings}))) {
      std::cerr << base.string() << ".json: cannot write\n";
      return kExitInvalid;
    }
  }
  std::cout << "found " << result.models.size() << " model(s)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build numerical models of olympiad geometry problems written in GMBL"};
  app.require_subcommand(0, 1);

  bool list_flag = false;
  app.add_flag("--list-builtins", list_flag, "Print the builtin reference and exit");

  SolveArgs sargs;
  auto& cfg = sargs.config;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a program and write diagrams");
  solve_cmd->add_option("file", sargs.file, "GMBL source file")->required();
  solve_cmd->add_option("--n-models", cfg.n_models, "Models to find")->capture_default_str();
  solve_cmd->add_option("--n-inits", cfg.n_inits, "Initializations to sample")->capture_default_str();
  solve_cmd->add_option("--max-tries", cfg.max_tries, "Maximum descent attempts")->capture_default_str();
  solve_cmd->add_option("--lr", cfg.learning_rate, "Initial learning rate")->capture_default_str();
  solve_cmd->add_option("--decay", cfg.decay, "Learning-rate decay per 1000 iterations")->capture_default_str();
  solve_cmd->add_option("--max-iters", cfg.max_iters, "Iterations per attempt")->capture_default_str();
  solve_cmd->add_option("--eps", cfg.eps, "Hard-residual tolerance")->capture_default_str();
  solve_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  solve_cmd->add_option("--parallelism", cfg.parallelism, "Concurrent attempts")->capture_default_str();
  solve_cmd->add_option("--momentum", cfg.momentum, "Momentum coefficient")->capture_default_str();
  solve_cmd->add_option("--out-dir", sargs.out_dir, "Output directory")->capture_default_str();
  solve_cmd->add_option("--format", sargs.formats, "Output formats (svg,json)")->delimiter(',');
  solve_cmd->add_flag("--dump-tape", sargs.dump_tape, "Print the lowered tape to stdout");
  solve_cmd->add_option("--eval-tol", sargs.eval_tol, "Eval tolerance (default 10 * eps)");
  solve_cmd->add_flag("--timings", sargs.timings, "Include wall-clock times in JSON output");

  std::string check_file;
  CLI::App* check_cmd = app.add_subcommand("check", "Parse and validate a program");
  check_cmd->add_option("file", check_file, "GMBL source file")->required();

  CLI::App* list_cmd = app.add_subcommand("list-builtins", "Print the builtin reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (list_flag || *list_cmd) {
    std::cout << gmb::dsl::builtins_markdown();
    return kExitOk;
  }
  if (*check_cmd) {
    auto program = load(check_file);
    if (!program) return kExitInvalid;
    std::cout << check_file << ": ok (" << program->commands.size() << " commands, "
              << program->declaration_order.size() << " objects)\n";
    return kExitOk;
  }
  if (*solve_cmd) return solve(sargs);
  std::cout << app.help();
  return kExitInvalid;
}
