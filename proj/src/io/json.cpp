#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "gmb/io/model.hpp"

namespace gmb::io {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "gmb-json/1";

json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json point(const Vec2d& v) { return json::array({real(v.x()), real(v.y())}); }

json config_json(const opt::OptimizerConfig& c) {
  return {{"n_models", c.n_models},         {"n_inits", c.n_inits},   {"max_tries", c.max_tries},
          {"learning_rate", c.learning_rate}, {"decay", c.decay},       {"max_iters", c.max_iters},
          {"eps", c.eps},                   {"parallelism", c.parallelism}, {"momentum", c.momentum}};
}

void write(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        write(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Coordinate pairs and other scalar arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const json& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: out += format_real(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

Vec2d read_point(const json& j) {
  auto get = [](const json& e) { return e.is_null() ? std::nan("") : e.get<double>(); };
  return {get(j.at(0)), get(j.at(1))};
}

}  // namespace

std::string emit_json(const Model& model, const EvalReport& evals, const opt::RunReport& run,
                      const JsonOptions& options) {
  json points = json::object(), lines = json::object(), circles = json::object(), numbers = json::object();
  for (const auto& [name, p] : model.points) points[name] = point(p);
  for (const auto& [name, l] : model.lines) lines[name] = {{"p1", point(l.p1)}, {"p2", point(l.p2)}};
  for (const auto& [name, c] : model.circles) circles[name] = {{"center", point(c.center)}, {"radius", real(c.radius)}};
  for (const auto& [name, v] : model.numbers) numbers[name] = real(v);

  json eval_list = json::array();
  for (const EvalEntry& e : evals)
    eval_list.push_back(
        {{"source", e.source}, {"max_residual", real(e.max_residual)}, {"pass", e.pass}, {"tolerance", e.tolerance}});

  json attempts = json::array();
  for (const opt::AttemptRecord& a : run.attempts) {
    json trace = json::array();
    for (const opt::LossCheckpoint& c : a.outcome.trace) trace.push_back({c.iteration, real(c.loss)});
    json entry = {{"index", a.index},
                  {"status", std::string(opt::status_name(a.outcome.status))},
                  {"iterations", a.outcome.iterations},
                  {"initial_loss", real(a.outcome.initial_loss)},
                  {"final_loss", real(a.outcome.final_loss)},
                  {"max_hard_residual", real(a.outcome.max_hard_residual)},
                  {"loss_trace", trace}};
    if (options.timings) entry["wall_ms"] = a.wall_ms;
    attempts.push_back(std::move(entry));
  }
  json run_json = {{"attempts", attempts}, {"models_found", run.models_found}};
  if (options.timings) run_json["wall_ms"] = run.wall_ms;

  const json doc = {{"schema", kSchema},
                    {"model",
                     {{"points", points},
                      {"lines", lines},
                      {"circles", circles},
                      {"numbers", numbers},
                      {"seed", model.seed},
                      {"config", config_json(model.config)}}},
                    {"evals", eval_list},
                    {"run", run_json}};
  std::string out;
  write(doc, out, 0);
  out += "\n";
  return out;
}

ParsedDocument parse_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("schema") != kSchema) throw std::runtime_error("unsupported schema");
  ParsedDocument out;
  const json& m = doc.at("model");
  for (const auto& [name, p] : m.at("points").items()) out.model.points[name] = read_point(p);
  for (const auto& [name, l] : m.at("lines").items())
    out.model.lines[name] = {read_point(l.at("p1")), read_point(l.at("p2"))};
  for (const auto& [name, c] : m.at("circles").items())
    out.model.circles[name] = {read_point(c.at("center")), c.at("radius").get<double>()};
  for (const auto& [name, v] : m.at("numbers").items()) out.model.numbers[name] = v.get<double>();
  out.model.seed = m.at("seed").get<std::uint64_t>();
  const json& c = m.at("config");
  auto& cfg = out.model.config;
  cfg.n_models = c.at("n_models").get<int>();
  cfg.n_inits = c.at("n_inits").get<int>();
  cfg.max_tries = c.at("max_tries").get<int>();
  cfg.learning_rate = c.at("learning_rate").get<double>();
  cfg.decay = c.at("decay").get<double>();
  cfg.max_iters = c.at("max_iters").get<int>();
  cfg.eps = c.at("eps").get<double>();
  cfg.parallelism = c.at("parallelism").get<int>();
  cfg.momentum = c.at("momentum").get<double>();
  cfg.seed = out.model.seed;
  for (const json& e : doc.at("evals")) {
    const json& r = e.at("max_residual");
    out.evals.push_back({e.at("source").get<std::string>(), r.is_null() ? std::nan("") : r.get<double>(),
                         e.at("pass").get<bool>(), e.at("tolerance").get<double>()});
  }
  return out;
}

}  // namespace gmb::io
