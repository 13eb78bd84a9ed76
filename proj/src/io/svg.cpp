#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "gmb/io/model.hpp"

namespace gmb::io {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

struct Box {
  double x0, y0, x1, y1;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Liang-Barsky clip of the infinite line through p, p + d.
std::optional<std::pair<Vec2d, Vec2d>> clip(const Vec2d& p, const Vec2d& d, const Box& b) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const double pv[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double qv[4] = {p.x() - b.x0, b.x1 - p.x(), p.y() - b.y0, b.y1 - p.y()};
  for (int i = 0; i < 4; ++i) {
    if (pv[i] == 0) {
      if (qv[i] < 0) return std::nullopt;
      continue;
    }
    const double t = qv[i] / pv[i];
    if (pv[i] < 0)
      lo = std::max(lo, t);
    else
      hi = std::min(hi, t);
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
  return std::make_pair(Vec2d(p + d * lo), Vec2d(p + d * hi));
}

}  // namespace

std::string render_svg(const Model& model, const SvgOptions& options) {
  // Drawing coordinates have y pointing down.
  auto flip = [](const Vec2d& v) { return Vec2d(v.x(), -v.y()); };

  bool any = false;
  Box box{0, 0, 0, 0};
  auto include = [&](double x0, double y0, double x1, double y1) {
    if (!any) {
      box = {x0, y0, x1, y1};
      any = true;
    } else {
      box = {std::min(box.x0, x0), std::min(box.y0, y0), std::max(box.x1, x1), std::max(box.y1, y1)};
    }
  };
  for (const auto& [name, p] : model.points) {
    const Vec2d q = flip(p);
    include(q.x(), q.y(), q.x(), q.y());
  }
  for (const auto& [name, c] : model.circles) {
    const Vec2d q = flip(c.center);
    include(q.x() - c.radius, q.y() - c.radius, q.x() + c.radius, q.y() + c.radius);
  }
  for (const auto& [name, l] : model.lines) {
    if (!model.points.empty() || !model.circles.empty()) break;
    // Only lines: frame their defining points.
    for (const Vec2d& v : {flip(l.p1), flip(l.p2)}) include(v.x(), v.y(), v.x(), v.y());
  }

  if (!any) {
    box = {-5, -5, 5, 5};
  } else {
    double w = box.x1 - box.x0, h = box.y1 - box.y0;
    const double base = std::max(w, h) > 0 ? std::max(w, h) : 1.0;
    if (w < 1e-6 * base) {
      box.x0 -= base / 2;
      box.x1 += base / 2;
      w = box.x1 - box.x0;
    }
    if (h < 1e-6 * base) {
      box.y0 -= base / 2;
      box.y1 += base / 2;
      h = box.y1 - box.y0;
    }
    box = {box.x0 - options.margin * w, box.y0 - options.margin * h, box.x1 + options.margin * w,
           box.y1 + options.margin * h};
  }
  const double w = box.x1 - box.x0, h = box.y1 - box.y0;
  const double scale = std::max(w, h);
  const double stroke = scale * 0.004;
  const double dot = scale * 0.008;
  const double font = scale * 0.035;
  const int height_px = static_cast<int>(std::lround(options.width_px * h / w));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(options.width_px) +
         "\" height=\"" + std::to_string(height_px) + "\" viewBox=\"" + num(box.x0) + " " + num(box.y0) + " " +
         num(w) + " " + num(h) + "\">\n";
  out += "<rect x=\"" + num(box.x0) + "\" y=\"" + num(box.y0) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"white\"/>\n";

  out += "<g id=\"points\">\n";
  for (const auto& [name, p] : model.points) {
    const Vec2d q = flip(p);
    out += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) + "\" r=\"" + num(dot) + "\" fill=\"black\"/>\n";
    out += "<text x=\"" + num(q.x() + dot * 1.5) + "\" y=\"" + num(q.y() - dot * 1.5) + "\" font-size=\"" +
           num(font) + "\" font-family=\"sans-serif\">" + escape(name) + "</text>\n";
  }
  out += "</g>\n<g id=\"lines\" stroke=\"#1f4e9c\" stroke-width=\"" + num(stroke) + "\">\n";
  for (const auto& [name, l] : model.lines) {
    const Vec2d a = flip(l.p1);
    const auto seg = clip(a, flip(l.p2) - a, box);
    if (!seg) continue;
    out += "<line x1=\"" + num(seg->first.x()) + "\" y1=\"" + num(seg->first.y()) + "\" x2=\"" +
           num(seg->second.x()) + "\" y2=\"" + num(seg->second.y()) + "\"><title>" + escape(name) +
           "</title></line>\n";
  }
  out += "</g>\n<g id=\"circles\" stroke=\"#9c1f3a\" stroke-width=\"" + num(stroke) + "\" fill=\"none\">\n";
  for (const auto& [name, c] : model.circles) {
    const Vec2d q = flip(c.center);
    out += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) + "\" r=\"" + num(c.radius) + "\"><title>" +
           escape(name) + "</title></circle>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace gmb::io
