#include "gmb/lower/lowering.hpp"

#include <cmath>
#include <span>

#include "gmb/geom/roots.hpp"

namespace gmb::lower {

using dsl::Builtin;
using dsl::TypedTerm;
using dsl::Type;
namespace g = geom;

const NamedObject& CompiledProblem::object(const std::string& name) const {
  auto it = index.find(name);
  if (it == index.end()) throw std::out_of_range("no object named '" + name + "'");
  return objects[it->second];
}

double CompiledProblem::max_hard_residual(const std::vector<double>& values) const {
  double worst = 0.0;
  for (const HardLoss& h : hard) worst = std::max(worst, std::abs(value_of(h.residual, values)));
  for (const SoftLoss& s : soft)
    if (s.kind == SoftKind::Existence) worst = std::max(worst, std::abs(value_of(s.residual, values)));
  return worst;
}

namespace {

constexpr double kPi = g::kPi;
constexpr double kTriangleSpread = 0.4;
constexpr double kAcuteTriangleSpread = 0.2;

bool same_scalar(const Var& a, const Var& b) {
  if (a.is_literal() != b.is_literal()) return false;
  return a.is_literal() ? a.value() == b.value() : a.ref() == b.ref();
}

bool same_point(const Point& a, const Point& b) { return same_scalar(a.x(), b.x()) && same_scalar(a.y(), b.y()); }

class Lowerer {
 public:
  Lowerer(std::mt19937_64* rng, const LoweringOptions& options) : rng_(rng) {
    out_.options = options;
    out_.tape = std::make_unique<ad::Tape>();
  }

  CompiledProblem run(const dsl::ValidatedProgram& program) {
    for (const dsl::ValidatedCommand& c : program.commands) {
      source_ = c.source;
      switch (c.kind) {
        case dsl::ValidatedCommand::Kind::Param: lower_param(c); break;
        case dsl::ValidatedCommand::Kind::ParamJoint: lower_joint(c); break;
        case dsl::ValidatedCommand::Kind::Define: {
          GeoObject v = eval(*c.term);
          add_object(c.names.front(), c.type, std::move(v), {});
          break;
        }
        case dsl::ValidatedCommand::Kind::Assert:
          for (const auto& r : predicate(*c.term)) add_hard(g::violation(r));
          break;
        case dsl::ValidatedCommand::Kind::Eval:
          out_.evals.push_back({c.source, predicate(*c.term)});
          break;
      }
    }
    auxiliary_losses();
    register_losses();
    return std::move(out_);
  }

 private:
  ad::Tape& tape() { return *out_.tape; }

  Var slot(double mean, double stddev, std::vector<std::uint32_t>& slots) {
    double init = mean;
    if (rng_ && stddev > 0) init = std::normal_distribution<double>(mean, stddev)(*rng_);
    slots.push_back(static_cast<std::uint32_t>(out_.priors.size()));
    out_.priors.push_back({mean, stddev});
    return Var(&tape(), tape().new_param(init));
  }

  Point free_point(std::vector<std::uint32_t>& slots, double stddev = 1.0) {
    Var x = slot(0.0, stddev, slots);
    Var y = slot(0.0, stddev, slots);
    return Point(x, y);
  }

  CircleObj free_circle(std::vector<std::uint32_t>& slots) {
    Point c = free_point(slots);
    return {c, g::softplus(slot(0.0, 1.0, slots))};
  }

  void add_hard(const Var& residual) { out_.hard.push_back({residual, out_.options.hard_weight, source_}); }

  void add_object(const std::string& name, Type type, GeoObject value, std::vector<std::uint32_t> slots) {
    if (auto* l = std::get_if<LineObj>(&value); l && same_point(l->p1, l->p2))
      throw LoweringError("line '" + name + "' has structurally identical defining points");
    out_.index.emplace(name, out_.objects.size());
    out_.objects.push_back({name, type, std::move(value), std::move(slots)});
  }

  // ---------------------------------------------------------------------
  // Parameterizations

  void lower_param(const dsl::ValidatedCommand& c) {
    std::vector<std::uint32_t> slots;
    const std::string& name = c.names.front();
    GeoObject value;
    if (!c.term) {
      switch (c.type) {
        case Type::Point: value = free_point(slots); break;
        case Type::Line: {
          Point a = free_point(slots);
          Point b = free_point(slots);
          value = LineObj{a, b};
          break;
        }
        case Type::Circle: value = free_circle(slots); break;
        default: throw LoweringError("cannot parameterize '" + name + "'");
      }
    } else {
      value = parameterized(*c.term, slots);
    }
    add_object(name, c.type, std::move(value), std::move(slots));
  }

  GeoObject parameterized(const TypedTerm& t, std::vector<std::uint32_t>& slots) {
    auto pt = [&](std::size_t i) { return as_point(eval(t.args[i])); };
    switch (*t.builtin) {
      case Builtin::OnCircParam: {
        CircleObj c = as_circle(eval(t.args[0]));
        return Point(c.center + g::unit_at(slot(0.0, 1.0, slots)) * c.radius);
      }
      case Builtin::OnLineParam: {
        LineObj l = as_line(eval(t.args[0]));
        return Point(l.p1 + g::direction(l) * slot(0.0, 1.0, slots));
      }
      case Builtin::OnSegParam: {
        Point a = pt(0), b = pt(1);
        return Point(a + (b - a) * g::sigmoid(slot(0.0, 1.0, slots)));
      }
      case Builtin::OnRayParam: {
        Point a = pt(0), b = pt(1);
        return Point(a + (b - a) * g::softplus(slot(0.0, 1.0, slots)));
      }
      case Builtin::OnRayOppParam: {
        Point a = pt(0), b = pt(1);
        return Point(a - (b - a) * g::softplus(slot(0.0, 1.0, slots)));
      }
      case Builtin::OnMajorArcParam:
      case Builtin::OnMinorArcParam: {
        CircleObj c = as_circle(eval(t.args[0]));
        Point a = pt(1), b = pt(2);
        const Point da = a - c.center, db = b - c.center;
        const Var alpha = g::atan2(da.y(), da.x());
        const Var beta = g::atan2(db.y(), db.x());
        const Var diff = beta - alpha;
        Var sweep = g::atan2(g::sin(diff), g::cos(diff));  // minor arc, in (-pi, pi]
        if (*t.builtin == Builtin::OnMajorArcParam) sweep = g::select(sweep, sweep - 2.0 * kPi, sweep + 2.0 * kPi);
        const Var theta = alpha + g::sigmoid(slot(0.0, 1.0, slots)) * sweep;
        return Point(c.center + g::unit_at(theta) * c.radius);
      }
      case Builtin::InPolyParam: {
        std::vector<Var> w;
        Var total = 0.0;
        for (std::size_t i = 0; i < t.args.size(); ++i) {
          w.push_back(g::exp(slot(0.0, 1.0, slots)));
          total += w.back();
        }
        Point p(Var(0.0), Var(0.0));
        for (std::size_t i = 0; i < t.args.size(); ++i) p = p + pt(i) * (w[i] / total);
        return p;
      }
      case Builtin::LineThroughParam: {
        Point a = pt(0);
        return LineObj{a, a + g::unit_at(slot(0.0, 1.0, slots))};
      }
      case Builtin::TangentLCParam: {
        CircleObj c = as_circle(eval(t.args[0]));
        const Point u = g::unit_at(slot(0.0, 1.0, slots));
        const Point touch = c.center + u * c.radius;
        return LineObj{touch, touch + g::perp(u)};
      }
      case Builtin::OriginParam: {
        Point o = pt(0);
        return CircleObj{o, g::softplus(slot(0.0, 1.0, slots))};
      }
      case Builtin::CircleThroughParam: {
        Point a = pt(0);
        Point o = free_point(slots);
        return CircleObj{o, g::dist(o, a)};
      }
      case Builtin::RadiusParam: {
        Var r = as_number(eval(t.args[0]));
        return CircleObj{free_point(slots), r};
      }
      case Builtin::TangentCCParam: {
        CircleObj other = as_circle(eval(t.args[0]));
        CircleObj c = free_circle(slots);
        for (const auto& r : g::pred::tangent_cc(c, other)) add_hard(g::violation(r));
        return c;
      }
      case Builtin::TangentCLParam: {
        LineObj l = as_line(eval(t.args[0]));
        CircleObj c = free_circle(slots);
        for (const auto& r : g::pred::tangent_lc(l, c)) add_hard(g::violation(r));
        return c;
      }
      default: throw LoweringError("unsupported parameterization in: " + source_);
    }
  }

  void add_acute_obligations(const Point& a, const Point& b, const Point& c) {
    const Point v[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
      const Var angle = g::undirected_angle(v[(i + 2) % 3], v[i], v[(i + 1) % 3]);
      add_hard(g::violation(g::Residual<Var>{Var(kPi / 2) - angle, g::Sense::Positive}));
    }
  }

  void lower_joint(const dsl::ValidatedCommand& c) {
    std::vector<std::uint32_t> slots;
    const TypedTerm& t = *c.term;
    const Builtin kind = *t.builtin;
    std::vector<Point> pts;

    if (kind == Builtin::Polygon) {
      pts = polygon(c.names.size(), slots);
    } else {
      const bool acute = kind == Builtin::AcuteTri || kind == Builtin::AcuteIsoTri;
      const double spread = acute ? kAcuteTriangleSpread : kTriangleSpread;
      const Point center = free_point(slots, 0.5);
      const Var radius = g::softplus(slot(softplus_inverse(2.0), 0.0, slots));
      auto on_circle = [&](const Var& angle) { return Point(center + g::unit_at(angle) * radius); };
      const double third = 2.0 * kPi / 3.0;

      if (kind == Builtin::Triangle || kind == Builtin::AcuteTri) {
        for (int i = 0; i < 3; ++i) pts.push_back(on_circle(slot(kPi / 2 + i * third, spread, slots)));
      } else {
        const std::string& apex = t.args.front().name;
        const auto apex_pos = static_cast<std::size_t>(
            std::find(c.names.begin(), c.names.end(), apex) - c.names.begin());
        Point apex_point, left, right;
        if (kind == Builtin::RightTri) {
          // The two legs' far ends are antipodal, so the angle at the apex is
          // inscribed in a semicircle.
          const Var alpha = slot(kPi / 2 + third, spread, slots);
          left = on_circle(alpha);
          right = on_circle(alpha + kPi);
          apex_point = on_circle(alpha + slot(kPi / 2, spread, slots));
        } else {
          const Var theta = slot(kPi / 2, spread, slots);
          const Var half = slot(third, spread, slots);
          apex_point = on_circle(theta);
          left = on_circle(theta + half);
          right = on_circle(theta - half);
        }
        std::vector<Point> others = {left, right};
        for (std::size_t i = 0, k = 0; i < 3; ++i) pts.push_back(i == apex_pos ? apex_point : others[k++]);
      }
      if (acute) add_acute_obligations(pts[0], pts[1], pts[2]);
    }

    for (std::size_t i = 0; i < c.names.size(); ++i) add_object(c.names[i], Type::Point, pts[i], slots);
  }

  std::vector<Point> polygon(std::size_t n, std::vector<std::uint32_t>& slots) {
    const Point center = free_point(slots, 0.5);
    const Var radius = g::softplus(slot(softplus_inverse(2.0), 0.0, slots));
    const Var offset = slot(kPi / 2, 1.0, slots);
    std::vector<Var> gaps;
    Var total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gaps.push_back(g::exp(slot(0.0, 0.3, slots)));
      total += gaps.back();
    }
    std::vector<Point> pts;
    Var angle = offset;
    for (std::size_t i = 0; i < n; ++i) {
      const Var radial = g::softplus(slot(softplus_inverse(1.0), 0.1, slots));
      pts.push_back(center + g::unit_at(angle) * (radius * radial));
      angle = angle + gaps[i] / total * (2.0 * kPi);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Point e1 = pts[(i + 1) % n] - pts[i];
      const Point e2 = pts[(i + 2) % n] - pts[(i + 1) % n];
      const Var turn = g::cross(e1, e2) / (g::norm(e1) * g::norm(e2));
      add_hard(g::violation(g::Residual<Var>{turn, g::Sense::Positive}));
    }
    return pts;
  }

  // ---------------------------------------------------------------------
  // Terms

  static Point as_point(const GeoObject& o) { return std::get<Point>(o); }
  static LineObj as_line(const GeoObject& o) { return std::get<LineObj>(o); }
  static CircleObj as_circle(const GeoObject& o) { return std::get<CircleObj>(o); }
  static Var as_number(const GeoObject& o) { return std::get<Var>(o); }

  g::RootSelector<Var> selector(const TypedTerm& t) {
    auto pt = [&](std::size_t i) { return as_point(eval(t.args[i])); };
    switch (*t.builtin) {
      case Builtin::RsArbitrary: return g::ArbitraryRoot{};
      case Builtin::RsNeq: return g::NeqRoot<Var>{pt(0)};
      case Builtin::RsOppSides: return g::OppSidesRoot<Var>{pt(0), as_line(eval(t.args[1]))};
      case Builtin::RsSameSide: return g::SameSideRoot<Var>{pt(0), as_line(eval(t.args[1]))};
      case Builtin::RsCloserToP: return g::CloserToPointRoot<Var>{pt(0)};
      case Builtin::RsCloserToL: return g::CloserToLineRoot<Var>{as_line(eval(t.args[0]))};
      default: throw LoweringError("bad root selector in: " + source_);
    }
  }

  Point intersection(const std::pair<Point, Point>& roots, const TypedTerm& sel_term, const Var& gap) {
    out_.soft.push_back({gap, out_.options.existence_weight, SoftKind::Existence});
    const g::RootSelector<Var> sel = selector(sel_term);
    Point result = g::select_root(roots, sel);
    if (const auto* neq = std::get_if<g::NeqRoot<Var>>(&sel))
      out_.distinct.push_back({"(" + source_ + ") root", "excluded point", result, neq->point});
    return result;
  }

  GeoObject eval(const TypedTerm& t) {
    switch (t.kind) {
      case TypedTerm::Kind::Ref: return out_.objects[out_.index.at(t.name)].value;
      case TypedTerm::Kind::Literal: return Var(t.literal);
      case TypedTerm::Kind::Apply: break;
    }
    auto pt = [&](std::size_t i) { return as_point(eval(t.args[i])); };
    auto ln = [&](std::size_t i) { return as_line(eval(t.args[i])); };
    auto cc = [&](std::size_t i) { return as_circle(eval(t.args[i])); };
    auto num = [&](std::size_t i) { return as_number(eval(t.args[i])); };

    switch (*t.builtin) {
      case Builtin::AmidpOpp: return g::arc_midpoint(pt(0), pt(1), pt(2), false);
      case Builtin::AmidpSame: return g::arc_midpoint(pt(0), pt(1), pt(2), true);
      case Builtin::Centroid: return g::centroid(pt(0), pt(1), pt(2));
      case Builtin::Circumcenter: return g::circumcenter(pt(0), pt(1), pt(2));
      case Builtin::Excenter: return g::excenter(pt(0), pt(1), pt(2));
      case Builtin::Foot: return g::foot(pt(0), ln(1));
      case Builtin::HarmonicConj: return g::harmonic_conjugate(pt(0), pt(1), pt(2));
      case Builtin::Incenter: return g::incenter(pt(0), pt(1), pt(2));
      case Builtin::InterCC: {
        const CircleObj a = cc(0), b = cc(1);
        return intersection(g::circle_circle_roots(a, b), t.args[2], g::circle_circle_gap(a, b));
      }
      case Builtin::InterLL: return g::intersect_lines(ln(0), ln(1));
      case Builtin::InterLC: {
        const LineObj l = ln(0);
        const CircleObj c = cc(1);
        return intersection(g::line_circle_roots(l, c), t.args[2], g::line_circle_gap(l, c));
      }
      case Builtin::IsogonalConj: return g::isogonal_conjugate(pt(0), pt(1), pt(2), pt(3));
      case Builtin::IsotomicConj: return g::isotomic_conjugate(pt(0), pt(1), pt(2), pt(3));
      case Builtin::Midp: return g::midpoint(pt(0), pt(1));
      case Builtin::MixtilinearIncenter: return g::mixtilinear_incenter(pt(0), pt(1), pt(2));
      case Builtin::Orthocenter: return g::orthocenter(pt(0), pt(1), pt(2));

      case Builtin::Connecting: {
        LineObj l{pt(0), pt(1)};
        if (same_point(l.p1, l.p2)) throw LoweringError("line through identical points in: " + source_);
        return l;
      }
      case Builtin::Isogonal: return g::isogonal_line(pt(0), pt(1), pt(2), pt(3));
      case Builtin::Isotomic: return g::isotomic_line(pt(0), pt(1), pt(2), pt(3));
      case Builtin::PerpBis: return g::perpendicular_bisector(pt(0), pt(1));
      case Builtin::PerpAt: return g::perpendicular_at(pt(0), ln(1));
      case Builtin::ReflectLL: return g::reflect_line(ln(0), ln(1));

      case Builtin::C3:
      case Builtin::Circumcircle: return g::circle_through(pt(0), pt(1), pt(2));
      case Builtin::Excircle: return g::excircle(pt(0), pt(1), pt(2));
      case Builtin::Incircle: return g::incircle(pt(0), pt(1), pt(2));
      case Builtin::MixtilinearIncircle: return g::mixtilinear_incircle(pt(0), pt(1), pt(2));
      case Builtin::Diam: return g::diameter_circle(pt(0), pt(1));
      case Builtin::Coa: return g::circle_at_through(pt(0), pt(1));

      case Builtin::Add: return num(0) + num(1);
      case Builtin::Area: return g::triangle_area(pt(0), pt(1), pt(2));
      case Builtin::Dist: return g::dist(pt(0), pt(1));
      case Builtin::Div: return num(0) / num(1);
      case Builtin::Mul: return num(0) * num(1);
      case Builtin::Pi: return Var(kPi);
      case Builtin::Pow: return g::pow(num(0), num(1));
      case Builtin::Neg: return -num(0);
      case Builtin::Radius: return cc(0).radius;
      case Builtin::Sqrt: return g::sqrt(num(0));
      case Builtin::Uangle: return g::undirected_angle(pt(0), pt(1), pt(2));
      default: throw LoweringError("not a value-producing builtin in: " + source_);
    }
  }

  g::Residuals<Var> predicate(const TypedTerm& t) {
    namespace p = g::pred;
    auto pt = [&](std::size_t i) { return as_point(eval(t.args[i])); };
    auto ln = [&](std::size_t i) { return as_line(eval(t.args[i])); };
    auto cc = [&](std::size_t i) { return as_circle(eval(t.args[i])); };
    auto num = [&](std::size_t i) { return as_number(eval(t.args[i])); };

    switch (*t.builtin) {
      case Builtin::IsCentroid: return p::points_equal(pt(0), g::centroid(pt(1), pt(2), pt(3)));
      case Builtin::IsCircumcenter: return p::points_equal(pt(0), g::circumcenter(pt(1), pt(2), pt(3)));
      case Builtin::IsIncenter: return p::points_equal(pt(0), g::incenter(pt(1), pt(2), pt(3)));
      case Builtin::IsOrthocenter: return p::points_equal(pt(0), g::orthocenter(pt(1), pt(2), pt(3)));
      case Builtin::IsFoot: return p::points_equal(pt(0), g::foot(pt(1), ln(2)));
      case Builtin::IsMidp: return p::points_equal(pt(0), g::midpoint(pt(1), pt(2)));
      case Builtin::IsInterLL: return p::points_equal(pt(0), g::intersect_lines(ln(1), ln(2)));
      case Builtin::Concur: return p::concur(ln(0), ln(1), ln(2));
      case Builtin::Cong: return p::cong(pt(0), pt(1), pt(2), pt(3));
      case Builtin::Contri: return p::contri(pt(0), pt(1), pt(2), pt(3), pt(4), pt(5));
      case Builtin::Coll: return p::coll(pt(0), pt(1), pt(2));
      case Builtin::Cycl: {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < t.args.size(); ++i) pts.push_back(pt(i));
        return p::cycl(std::span<const Point>(pts));
      }
      case Builtin::EqPoints: return p::points_equal(pt(0), pt(1));
      case Builtin::EqNumbers: return p::zero<Var>({num(0) - num(1)});
      case Builtin::EqRatio: return p::eq_ratio(pt(0), pt(1), pt(2), pt(3), pt(4), pt(5), pt(6), pt(7));
      case Builtin::Gt: return p::greater(num(0), num(1));
      case Builtin::Ge: return p::greater_equal(num(0), num(1));
      case Builtin::Lt: return p::greater(num(1), num(0));
      case Builtin::Le: return p::greater_equal(num(1), num(0));
      case Builtin::OnCirc: return p::on_circ(pt(0), cc(1));
      case Builtin::OnLine: return p::on_line(pt(0), ln(1));
      case Builtin::OnRay: return p::on_ray(pt(0), pt(1), pt(2));
      case Builtin::OnSeg: return p::on_seg(pt(0), pt(1), pt(2));
      case Builtin::OppSides: return p::opp_sides(pt(0), pt(1), ln(2));
      case Builtin::SameSide: return p::same_side(pt(0), pt(1), ln(2));
      case Builtin::Perp: return p::perpendicular(ln(0), ln(1));
      case Builtin::Para: return p::parallel(ln(0), ln(1));
      case Builtin::SimTri: return p::sim_tri(pt(0), pt(1), pt(2), pt(3), pt(4), pt(5));
      case Builtin::TangentCC: return p::tangent_cc(cc(0), cc(1));
      case Builtin::TangentLC: return p::tangent_lc(ln(0), cc(1));
      case Builtin::TangentAtCC: return p::tangent_at_cc(pt(0), cc(1), cc(2));
      case Builtin::TangentAtLC: return p::tangent_at_lc(pt(0), ln(1), cc(2));
      case Builtin::Not: {
        Var sum = 0.0;
        for (const auto& r : predicate(t.args[0])) {
          const Var v = g::violation(r);
          sum += v * v;
        }
        return p::zero<Var>({g::hinge(Var(out_.options.not_margin) - g::sqrt(sum))});
      }
      default: throw LoweringError("not a predicate in: " + source_);
    }
  }

  // ---------------------------------------------------------------------
  // Auxiliary losses

  void auxiliary_losses() {
    std::vector<std::pair<std::string, Point>> named;
    for (const NamedObject& o : out_.objects) {
      if (const auto* p = std::get_if<Point>(&o.value)) {
        named.emplace_back(o.name, *p);
        out_.point_registry.push_back(*p);
      } else if (const auto* l = std::get_if<LineObj>(&o.value)) {
        out_.point_registry.push_back(l->p1);
        out_.point_registry.push_back(l->p2);
      } else if (const auto* c = std::get_if<CircleObj>(&o.value)) {
        out_.point_registry.push_back(c->center);
      }
    }

    if (!out_.point_registry.empty()) {
      Var sum = 0.0;
      for (const Point& p : out_.point_registry) sum += g::squared_norm(p);
      out_.soft.push_back({sum / static_cast<double>(out_.point_registry.size()), out_.options.norm_weight,
                           SoftKind::NormRegularizer});
    }

    const Var d_min(out_.options.d_min);
    for (std::size_t i = 0; i < named.size(); ++i) {
      for (std::size_t j = i + 1; j < named.size(); ++j) {
        const Point& a = named[i].second;
        const Point& b = named[j].second;
        out_.distinct.push_back({named[i].first, named[j].first, a, b});
        out_.soft.push_back({g::hinge(d_min - g::dist(a, b)), out_.options.distinct_weight, SoftKind::Distinctness});
      }
    }
  }

  void register_losses() {
    ad::Tape& t = tape();
    for (const HardLoss& h : out_.hard) t.add_loss((h.residual * h.residual).ref_on(t), h.weight);
    for (const SoftLoss& s : out_.soft) {
      const Var v = s.kind == SoftKind::NormRegularizer ? s.residual : s.residual * s.residual;
      t.add_loss(v.ref_on(t), s.weight);
    }
  }

  std::mt19937_64* rng_;
  CompiledProblem out_;
  std::string source_;
};

}  // namespace

CompiledProblem lower_program(const dsl::ValidatedProgram& program, std::mt19937_64& rng,
                              const LoweringOptions& options) {
  return Lowerer(&rng, options).run(program);
}

CompiledProblem lower_program(const dsl::ValidatedProgram& program, const LoweringOptions& options) {
  return Lowerer(nullptr, options).run(program);
}

}  // namespace gmb::lower
