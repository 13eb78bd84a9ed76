#include "gmb/dsl/builtins.hpp"

#include <stdexcept>

#include "gmb/dsl/syntax.hpp"

namespace gmb::dsl {

std::string_view type_name(Type type) {
  switch (type) {
    case Type::Point: return "point";
    case Type::Line: return "line";
    case Type::Circle: return "circle";
    case Type::Number: return "number";
    case Type::Predicate: return "predicate";
    case Type::RootSelector: return "root-selector";
    case Type::Name: return "name";
  }
  return "?";
}

namespace {

using enum Type;
using B = Builtin;

BuiltinInfo fixed(B id, std::string_view name, Category cat, Type result, std::vector<Type> args,
                  std::string_view summary, bool alias = false) {
  BuiltinInfo b{id, name, cat, result, std::move(args), false, 0, summary, alias};
  b.min_args = b.args.size();
  return b;
}

BuiltinInfo variadic(B id, std::string_view name, Category cat, Type result, Type repeated, std::size_t min,
                     std::string_view summary) {
  return BuiltinInfo{id, name, cat, result, {repeated}, true, min, summary, false};
}

std::vector<BuiltinInfo> make_table() {
  constexpr auto F = Category::Function;
  constexpr auto P = Category::Predicate;
  constexpr auto Z = Category::Parameterization;
  constexpr auto J = Category::JointParameterization;
  constexpr auto R = Category::RootSelector;
  return {
      fixed(B::AmidpOpp, "amidp-opp", F, Point, {Point, Point, Point}, "midpoint of arc AB of (ABC) not containing C"),
      fixed(B::AmidpSame, "amidp-same", F, Point, {Point, Point, Point}, "midpoint of arc ACB of (ABC)"),
      fixed(B::Centroid, "centroid", F, Point, {Point, Point, Point}, "centroid of ABC"),
      fixed(B::Circumcenter, "circumcenter", F, Point, {Point, Point, Point}, "circumcenter of ABC"),
      fixed(B::Excenter, "excenter", F, Point, {Point, Point, Point}, "A-excenter of ABC"),
      fixed(B::Foot, "foot", F, Point, {Point, Line}, "perpendicular foot from A to L"),
      fixed(B::HarmonicConj, "harmonic-conj", F, Point, {Point, Point, Point}, "harmonic conjugate of C w.r.t. AB"),
      fixed(B::Incenter, "incenter", F, Point, {Point, Point, Point}, "incenter of ABC"),
      fixed(B::InterCC, "inter-cc", F, Point, {Circle, Circle, RootSelector}, "an intersection of two circles"),
      fixed(B::InterLL, "inter-ll", F, Point, {Line, Line}, "intersection of two lines"),
      fixed(B::InterLC, "inter-lc", F, Point, {Line, Circle, RootSelector}, "an intersection of a line and a circle"),
      fixed(B::IsogonalConj, "isogonal-conj", F, Point, {Point, Point, Point, Point}, "isogonal conjugate of D w.r.t. ABC"),
      fixed(B::IsotomicConj, "isotomic-conj", F, Point, {Point, Point, Point, Point}, "isotomic conjugate of D w.r.t. ABC"),
      fixed(B::Midp, "midp", F, Point, {Point, Point}, "midpoint of AB"),
      fixed(B::MixtilinearIncenter, "mixtilinear-incenter", F, Point, {Point, Point, Point}, "A-mixtilinear incenter of ABC"),
      fixed(B::Orthocenter, "orthocenter", F, Point, {Point, Point, Point}, "orthocenter of ABC"),

      fixed(B::Connecting, "connecting", F, Line, {Point, Point}, "line through A and B"),
      fixed(B::Connecting, "line", F, Line, {Point, Point}, "alias of connecting", true),
      fixed(B::Isogonal, "isogonal", F, Line, {Point, Point, Point, Point}, "isogonal of AD w.r.t. ABC"),
      fixed(B::Isotomic, "isotomic", F, Line, {Point, Point, Point, Point}, "isotomic of AD w.r.t. ABC"),
      fixed(B::PerpBis, "perp-bis", F, Line, {Point, Point}, "perpendicular bisector of AB"),
      fixed(B::PerpAt, "perp-at", F, Line, {Point, Line}, "line through A perpendicular to L"),
      fixed(B::ReflectLL, "reflect-ll", F, Line, {Line, Line}, "reflection of L1 in L2"),

      fixed(B::C3, "c3", F, Circle, {Point, Point, Point}, "circle through A, B, C"),
      fixed(B::C3, "circ", F, Circle, {Point, Point, Point}, "alias of c3", true),
      fixed(B::Circumcircle, "circumcircle", F, Circle, {Point, Point, Point}, "circumcircle of ABC"),
      fixed(B::Excircle, "excircle", F, Circle, {Point, Point, Point}, "A-excircle of ABC"),
      fixed(B::Incircle, "incircle", F, Circle, {Point, Point, Point}, "incircle of ABC"),
      fixed(B::MixtilinearIncircle, "mixtilinear-incircle", F, Circle, {Point, Point, Point}, "A-mixtilinear incircle of ABC"),
      fixed(B::Diam, "diam", F, Circle, {Point, Point}, "circle with diameter AB"),
      fixed(B::Coa, "coa", F, Circle, {Point, Point}, "circle centered at O through A"),

      fixed(B::Add, "add", F, Number, {Number, Number}, "N1 + N2"),
      fixed(B::Area, "area", F, Number, {Point, Point, Point}, "area of ABC"),
      fixed(B::Dist, "dist", F, Number, {Point, Point}, "distance between A and B"),
      fixed(B::Div, "div", F, Number, {Number, Number}, "N1 / N2"),
      fixed(B::Mul, "mul", F, Number, {Number, Number}, "N1 * N2"),
      fixed(B::Pi, "pi", F, Number, {}, "pi"),
      fixed(B::Pow, "pow", F, Number, {Number, Number}, "N1 ^ N2"),
      fixed(B::Neg, "neg", F, Number, {Number}, "-N1"),
      fixed(B::Radius, "radius", F, Number, {Circle}, "radius of C1"),
      fixed(B::Sqrt, "sqrt", F, Number, {Number}, "square root of N1"),
      fixed(B::Uangle, "uangle", F, Number, {Point, Point, Point}, "undirected angle ABC in [0, pi]"),

      fixed(B::IsCentroid, "centroid", P, Predicate, {Point, Point, Point, Point}, "P is the centroid of ABC"),
      fixed(B::Concur, "concur", P, Predicate, {Line, Line, Line}, "L1, L2, L3 meet at one point"),
      fixed(B::IsCircumcenter, "circumcenter", P, Predicate, {Point, Point, Point, Point}, "P is the circumcenter of ABC"),
      fixed(B::Cong, "cong", P, Predicate, {Point, Point, Point, Point}, "|AB| = |CD|"),
      fixed(B::Contri, "contri", P, Predicate, {Point, Point, Point, Point, Point, Point}, "ABC congruent to DEF"),
      fixed(B::Coll, "coll", P, Predicate, {Point, Point, Point}, "A, B, C collinear"),
      variadic(B::Cycl, "cycl", P, Predicate, Point, 4, "P1 ... PN concyclic (N >= 4)"),
      fixed(B::EqPoints, "=", P, Predicate, {Point, Point}, "A = B"),
      fixed(B::EqNumbers, "=", P, Predicate, {Number, Number}, "N1 = N2"),
      fixed(B::EqRatio, "eq-ratio", P, Predicate, {Point, Point, Point, Point, Point, Point, Point, Point},
            "|AB|/|CD| = |EF|/|GH|"),
      fixed(B::IsFoot, "foot", P, Predicate, {Point, Point, Line}, "P is the foot from A to L"),
      fixed(B::Gt, ">", P, Predicate, {Number, Number}, "N1 > N2"),
      fixed(B::Ge, ">=", P, Predicate, {Number, Number}, "N1 >= N2"),
      fixed(B::IsIncenter, "incenter", P, Predicate, {Point, Point, Point, Point}, "P is the incenter of ABC"),
      fixed(B::IsInterLL, "inter-ll", P, Predicate, {Point, Line, Line}, "P is the intersection of L1 and L2"),
      fixed(B::Lt, "<", P, Predicate, {Number, Number}, "N1 < N2"),
      fixed(B::Le, "<=", P, Predicate, {Number, Number}, "N1 <= N2"),
      fixed(B::IsMidp, "midp", P, Predicate, {Point, Point, Point}, "P is the midpoint of AB"),
      fixed(B::OnCirc, "on-circ", P, Predicate, {Point, Circle}, "P lies on C1"),
      fixed(B::OnLine, "on-line", P, Predicate, {Point, Line}, "P lies on L1"),
      fixed(B::OnRay, "on-ray", P, Predicate, {Point, Point, Point}, "P lies on ray AB"),
      fixed(B::OnSeg, "on-seg", P, Predicate, {Point, Point, Point}, "P lies on segment AB"),
      fixed(B::OppSides, "opp-sides", P, Predicate, {Point, Point, Line}, "A and B on opposite sides of L1"),
      fixed(B::IsOrthocenter, "orthocenter", P, Predicate, {Point, Point, Point, Point}, "P is the orthocenter of ABC"),
      fixed(B::Perp, "perp", P, Predicate, {Line, Line}, "L1 perpendicular to L2"),
      fixed(B::Para, "para", P, Predicate, {Line, Line}, "L1 parallel to L2"),
      fixed(B::SameSide, "same-side", P, Predicate, {Point, Point, Line}, "A and B on the same side of L1"),
      fixed(B::SimTri, "sim-tri", P, Predicate, {Point, Point, Point, Point, Point, Point}, "ABC similar to DEF"),
      fixed(B::TangentCC, "tangent-cc", P, Predicate, {Circle, Circle}, "C1 tangent to C2"),
      fixed(B::TangentLC, "tangent-lc", P, Predicate, {Line, Circle}, "L1 tangent to C1"),
      fixed(B::TangentAtCC, "tangent-at-cc", P, Predicate, {Point, Circle, Circle}, "C1 tangent to C2 at A"),
      fixed(B::TangentAtLC, "tangent-at-lc", P, Predicate, {Point, Line, Circle}, "L1 tangent to C1 at A"),
      fixed(B::Not, "not", P, Predicate, {Predicate}, "negation of an equality-type predicate"),

      fixed(B::OnCircParam, "on-circ", Z, Point, {Circle}, "point on C1"),
      fixed(B::OnLineParam, "on-line", Z, Point, {Line}, "point on L1"),
      fixed(B::OnMajorArcParam, "on-major-arc", Z, Point, {Circle, Point, Point}, "point on the major arc AB of C1"),
      fixed(B::OnMinorArcParam, "on-minor-arc", Z, Point, {Circle, Point, Point}, "point on the minor arc AB of C1"),
      variadic(B::InPolyParam, "in-poly", Z, Point, Point, 3, "point inside polygon P1 ... PN (N >= 3)"),
      fixed(B::OnRayParam, "on-ray", Z, Point, {Point, Point}, "point on ray AB"),
      fixed(B::OnRayOppParam, "on-ray-opp", Z, Point, {Point, Point}, "point beyond A on ray BA"),
      fixed(B::OnSegParam, "on-seg", Z, Point, {Point, Point}, "point on segment AB"),
      fixed(B::TangentLCParam, "tangent-lc", Z, Line, {Circle}, "line tangent to C1"),
      fixed(B::LineThroughParam, "through", Z, Line, {Point}, "line through A"),
      fixed(B::TangentCCParam, "tangent-cc", Z, Circle, {Circle}, "circle tangent to C1"),
      fixed(B::TangentCLParam, "tangent-cl", Z, Circle, {Line}, "circle tangent to L1"),
      fixed(B::CircleThroughParam, "through", Z, Circle, {Point}, "circle through A"),
      fixed(B::OriginParam, "origin", Z, Circle, {Point}, "circle centered at A"),
      fixed(B::RadiusParam, "radius", Z, Circle, {Number}, "circle with radius N1"),

      fixed(B::AcuteTri, "acute-tri", J, Point, {}, "acute triangle"),
      fixed(B::AcuteIsoTri, "acute-iso-tri", J, Point, {Name}, "acute isosceles triangle with apex <name>"),
      fixed(B::IsoTri, "iso-tri", J, Point, {Name}, "isosceles triangle with apex <name>"),
      fixed(B::RightTri, "right-tri", J, Point, {Name}, "right triangle with the right angle at <name>"),
      fixed(B::Triangle, "triangle", J, Point, {}, "triangle"),
      fixed(B::Polygon, "polygon", J, Point, {}, "convex polygon (>= 3 names)"),

      fixed(B::RsArbitrary, "rs-arbitrary", R, RootSelector, {}, "an arbitrary root"),
      fixed(B::RsNeq, "rs-neq", R, RootSelector, {Point}, "the root not equal to A"),
      fixed(B::RsOppSides, "rs-opp-sides", R, RootSelector, {Point, Line}, "the root on the opposite side of L1 from A"),
      fixed(B::RsSameSide, "rs-same-side", R, RootSelector, {Point, Line}, "the root on the same side of L1 as A"),
      fixed(B::RsCloserToP, "rs-closer-to-p", R, RootSelector, {Point}, "the root closer to A"),
      fixed(B::RsCloserToL, "rs-closer-to-l", R, RootSelector, {Line}, "the root closer to L1"),
  };
}

std::string_view category_title(Category c) {
  switch (c) {
    case Category::Function: return "Functions";
    case Category::Predicate: return "Predicates";
    case Category::Parameterization: return "Parameterizations";
    case Category::JointParameterization: return "Joint parameterizations";
    case Category::RootSelector: return "Root selectors";
  }
  return "";
}

}  // namespace

const std::vector<BuiltinInfo>& builtins() {
  static const std::vector<BuiltinInfo> table = make_table();
  return table;
}

std::vector<const BuiltinInfo*> lookup(Category category, std::string_view name) {
  const std::string key = lowercase(name);
  std::vector<const BuiltinInfo*> out;
  for (const BuiltinInfo& b : builtins())
    if (b.category == category && b.name == key) out.push_back(&b);
  return out;
}

const BuiltinInfo& info(Builtin id) {
  for (const BuiltinInfo& b : builtins())
    if (b.id == id && !b.alias) return b;
  throw std::logic_error("unregistered builtin");
}

bool accepts_arity(const BuiltinInfo& b, std::size_t n) { return b.variadic ? n >= b.min_args : n == b.args.size(); }

std::string builtins_markdown() {
  std::string out = "# GMBL builtins\n";
  for (auto cat : {Category::Function, Category::Predicate, Category::Parameterization,
                   Category::JointParameterization, Category::RootSelector}) {
    out += "\n## " + std::string(category_title(cat)) + "\n\n| Form | Type | Description |\n|---|---|---|\n";
    for (const BuiltinInfo& b : builtins()) {
      if (b.category != cat) continue;
      std::string form = "(" + std::string(b.name);
      if (b.variadic) {
        form += " " + std::string(type_name(b.args.front())) + " ... (>= " + std::to_string(b.min_args) + ")";
      } else {
        for (Type t : b.args) form += " <" + std::string(type_name(t)) + ">";
      }
      form += ")";
      if (b.args.empty() && !b.variadic) form = std::string(b.name);
      out += "| `" + form + "` | " + std::string(type_name(b.result)) + " | " + std::string(b.summary) + " |\n";
    }
  }
  return out;
}

}  // namespace gmb::dsl
