#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gmb::dsl {

enum class Type {
  Point,
  Line,
  Circle,
  Number,
  Predicate,
  RootSelector,
  Name,  // a fresh point name inside a joint parameterization, e.g. (iso-tri Q)
};

std::string_view type_name(Type type);

enum class Category { Function, Predicate, Parameterization, JointParameterization, RootSelector };

enum class Builtin {
  // point functions
  AmidpOpp, AmidpSame, Centroid, Circumcenter, Excenter, Foot, HarmonicConj, Incenter, InterCC, InterLL,
  InterLC, IsogonalConj, IsotomicConj, Midp, MixtilinearIncenter, Orthocenter,
  // line functions
  Connecting, Isogonal, Isotomic, PerpBis, PerpAt, ReflectLL,
  // circle functions
  C3, Circumcircle, Excircle, Incircle, MixtilinearIncircle, Diam, Coa,
  // number functions
  Add, Area, Dist, Div, Mul, Pi, Pow, Neg, Radius, Sqrt, Uangle,
  // predicates
  IsCentroid, Concur, IsCircumcenter, Cong, Contri, Coll, Cycl, EqPoints, EqNumbers, EqRatio, IsFoot, Gt, Ge,
  IsIncenter, IsInterLL, Lt, Le, IsMidp, OnCirc, OnLine, OnRay, OnSeg, OppSides, IsOrthocenter, Perp, Para,
  SameSide, SimTri, TangentCC, TangentLC, TangentAtCC, TangentAtLC, Not,
  // parameterizations
  OnCircParam, OnLineParam, OnMajorArcParam, OnMinorArcParam, InPolyParam, OnRayParam, OnRayOppParam,
  OnSegParam, TangentLCParam, LineThroughParam, TangentCCParam, TangentCLParam, CircleThroughParam,
  OriginParam, RadiusParam,
  // joint parameterizations
  AcuteTri, AcuteIsoTri, IsoTri, RightTri, Triangle, Polygon,
  // root selectors
  RsArbitrary, RsNeq, RsOppSides, RsSameSide, RsCloserToP, RsCloserToL,
};

struct BuiltinInfo {
  Builtin id;
  std::string_view name;  // lowercase spelling
  Category category;
  // Function result type, or the object type a parameterization produces.
  Type result;
  std::vector<Type> args;
  // When set, the last entry of `args` repeats; `min_args` is the minimum.
  bool variadic = false;
  std::size_t min_args = 0;
  std::string_view summary;
  bool alias = false;
};

// Every builtin, aliases included, in table order.
const std::vector<BuiltinInfo>& builtins();

// Overloads of `name` (case-insensitive) in `category`.
std::vector<const BuiltinInfo*> lookup(Category category, std::string_view name);

const BuiltinInfo& info(Builtin id);

bool accepts_arity(const BuiltinInfo& b, std::size_t n);

// Markdown reference of all builtins, grouped by category.
std::string builtins_markdown();

}  // namespace gmb::dsl
