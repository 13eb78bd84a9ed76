#include "gmb/dsl/validate.hpp"

#include <algorithm>

namespace gmb::dsl {

bool is_negatable(Builtin p) {
  switch (p) {
    case Builtin::Gt:
    case Builtin::Ge:
    case Builtin::Lt:
    case Builtin::Le:
    case Builtin::OppSides:
    case Builtin::SameSide:
    case Builtin::Not:
      return false;
    default:
      return true;
  }
}

namespace {

std::string arity_text(const BuiltinInfo& b) {
  if (b.variadic) return "at least " + std::to_string(b.min_args);
  return std::to_string(b.args.size());
}

std::optional<Type> parse_type(const std::string& s) {
  const std::string t = lowercase(s);
  if (t == "point") return Type::Point;
  if (t == "line") return Type::Line;
  if (t == "circle") return Type::Circle;
  if (t == "number") return Type::Number;
  return std::nullopt;
}

bool is_triangle_kind(Builtin b) {
  return b == Builtin::AcuteTri || b == Builtin::AcuteIsoTri || b == Builtin::IsoTri || b == Builtin::RightTri ||
         b == Builtin::Triangle;
}

class Validator {
 public:
  ValidatedProgram run(const std::vector<Command>& commands) {
    for (const Command& c : commands) std::visit([&](const auto& cmd) { handle(cmd); }, c);
    return std::move(out_);
  }

 private:
  void declare(const std::string& name, Type type, SourcePos pos) {
    if (out_.symbols.contains(name)) throw Error(ErrorKind::DuplicateName, pos, "'" + name + "' is already declared");
    out_.symbols.emplace(name, type);
    out_.declaration_order.push_back(name);
  }

  void handle(const ParamCommand& c) {
    auto type = parse_type(c.type);
    if (!type) throw Error(ErrorKind::UnknownType, c.pos, "unknown type '" + c.type + "'");
    if (*type == Type::Number)
      throw Error(ErrorKind::IncompatibleParameterization, c.pos, "numbers cannot be parameterized");
    std::optional<TypedTerm> param;
    if (c.parameterization) param = check_parameterization(*c.parameterization, *type);
    declare(c.name, *type, c.pos);
    out_.commands.push_back(
        {ValidatedCommand::Kind::Param, {c.name}, *type, std::move(param), to_source(Command{c}), c.pos});
  }

  void handle(const ParamJointCommand& c) {
    const Term& p = c.parameterization;
    const std::string& head = p.text;
    auto found = lookup(Category::JointParameterization, head);
    if (found.empty()) {
      if (!lookup(Category::Parameterization, head).empty())
        throw Error(ErrorKind::IncompatibleParameterization, p.pos,
                    "'" + head + "' parameterizes a single object, not a list of points");
      throw Error(ErrorKind::UnknownFunction, p.pos, "unknown joint parameterization '" + head + "'");
    }
    const BuiltinInfo& b = *found.front();
    const std::size_t nargs = p.kind == Term::Kind::Apply ? p.args.size() : 0;
    if (p.kind == Term::Kind::Number || !accepts_arity(b, nargs))
      throw Error(ErrorKind::ArityMismatch, p.pos,
                  "'" + std::string(b.name) + "' expects " + arity_text(b) + " argument(s), got " +
                      std::to_string(nargs));

    if (is_triangle_kind(b.id) && c.names.size() != 3)
      throw Error(ErrorKind::JointParamRule, c.pos,
                  "triangle parameterizations require exactly 3 names, got " + std::to_string(c.names.size()));
    if (b.id == Builtin::Polygon && c.names.size() < 3)
      throw Error(ErrorKind::JointParamRule, c.pos, "polygon requires at least 3 names");
    for (std::size_t i = 0; i < c.names.size(); ++i)
      for (std::size_t j = i + 1; j < c.names.size(); ++j)
        if (c.names[i] == c.names[j])
          throw Error(ErrorKind::DuplicateName, c.pos, "'" + c.names[i] + "' appears twice");

    TypedTerm t{TypedTerm::Kind::Apply, Type::Point, b.id, {}, 0.0, {}, p.pos};
    if (nargs == 1) {
      const Term& apex = p.args.front();
      if (apex.kind != Term::Kind::Symbol)
        throw Error(ErrorKind::TypeMismatch, apex.pos, "expected a point name");
      if (std::find(c.names.begin(), c.names.end(), apex.text) == c.names.end())
        throw Error(ErrorKind::JointParamRule, apex.pos,
                    "apex '" + apex.text + "' must be one of the names being parameterized");
      t.args.push_back({TypedTerm::Kind::Ref, Type::Name, std::nullopt, apex.text, 0.0, {}, apex.pos});
    }
    for (const std::string& n : c.names) declare(n, Type::Point, c.pos);
    out_.commands.push_back(
        {ValidatedCommand::Kind::ParamJoint, c.names, Type::Point, std::move(t), to_source(Command{c}), c.pos});
  }

  void handle(const DefineCommand& c) {
    auto type = parse_type(c.type);
    if (!type) throw Error(ErrorKind::UnknownType, c.pos, "unknown type '" + c.type + "'");
    TypedTerm value = check_value(c.value);
    if (value.type != *type)
      throw Error(ErrorKind::TypeMismatch, c.value.pos,
                  "expected " + std::string(type_name(*type)) + ", got " + std::string(type_name(value.type)));
    declare(c.name, *type, c.pos);
    out_.commands.push_back(
        {ValidatedCommand::Kind::Define, {c.name}, *type, std::move(value), to_source(Command{c}), c.pos});
  }

  void handle(const AssertCommand& c) {
    out_.commands.push_back({ValidatedCommand::Kind::Assert, {}, Type::Predicate, check_predicate(c.predicate),
                             to_source(c.predicate), c.pos});
  }

  void handle(const EvalCommand& c) {
    out_.commands.push_back({ValidatedCommand::Kind::Eval, {}, Type::Predicate, check_predicate(c.predicate),
                             to_source(c.predicate), c.pos});
  }

  // Matches already-typed arguments against overloads with the same arity.
  const BuiltinInfo& pick_overload(const std::vector<const BuiltinInfo*>& overloads, const Term& t,
                                   const std::vector<TypedTerm>& args) {
    const std::size_t n = args.size();
    std::vector<const BuiltinInfo*> by_arity;
    for (const BuiltinInfo* b : overloads)
      if (accepts_arity(*b, n)) by_arity.push_back(b);
    if (by_arity.empty()) {
      const BuiltinInfo& b = *overloads.front();
      if ((b.id == Builtin::InterLC || b.id == Builtin::InterCC) && n + 1 == b.args.size())
        throw Error(ErrorKind::MissingRootSelector, t.pos, "'" + t.text + "' requires a root selector");
      throw Error(ErrorKind::ArityMismatch, t.pos,
                  "'" + t.text + "' expects " + arity_text(b) + " argument(s), got " + std::to_string(n));
    }
    for (const BuiltinInfo* b : by_arity) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const Type want = b->variadic ? b->args.front() : b->args[i];
        ok = args[i].type == want;
      }
      if (ok) return *b;
    }
    // Report the first mismatching argument of the first candidate.
    const BuiltinInfo& b = *by_arity.front();
    for (std::size_t i = 0; i < n; ++i) {
      const Type want = b.variadic ? b.args.front() : b.args[i];
      if (args[i].type != want)
        throw Error(ErrorKind::TypeMismatch, args[i].pos,
                    "argument " + std::to_string(i + 1) + " of '" + t.text + "': expected " +
                        std::string(type_name(want)) + ", got " + std::string(type_name(args[i].type)));
    }
    throw Error(ErrorKind::TypeMismatch, t.pos, "no matching overload for '" + t.text + "'");
  }

  // Typechecks arguments of a single-signature builtin, allowing root
  // selector and predicate slots.
  std::vector<TypedTerm> check_args(const BuiltinInfo& b, const Term& t) {
    const std::size_t n = t.args.size();
    if (!accepts_arity(b, n)) {
      if ((b.id == Builtin::InterLC || b.id == Builtin::InterCC) && n + 1 == b.args.size())
        throw Error(ErrorKind::MissingRootSelector, t.pos, "'" + t.text + "' requires a root selector");
      throw Error(ErrorKind::ArityMismatch, t.pos,
                  "'" + t.text + "' expects " + arity_text(b) + " argument(s), got " + std::to_string(n));
    }
    std::vector<TypedTerm> args;
    for (std::size_t i = 0; i < n; ++i) {
      const Type want = b.variadic ? b.args.front() : b.args[i];
      TypedTerm a;
      if (want == Type::RootSelector) {
        a = check_selector(t.args[i]);
      } else if (want == Type::Predicate) {
        a = check_predicate(t.args[i]);
        if (b.id == Builtin::Not && !is_negatable(*a.builtin))
          throw Error(ErrorKind::TypeMismatch, t.args[i].pos, "'not' applies to equality-type predicates only");
      } else {
        a = check_value(t.args[i]);
        if (a.type != want)
          throw Error(ErrorKind::TypeMismatch, t.args[i].pos,
                      "argument " + std::to_string(i + 1) + " of '" + t.text + "': expected " +
                          std::string(type_name(want)) + ", got " + std::string(type_name(a.type)));
      }
      args.push_back(std::move(a));
    }
    return args;
  }

  TypedTerm resolve(const Term& t, const std::vector<const BuiltinInfo*>& overloads) {
    std::vector<TypedTerm> args;
    const BuiltinInfo* chosen = nullptr;
    if (overloads.size() == 1) {
      chosen = overloads.front();
      args = check_args(*chosen, t);
    } else {
      for (const Term& a : t.args) args.push_back(check_value(a));
      chosen = &pick_overload(overloads, t, args);
    }
    return TypedTerm{TypedTerm::Kind::Apply, chosen->result, chosen->id, {}, 0.0, std::move(args), t.pos};
  }

  TypedTerm check_value(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Number:
        return TypedTerm{TypedTerm::Kind::Literal, Type::Number, std::nullopt, {}, t.number, {}, t.pos};
      case Term::Kind::Symbol: {
        if (auto it = out_.symbols.find(t.text); it != out_.symbols.end())
          return TypedTerm{TypedTerm::Kind::Ref, it->second, std::nullopt, t.text, 0.0, {}, t.pos};
        auto fn = lookup(Category::Function, t.text);
        if (!fn.empty() && accepts_arity(*fn.front(), 0))
          return TypedTerm{TypedTerm::Kind::Apply, fn.front()->result, fn.front()->id, {}, 0.0, {}, t.pos};
        throw Error(ErrorKind::UndeclaredName, t.pos, "'" + t.text + "' is not declared");
      }
      case Term::Kind::Apply: {
        auto fn = lookup(Category::Function, t.text);
        if (fn.empty()) {
          if (!lookup(Category::Predicate, t.text).empty())
            throw Error(ErrorKind::TypeMismatch, t.pos, "'" + t.text + "' is a predicate, expected a value");
          if (!lookup(Category::RootSelector, t.text).empty())
            throw Error(ErrorKind::TypeMismatch, t.pos, "root selector '" + t.text + "' is not a value");
          throw Error(ErrorKind::UnknownFunction, t.pos, "unknown function '" + t.text + "'");
        }
        return resolve(t, fn);
      }
    }
    throw Error(ErrorKind::MalformedCommand, t.pos, "bad term");
  }

  TypedTerm check_predicate(const Term& t) {
    if (t.kind != Term::Kind::Apply) {
      throw Error(ErrorKind::TypeMismatch, t.pos, "expected a predicate application");
    }
    auto preds = lookup(Category::Predicate, t.text);
    if (preds.empty()) {
      if (!lookup(Category::Function, t.text).empty())
        throw Error(ErrorKind::TypeMismatch, t.pos, "'" + t.text + "' is a function, expected a predicate");
      throw Error(ErrorKind::UnknownFunction, t.pos, "unknown predicate '" + t.text + "'");
    }
    return resolve(t, preds);
  }

  TypedTerm check_selector(const Term& t) {
    std::vector<const BuiltinInfo*> sel;
    if (t.kind != Term::Kind::Number) sel = lookup(Category::RootSelector, t.text);
    if (sel.empty()) throw Error(ErrorKind::MissingRootSelector, t.pos, "expected a root selector");
    if (t.kind == Term::Kind::Symbol) {
      if (!accepts_arity(*sel.front(), 0))
        throw Error(ErrorKind::ArityMismatch, t.pos, "'" + t.text + "' expects arguments");
      return TypedTerm{TypedTerm::Kind::Apply, Type::RootSelector, sel.front()->id, {}, 0.0, {}, t.pos};
    }
    return resolve(t, sel);
  }

  TypedTerm check_parameterization(const Term& t, Type type) {
    if (t.kind == Term::Kind::Number) throw Error(ErrorKind::MalformedCommand, t.pos, "expected a parameterization");
    auto all = lookup(Category::Parameterization, t.text);
    std::vector<const BuiltinInfo*> matching;
    for (const BuiltinInfo* b : all)
      if (b->result == type) matching.push_back(b);
    if (matching.empty()) {
      if (!all.empty() || !lookup(Category::JointParameterization, t.text).empty())
        throw Error(ErrorKind::IncompatibleParameterization, t.pos,
                    "'" + t.text + "' cannot parameterize a " + std::string(type_name(type)));
      throw Error(ErrorKind::UnknownFunction, t.pos, "unknown parameterization '" + t.text + "'");
    }
    if (t.kind == Term::Kind::Symbol) {
      if (!accepts_arity(*matching.front(), 0))
        throw Error(ErrorKind::ArityMismatch, t.pos,
                    "'" + t.text + "' expects " + arity_text(*matching.front()) + " argument(s), got 0");
      return TypedTerm{TypedTerm::Kind::Apply, type, matching.front()->id, {}, 0.0, {}, t.pos};
    }
    return resolve(t, matching);
  }

  ValidatedProgram out_;
};

}  // namespace

ValidatedProgram validate(const std::vector<Command>& commands) { return Validator().run(commands); }

ValidatedProgram compile_source(std::string_view source) { return validate(parse(source)); }

}  // namespace gmb::dsl
