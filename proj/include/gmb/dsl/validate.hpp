#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmb/dsl/builtins.hpp"
#include "gmb/dsl/syntax.hpp"

namespace gmb::dsl {

// A term whose head has been resolved against the builtin table.
struct TypedTerm {
  enum class Kind { Ref, Literal, Apply };

  Kind kind = Kind::Ref;
  Type type = Type::Number;
  std::optional<Builtin> builtin;  // set for Apply
  std::string name;                // Ref: object name; Apply with Name args: see args
  double literal = 0.0;
  std::vector<TypedTerm> args;
  SourcePos pos;
};

struct ValidatedCommand {
  enum class Kind { Param, ParamJoint, Define, Assert, Eval };

  Kind kind;
  std::vector<std::string> names;  // one for Param/Define, several for ParamJoint
  Type type = Type::Point;
  std::optional<TypedTerm> term;  // parameterization, definition, or predicate
  std::string source;
  SourcePos pos;
};

struct ValidatedProgram {
  std::vector<ValidatedCommand> commands;
  std::map<std::string, Type> symbols;
  std::vector<std::string> declaration_order;
};

// Resolves names and builtins, checks arity, types and scoping. Heads are
// case-insensitive; object names are case-sensitive.
ValidatedProgram validate(const std::vector<Command>& commands);

// tokenize + parse + validate.
ValidatedProgram compile_source(std::string_view source);

// Predicates that `not` may wrap.
bool is_negatable(Builtin predicate);

}  // namespace gmb::dsl
