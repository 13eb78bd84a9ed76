#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gmb::dsl {

struct SourcePos {
  int line = 1;
  int col = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorKind {
  InvalidCharacter,
  UnbalancedParens,
  UnknownCommand,
  MalformedCommand,
  UnknownType,
  UnknownFunction,
  UndeclaredName,
  DuplicateName,
  TypeMismatch,
  ArityMismatch,
  MissingRootSelector,
  JointParamRule,
  IncompatibleParameterization,
};

std::string_view error_kind_name(ErrorKind kind);

// Frontend error with the source position it refers to. The first error
// aborts processing.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, SourcePos pos, const std::string& detail);

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

enum class TokenKind { LParen, RParen, Symbol, Number };

struct Token {
  TokenKind kind;
  std::string text;
  SourcePos pos;
};

// Splits source into tokens; `;` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view source);

// A term: a symbol, a number literal, or an application `(head args...)`.
struct Term {
  enum class Kind { Symbol, Number, Apply };

  Kind kind = Kind::Symbol;
  std::string text;  // symbol, literal spelling, or application head
  double number = 0.0;
  std::vector<Term> args;
  SourcePos pos;

  static Term symbol(std::string text, SourcePos pos = {});
  static Term literal(double value, SourcePos pos = {});
  static Term apply(std::string head, std::vector<Term> args, SourcePos pos = {});
};

// Structural equality; ignores positions and literal spelling.
bool same_structure(const Term& a, const Term& b);

struct ParamCommand {
  std::string name;
  std::string type;
  std::optional<Term> parameterization;
  SourcePos pos;
};

struct ParamJointCommand {
  std::vector<std::string> names;
  Term parameterization;
  SourcePos pos;
};

struct DefineCommand {
  std::string name;
  std::string type;
  Term value;
  SourcePos pos;
};

struct AssertCommand {
  Term predicate;
  SourcePos pos;
};

struct EvalCommand {
  Term predicate;
  SourcePos pos;
};

using Command = std::variant<ParamCommand, ParamJointCommand, DefineCommand, AssertCommand, EvalCommand>;

std::vector<Command> parse(const std::vector<Token>& tokens);
std::vector<Command> parse(std::string_view source);

std::string to_source(const Term& term);
std::string to_source(const Command& command);
std::string to_source(const std::vector<Command>& program);

bool same_structure(const Command& a, const Command& b);

std::string lowercase(std::string_view s);

}  // namespace gmb::dsl
