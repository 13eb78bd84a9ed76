#include "gmb/dsl/syntax.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>

namespace gmb::dsl {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidCharacter: return "InvalidCharacter";
    case ErrorKind::UnbalancedParens: return "UnbalancedParens";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::MalformedCommand: return "MalformedCommand";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UndeclaredName: return "UndeclaredName";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MissingRootSelector: return "MissingRootSelector";
    case ErrorKind::JointParamRule: return "JointParamRule";
    case ErrorKind::IncompatibleParameterization: return "IncompatibleParameterization";
  }
  return "Error";
}

namespace {

std::string format_error(ErrorKind kind, SourcePos pos, const std::string& detail) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + std::string(error_kind_name(kind)) +
         ": " + detail;
}

bool is_atom_char(unsigned char c) {
  if (std::isalnum(c)) return true;
  switch (c) {
    case '-':
    case '_':
    case '=':
    case '<':
    case '>':
    case '.':
    case '!':
    case '?':
    case '*':
    case '+':
    case '/':
    case '\'':
    case ':':
      return true;
    default:
      return false;
  }
}

bool is_delimiter(unsigned char c) { return c == '(' || c == ')' || c == ';' || std::isspace(c); }

const std::regex& number_pattern() {
  static const std::regex re(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?)");
  return re;
}

std::optional<double> parse_number(const std::string& text) {
  if (!std::regex_match(text, number_pattern())) return std::nullopt;
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace

Error::Error(ErrorKind kind, SourcePos pos, const std::string& detail)
    : std::runtime_error(format_error(kind, pos, detail)), kind_(kind), pos_(pos), detail_(detail) {}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < source.size()) {
    const auto c = static_cast<unsigned char>(source[i]);
    if (std::isspace(c)) {
      advance();
    } else if (c == ';') {
      while (i < source.size() && source[i] != '\n') advance();
    } else if (c == '(' || c == ')') {
      tokens.push_back({c == '(' ? TokenKind::LParen : TokenKind::RParen, std::string(1, source[i]), {line, col}});
      advance();
    } else if (is_atom_char(c)) {
      const SourcePos start{line, col};
      std::string text;
      while (i < source.size() && !is_delimiter(static_cast<unsigned char>(source[i]))) {
        if (!is_atom_char(static_cast<unsigned char>(source[i])))
          throw Error(ErrorKind::InvalidCharacter, {line, col}, "unexpected byte in atom");
        text += source[i];
        advance();
      }
      if (auto value = parse_number(text)) {
        if (!std::isfinite(*value)) throw Error(ErrorKind::InvalidCharacter, start, "number literal out of range");
        tokens.push_back({TokenKind::Number, text, start});
      } else {
        tokens.push_back({TokenKind::Symbol, text, start});
      }
    } else {
      throw Error(ErrorKind::InvalidCharacter, {line, col}, "unexpected character");
    }
  }
  return tokens;
}

Term Term::symbol(std::string text, SourcePos pos) {
  Term t;
  t.kind = Kind::Symbol;
  t.text = std::move(text);
  t.pos = pos;
  return t;
}

Term Term::literal(double value, SourcePos pos) {
  Term t;
  t.kind = Kind::Number;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  t.text = buf;
  t.number = value;
  t.pos = pos;
  return t;
}

Term Term::apply(std::string head, std::vector<Term> args, SourcePos pos) {
  Term t;
  t.kind = Kind::Apply;
  t.text = std::move(head);
  t.args = std::move(args);
  t.pos = pos;
  return t;
}

bool same_structure(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Symbol: return a.text == b.text;
    case Term::Kind::Number: return a.number == b.number;
    case Term::Kind::Apply:
      if (a.text != b.text || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_structure(a.args[i], b.args[i])) return false;
      return true;
  }
  return false;
}

namespace {

// Generic S-expression, before commands are recognized.
struct SExpr {
  bool is_list = false;
  Token atom;
  std::vector<SExpr> items;
  SourcePos pos;
};

class Reader {
 public:
  explicit Reader(const std::vector<Token>& tokens) : tokens_(tokens) {}

  bool done() const { return i_ >= tokens_.size(); }

  SExpr read() {
    const Token& tok = tokens_[i_++];
    if (tok.kind == TokenKind::RParen) throw Error(ErrorKind::UnbalancedParens, tok.pos, "unexpected ')'");
    if (tok.kind != TokenKind::LParen) return SExpr{false, tok, {}, tok.pos};
    SExpr list{true, {}, {}, tok.pos};
    while (true) {
      if (done()) throw Error(ErrorKind::UnbalancedParens, tok.pos, "unclosed '('");
      if (tokens_[i_].kind == TokenKind::RParen) {
        ++i_;
        return list;
      }
      list.items.push_back(read());
    }
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t i_ = 0;
};

Term to_term(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom.kind == TokenKind::Number) {
      Term t = Term::literal(*parse_number(e.atom.text), e.pos);
      t.text = e.atom.text;
      return t;
    }
    return Term::symbol(e.atom.text, e.pos);
  }
  if (e.items.empty()) throw Error(ErrorKind::MalformedCommand, e.pos, "empty term '()'");
  const SExpr& head = e.items.front();
  if (head.is_list || head.atom.kind != TokenKind::Symbol)
    throw Error(ErrorKind::MalformedCommand, head.pos, "term head must be a symbol");
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(to_term(e.items[i]));
  return Term::apply(head.atom.text, std::move(args), e.pos);
}

const std::string& expect_symbol(const SExpr& e, const char* what) {
  if (e.is_list || e.atom.kind != TokenKind::Symbol)
    throw Error(ErrorKind::MalformedCommand, e.pos, std::string("expected ") + what);
  return e.atom.text;
}

Command to_command(const SExpr& form) {
  if (!form.is_list) throw Error(ErrorKind::MalformedCommand, form.pos, "top-level form must be a list");
  if (form.items.empty()) throw Error(ErrorKind::MalformedCommand, form.pos, "empty command");
  const SExpr& head = form.items.front();
  if (head.is_list || head.atom.kind != TokenKind::Symbol)
    throw Error(ErrorKind::UnknownCommand, head.pos, "command head must be a symbol");
  const std::string cmd = lowercase(head.atom.text);
  const std::size_t n = form.items.size();

  if (cmd == "param") {
    if (n >= 2 && form.items[1].is_list) {
      if (n != 3) throw Error(ErrorKind::MalformedCommand, form.pos, "usage: (param (<name> ...) <parameterization>)");
      ParamJointCommand c;
      for (const SExpr& name : form.items[1].items) c.names.push_back(expect_symbol(name, "point name"));
      c.parameterization = to_term(form.items[2]);
      c.pos = form.pos;
      return c;
    }
    if (n != 3 && n != 4)
      throw Error(ErrorKind::MalformedCommand, form.pos, "usage: (param <name> <type> [<parameterization>])");
    ParamCommand c;
    c.name = expect_symbol(form.items[1], "object name");
    c.type = expect_symbol(form.items[2], "type");
    if (n == 4) c.parameterization = to_term(form.items[3]);
    c.pos = form.pos;
    return c;
  }
  if (cmd == "define") {
    if (n != 4) throw Error(ErrorKind::MalformedCommand, form.pos, "usage: (define <name> <type> <value>)");
    return DefineCommand{expect_symbol(form.items[1], "object name"), expect_symbol(form.items[2], "type"),
                         to_term(form.items[3]), form.pos};
  }
  if (cmd == "assert" || cmd == "eval") {
    if (n != 2) throw Error(ErrorKind::MalformedCommand, form.pos, "usage: (" + cmd + " <predicate>)");
    Term pred = to_term(form.items[1]);
    if (cmd == "assert") return AssertCommand{std::move(pred), form.pos};
    return EvalCommand{std::move(pred), form.pos};
  }
  throw Error(ErrorKind::UnknownCommand, head.pos, "unknown command '" + head.atom.text + "'");
}

}  // namespace

std::vector<Command> parse(const std::vector<Token>& tokens) {
  Reader reader(tokens);
  std::vector<Command> commands;
  while (!reader.done()) commands.push_back(to_command(reader.read()));
  return commands;
}

std::vector<Command> parse(std::string_view source) { return parse(tokenize(source)); }

std::string to_source(const Term& term) {
  switch (term.kind) {
    case Term::Kind::Symbol:
    case Term::Kind::Number: return term.text;
    case Term::Kind::Apply: {
      std::string out = "(" + term.text;
      for (const Term& a : term.args) out += " " + to_source(a);
      return out + ")";
    }
  }
  return {};
}

std::string to_source(const Command& command) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ParamCommand>) {
          std::string out = "(param " + c.name + " " + c.type;
          if (c.parameterization) out += " " + to_source(*c.parameterization);
          return out + ")";
        } else if constexpr (std::is_same_v<T, ParamJointCommand>) {
          std::string names;
          for (const auto& n : c.names) names += (names.empty() ? "" : " ") + n;
          return "(param (" + names + ") " + to_source(c.parameterization) + ")";
        } else if constexpr (std::is_same_v<T, DefineCommand>) {
          return "(define " + c.name + " " + c.type + " " + to_source(c.value) + ")";
        } else if constexpr (std::is_same_v<T, AssertCommand>) {
          return "(assert " + to_source(c.predicate) + ")";
        } else {
          return "(eval " + to_source(c.predicate) + ")";
        }
      },
      command);
}

std::string to_source(const std::vector<Command>& program) {
  std::string out;
  for (const Command& c : program) out += to_source(c) + "\n";
  return out;
}

bool same_structure(const Command& a, const Command& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& ca) -> bool {
        using T = std::decay_t<decltype(ca)>;
        const T& cb = std::get<T>(b);
        if constexpr (std::is_same_v<T, ParamCommand>) {
          if (ca.name != cb.name || ca.type != cb.type) return false;
          if (ca.parameterization.has_value() != cb.parameterization.has_value()) return false;
          return !ca.parameterization || same_structure(*ca.parameterization, *cb.parameterization);
        } else if constexpr (std::is_same_v<T, ParamJointCommand>) {
          return ca.names == cb.names && same_structure(ca.parameterization, cb.parameterization);
        } else if constexpr (std::is_same_v<T, DefineCommand>) {
          return ca.name == cb.name && ca.type == cb.type && same_structure(ca.value, cb.value);
        } else {
          return same_structure(ca.predicate, cb.predicate);
        }
      },
      a);
}

}  // namespace gmb::dsl
