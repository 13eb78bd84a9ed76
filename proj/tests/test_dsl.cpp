#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <variant>

#include "gmb/dsl/validate.hpp"
#include "check_suite.hpp"

using namespace gmb;
using namespace gmb::dsl;

namespace {

ErrorKind error_of(std::string_view source) {
  try {
    compile_source(source);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for: " << source);
  return ErrorKind::InvalidCharacter;
}

}  // namespace

TEST_CASE("tokenize") {
  const auto t = tokenize("(midp A B)");
  REQUIRE(t.size() == 5);
  CHECK(t[0].kind == TokenKind::LParen);
  CHECK(t[1].kind == TokenKind::Symbol);
  CHECK(t[1].text == "midp");
  CHECK(t[2].text == "A");
  CHECK(t[3].text == "B");
  CHECK(t[4].kind == TokenKind::RParen);

  CHECK(tokenize("").empty());
  CHECK(tokenize("  ; only a comment\n\t").empty());

  const auto n = tokenize("(= 4.0 (dist A B))");
  CHECK(n.size() == 9);
  CHECK(n[2].kind == TokenKind::Number);
  CHECK(n[2].text == "4.0");

  for (const char* num : {"-1", "+2.5", "1e-3", "3.", ".5", "-2.5E+2"}) {
    const auto one = tokenize(num);
    REQUIRE(one.size() == 1);
    CHECK_MESSAGE(one[0].kind == TokenKind::Number, num);
  }
  // symbols may contain digits and operator characters
  for (const char* sym : {"P1", "rs-neq", ">=", "<", "=", "Gamma'"}) {
    const auto one = tokenize(sym);
    REQUIRE(one.size() == 1);
    CHECK_MESSAGE(one[0].kind == TokenKind::Symbol, sym);
  }

  const auto pos = tokenize("(a\n  b)");
  CHECK(pos[2].pos == SourcePos{2, 3});
}

TEST_CASE("parse commands") {
  const auto joint = parse("(param (A B C) acute-tri)");
  REQUIRE(joint.size() == 1);
  const auto& j = std::get<ParamJointCommand>(joint[0]);
  CHECK(j.names == std::vector<std::string>{"A", "B", "C"});
  CHECK(j.parameterization.kind == Term::Kind::Symbol);
  CHECK(j.parameterization.text == "acute-tri");

  const auto def = parse("(define O point (circumcenter A B C))");
  const auto& d = std::get<DefineCommand>(def.at(0));
  CHECK(d.name == "O");
  CHECK(d.type == "point");
  CHECK(same_structure(d.value, Term::apply("circumcenter", {Term::symbol("A"), Term::symbol("B"), Term::symbol("C")})));

  const auto as = parse("(assert (tangent-lc (line P Q) Gamma))");
  const auto& a = std::get<AssertCommand>(as.at(0));
  CHECK(same_structure(
      a.predicate, Term::apply("tangent-lc", {Term::apply("line", {Term::symbol("P"), Term::symbol("Q")}), Term::symbol("Gamma")})));

  const auto plain = parse("(param X point)");
  CHECK_FALSE(std::get<ParamCommand>(plain.at(0)).parameterization.has_value());
  const auto ev = parse("(eval (= 1.0 2))");
  CHECK(std::get<EvalCommand>(ev.at(0)).predicate.args.at(0).number == 1.0);
}

TEST_CASE("printing and re-parsing gives the same program") {
  for (const char* file : {"imo-2011-p6.gmbl", "imo-2008-p1.gmbl", "imo-2009-p2.gmbl", "line-circle-neq.gmbl",
                                  "line-circle-arbitrary.gmbl", "contradiction.gmbl"}) {
    const auto program = parse(testing::read_text(testing::corpus_path(file)));
    const std::string printed = to_source(program);
    const auto again = parse(printed);
    REQUIRE(again.size() == program.size());
    for (std::size_t i = 0; i < program.size(); ++i) CHECK_MESSAGE(same_structure(program[i], again[i]), file);
    CHECK(to_source(again) == printed);
  }
}

TEST_CASE("syntax errors") {
  CHECK(error_of("(param A point") == ErrorKind::UnbalancedParens);
  CHECK(error_of("(param A point))") == ErrorKind::UnbalancedParens);
  CHECK(error_of("(param A point) #") == ErrorKind::InvalidCharacter);
  CHECK(error_of("(declare A point)") == ErrorKind::UnknownCommand);
  CHECK(error_of("(param A)") == ErrorKind::MalformedCommand);
  CHECK(error_of("A") == ErrorKind::MalformedCommand);
  CHECK(error_of("(param A vector)") == ErrorKind::UnknownType);
}

TEST_CASE("validation errors") {
  CHECK(error_of("(param A point)\n(define M point (midp A B))") == ErrorKind::UndeclaredName);
  try {
    compile_source("(param A point)\n(define M point (midp A B))");
  } catch (const Error& e) {
    CHECK(e.detail().find('B') != std::string::npos);
    CHECK(e.pos().line == 2);
  }
  CHECK(error_of("(param A point)(param A point)") == ErrorKind::DuplicateName);
  CHECK(error_of("(param A point)(param B point)(define L line (midp A B))") == ErrorKind::TypeMismatch);
  CHECK(error_of("(param A point)(param L line)(assert (on-circ A L))") == ErrorKind::TypeMismatch);
  CHECK(error_of("(param A point)(define X point (frobnicate A))") == ErrorKind::UnknownFunction);
  CHECK(error_of("(param A point)(param B point)(define M point (midp A))") == ErrorKind::ArityMismatch);
  CHECK(error_of("(param L line)(param C circle)(define X point (inter-lc L C))") == ErrorKind::MissingRootSelector);
  CHECK(error_of("(param (P Q R S) (iso-tri Q))") == ErrorKind::JointParamRule);
  CHECK(error_of("(param (P Q R) (iso-tri S))") == ErrorKind::JointParamRule);
  CHECK(error_of("(param (P Q) polygon)") == ErrorKind::JointParamRule);
  CHECK(error_of("(param (P P R) triangle)") == ErrorKind::DuplicateName);
  CHECK(error_of("(param A point)(param C circle)(param L line (on-circ C))") ==
        ErrorKind::IncompatibleParameterization);
}

TEST_CASE("the 2009 problem declares ten objects") {
  const auto p = compile_source(testing::read_text(testing::corpus_path("imo-2009-p2.gmbl")));
  CHECK(p.declaration_order.size() == 10);
  CHECK(p.symbols.at("Gamma") == Type::Circle);
  CHECK(p.symbols.at("O") == Type::Point);
}

TEST_CASE("heads are case-insensitive, names are not") {
  CHECK_NOTHROW(compile_source("(PARAM A point)(Define M POINT (MidP A A))(Assert (Coll A A M))"));
  CHECK(error_of("(param a point)(define M point (midp A a))") == ErrorKind::UndeclaredName);
  CHECK_NOTHROW(compile_source("(param a point)(param A point)"));
}

TEST_CASE("negation wraps equality predicates") {
  CHECK_NOTHROW(compile_source("(param A point)(param B point)(assert (not (= A B)))"));
  CHECK_NOTHROW(compile_source("(param A point)(param B point)(param C point)(eval (not (coll A B C)))"));
  CHECK(error_of("(param A point)(param B point)(assert (not (midp A B)))") == ErrorKind::ArityMismatch);
}

TEST_CASE("validation is deterministic") {
  const std::string src = testing::read_text(testing::corpus_path("imo-2008-p1.gmbl"));
  const auto a = compile_source(src), b = compile_source(src);
  REQUIRE(a.commands.size() == b.commands.size());
  for (std::size_t i = 0; i < a.commands.size(); ++i) CHECK(a.commands[i].source == b.commands[i].source);
  CHECK(a.declaration_order == b.declaration_order);
  CHECK(error_of("(param A point)(define M point (midp A B))") ==
        error_of("(param A point)(define M point (midp A B))"));
}

TEST_CASE("builtin reference lists every head") {
  const std::string md = builtins_markdown();
  for (const BuiltinInfo& b : builtins()) CHECK_MESSAGE(md.find(std::string(b.name)) != std::string::npos, b.name);
}

TEST_CASE("every table row at its arity") { testing::check_suite(testing::validator_table_suite()); }
