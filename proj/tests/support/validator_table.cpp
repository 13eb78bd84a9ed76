#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "suites.hpp"

// Every documented builtin is written out as it appears in the reference
// tables, in the declared context below, and must validate; the same usage
// with one argument more or fewer must be rejected.

namespace gmb::testing {

namespace {

const char* kContext =
    "(param A point)(param B point)(param C point)(param D point)(param E point)\n"
    "(param F point)(param G point)(param H point)(param P point)\n"
    "(param L1 line)(param L2 line)(param L3 line)\n"
    "(param C1 circle)(param C2 circle)\n"
    "(define N1 number (dist A B))(define N2 number (dist C D))\n";

enum class Use { Function, Predicate, Param, Selector };

struct Row {
  Use use;
  std::string head;
  std::string args;   // space-separated, as in the table
  std::string type;   // result type for functions and parameterizations
  bool variadic = false;
};

// Function table.
const std::vector<Row> kFunctions = {
    {Use::Function, "amidp-opp", "A B C", "point"},
    {Use::Function, "amidp-same", "A B C", "point"},
    {Use::Function, "centroid", "A B C", "point"},
    {Use::Function, "circumcenter", "A B C", "point"},
    {Use::Function, "excenter", "A B C", "point"},
    {Use::Function, "foot", "A L1", "point"},
    {Use::Function, "harmonic-conj", "C A B", "point"},
    {Use::Function, "incenter", "A B C", "point"},
    {Use::Function, "inter-cc", "C1 C2 rs-arbitrary", "point"},
    {Use::Function, "inter-ll", "L1 L2", "point"},
    {Use::Function, "inter-lc", "L1 C1 rs-arbitrary", "point"},
    {Use::Function, "isogonal-conj", "D A B C", "point"},
    {Use::Function, "isotomic-conj", "D A B C", "point"},
    {Use::Function, "midp", "A B", "point"},
    {Use::Function, "mixtilinear-incenter", "A B C", "point"},
    {Use::Function, "orthocenter", "A B C", "point"},
    {Use::Function, "connecting", "A B", "line"},
    {Use::Function, "isogonal", "D A B C", "line"},
    {Use::Function, "isotomic", "D A B C", "line"},
    {Use::Function, "perp-bis", "A B", "line"},
    {Use::Function, "perp-at", "A L1", "line"},
    {Use::Function, "c3", "A B C", "circle"},
    {Use::Function, "circumcircle", "A B C", "circle"},
    {Use::Function, "excircle", "A B C", "circle"},
    {Use::Function, "incircle", "A B C", "circle"},
    {Use::Function, "mixtilinear-incircle", "A B C", "circle"},
    {Use::Function, "diam", "A B", "circle"},
    {Use::Function, "add", "N1 N2", "number"},
    {Use::Function, "area", "A B C", "number"},
    {Use::Function, "dist", "A B", "number"},
    {Use::Function, "div", "N1 N2", "number"},
    {Use::Function, "mul", "N1 N2", "number"},
    {Use::Function, "pi", "", "number"},
    {Use::Function, "pow", "N1 N2", "number"},
    {Use::Function, "neg", "N1", "number"},
    {Use::Function, "radius", "C1", "number"},
    {Use::Function, "sqrt", "N1", "number"},
    {Use::Function, "uangle", "A B C", "number"},
};

// Predicate table.
const std::vector<Row> kPredicates = {
    {Use::Predicate, "centroid", "P A B C", ""},
    {Use::Predicate, "concur", "L1 L2 L3", ""},
    {Use::Predicate, "circumcenter", "P A B C", ""},
    {Use::Predicate, "cong", "A B C D", ""},
    {Use::Predicate, "contri", "A B C D E F", ""},
    {Use::Predicate, "coll", "A B C", ""},
    {Use::Predicate, "cycl", "A B C D", "", true},
    {Use::Predicate, "=", "A B", ""},
    {Use::Predicate, "=", "N1 N2", ""},
    {Use::Predicate, "eq-ratio", "A B C D E F G H", ""},
    {Use::Predicate, "foot", "P A L1", ""},
    {Use::Predicate, ">", "N1 N2", ""},
    {Use::Predicate, ">=", "N1 N2", ""},
    {Use::Predicate, "incenter", "P A B C", ""},
    {Use::Predicate, "inter-ll", "P L1 L2", ""},
    {Use::Predicate, "<", "N1 N2", ""},
    {Use::Predicate, "<=", "N1 N2", ""},
    {Use::Predicate, "midp", "P A B", ""},
    {Use::Predicate, "on-circ", "P C1", ""},
    {Use::Predicate, "on-line", "P L1", ""},
    {Use::Predicate, "on-ray", "P A B", ""},
    {Use::Predicate, "on-seg", "P A B", ""},
    {Use::Predicate, "opp-sides", "A B L1", ""},
    {Use::Predicate, "orthocenter", "P A B C", ""},
    {Use::Predicate, "perp", "L1 L2", ""},
    {Use::Predicate, "para", "L1 L2", ""},
    {Use::Predicate, "same-side", "A B L1", ""},
    {Use::Predicate, "sim-tri", "A B C D E F", ""},
    {Use::Predicate, "tangent-cc", "C1 C2", ""},
    {Use::Predicate, "tangent-lc", "L1 C1", ""},
    {Use::Predicate, "tangent-at-cc", "A C1 C2", ""},
    {Use::Predicate, "tangent-at-lc", "A L1 C1", ""},
};

// Parameterization table.
const std::vector<Row> kParams = {
    {Use::Param, "on-circ", "C1", "point"},
    {Use::Param, "on-line", "L1", "point"},
    {Use::Param, "on-major-arc", "C1 A B", "point"},
    {Use::Param, "on-minor-arc", "C1 A B", "point"},
    {Use::Param, "in-poly", "A B C", "point", true},
    {Use::Param, "on-ray", "A B", "point"},
    {Use::Param, "on-ray-opp", "A B", "point"},
    {Use::Param, "on-seg", "A B", "point"},
    {Use::Param, "tangent-lc", "C1", "line"},
    {Use::Param, "through", "A", "line"},
    {Use::Param, "tangent-cc", "C1", "circle"},
    {Use::Param, "tangent-cl", "L1", "circle"},
    {Use::Param, "through", "A", "circle"},
    {Use::Param, "origin", "A", "circle"},
    {Use::Param, "radius", "N1", "circle"},
};

// Root selector table, used inside inter-lc.
const std::vector<Row> kSelectors = {
    {Use::Selector, "rs-arbitrary", "", ""},
    {Use::Selector, "(rs-neq", "A", ""},
    {Use::Selector, "(rs-opp-sides", "A L1", ""},
    {Use::Selector, "(rs-same-side", "A L1", ""},
    {Use::Selector, "(rs-closer-to-p", "A", ""},
    {Use::Selector, "(rs-closer-to-l", "L1", ""},
};

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& w : v) s += " " + w;
  return s;
}

std::string usage(const Row& row, const std::vector<std::string>& args) {
  switch (row.use) {
    case Use::Function:
      if (row.head == "pi" && args.empty()) return "(define X number pi)";
      return "(define X " + row.type + " (" + row.head + join(args) + "))";
    case Use::Predicate: return "(assert (" + row.head + join(args) + "))";
    case Use::Param: return "(param X " + row.type + " (" + row.head + join(args) + "))";
    case Use::Selector: {
      const std::string sel = row.head[0] == '(' ? row.head + join(args) + ")"
                              : args.empty()     ? row.head
                                                 : "(" + row.head + join(args) + ")";
      return "(define X point (inter-lc L1 C1 " + sel + "))";
    }
  }
  return {};
}

// Argument used to pad an over-long call: a copy of the last argument when the
// row has one, else a point.
std::string filler(const std::vector<std::string>& args) {
  if (args.empty()) return "A";
  const std::string& last = args.back();
  return last.rfind("rs-", 0) == 0 ? "A" : last;
}

struct Outcome {
  bool accepted;
  std::string error;
};

Outcome try_compile(const std::string& line) {
  try {
    dsl::compile_source(std::string(kContext) + line + "\n");
    return {true, {}};
  } catch (const dsl::Error& e) {
    return {false, std::string(dsl::error_kind_name(e.kind())) + ": " + e.detail()};
  }
}

void check_row(SuiteResult& r, const Row& row, int& rows) {
  ++rows;
  const std::vector<std::string> args = split(row.args);
  auto expect = [&](const std::vector<std::string>& a, bool accept, const char* what) {
    const std::string src = usage(row, a);
    const Outcome out = try_compile(src);
    r.check(out.accepted == accept, src + ": " + what + (out.accepted ? " but accepted" : " but rejected: " + out.error));
  };
  expect(args, true, "expected acceptance");
  if (row.variadic) {
    std::vector<std::string> longer = args;
    longer.push_back("E");
    expect(longer, true, "expected acceptance with one more point");
  } else {
    std::vector<std::string> longer = args;
    longer.push_back(filler(args));
    expect(longer, false, "expected rejection with one argument more");
  }
  if (!args.empty()) {
    std::vector<std::string> shorter(args.begin(), args.end() - 1);
    expect(shorter, false, "expected rejection with one argument fewer");
  }
}

}  // namespace

SuiteResult validator_table_suite() {
  SuiteResult r{"validator table"};
  int rows = 0;
  for (const auto* table : {&kFunctions, &kPredicates, &kParams, &kSelectors})
    for (const Row& row : *table) check_row(r, row, rows);

  // Joint parameterizations: the name list and the apex argument.
  struct Joint {
    std::string term;        // as written after the names
    std::string shorter;     // the term with one argument fewer, or empty
    std::string longer;      // the term with one argument more
    std::size_t names;
  };
  const std::vector<Joint> joints = {
      {"acute-tri", "", "(acute-tri X1)", 3},
      {"(acute-iso-tri X2)", "(acute-iso-tri)", "(acute-iso-tri X2 X3)", 3},
      {"(iso-tri X2)", "(iso-tri)", "(iso-tri X2 X3)", 3},
      {"(right-tri X2)", "(right-tri)", "(right-tri X2 X3)", 3},
      {"triangle", "", "(triangle X1)", 3},
      {"polygon", "", "(polygon X1)", 4},
  };
  auto names = [](std::size_t n) {
    std::string s = "(";
    for (std::size_t i = 1; i <= n; ++i) s += (i > 1 ? " X" : "X") + std::to_string(i);
    return s + ")";
  };
  for (const Joint& j : joints) {
    ++rows;
    auto expect = [&](const std::string& src, bool accept, const char* what) {
      const Outcome out = try_compile(src);
      r.check(out.accepted == accept,
              src + ": " + what + (out.accepted ? " but accepted" : " but rejected: " + out.error));
    };
    expect("(param " + names(j.names) + " " + j.term + ")", true, "expected acceptance");
    expect("(param " + names(j.names) + " " + j.longer + ")", false, "expected rejection with one argument more");
    if (!j.shorter.empty()) expect("(param " + names(j.names) + " " + j.shorter + ")", false, "expected rejection");
    if (j.term == "polygon") {
      expect("(param " + names(3) + " polygon)", true, "expected a triangle as a polygon");
      expect("(param " + names(2) + " polygon)", false, "expected rejection of two names");
    } else {
      expect("(param " + names(2) + " " + j.term + ")", false, "expected rejection of two names");
      expect("(param " + names(4) + " " + j.term + ")", false, "expected rejection of four names");
    }
  }

  // The apex must be one of the declared names.
  for (const char* head : {"acute-iso-tri", "iso-tri", "right-tri"})
    r.check(try_compile(std::string("(param (X1 X2 X3) (") + head + " Y))").error.rfind("JointParamRule", 0) == 0,
            std::string(head) + " with an apex outside the names not reported as JointParamRule");

  // Minimum counts of the variadic forms.
  r.check(!try_compile("(assert (cycl A B C))").accepted, "(cycl A B C) accepted with three points");
  r.check(!try_compile("(param X point (in-poly A B))").accepted, "(in-poly A B) accepted with two points");
  // Intersections demand a root selector.
  r.check(try_compile("(define X point (inter-lc L1 C1))").error.rfind("MissingRootSelector", 0) == 0,
          "inter-lc without a selector not reported as MissingRootSelector");
  r.check(try_compile("(define X point (inter-cc C1 C2))").error.rfind("MissingRootSelector", 0) == 0,
          "inter-cc without a selector not reported as MissingRootSelector");
  // Shorthands used throughout the example programs.
  r.check(try_compile("(define X line (line A B))").accepted, "(line A B) rejected");
  r.check(try_compile("(define X circle (circ A B C))").accepted, "(circ A B C) rejected");

  char buf[120];
  std::snprintf(buf, sizeof buf, "%d table rows, %ld usages checked, %ld wrong verdicts", rows, r.checks, r.failed);
  r.summary = buf;
  return r;
}

}  // namespace gmb::testing
