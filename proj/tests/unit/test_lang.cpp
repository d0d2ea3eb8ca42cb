#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "xform/lang/checker.hpp"
#include "xform/lang/interpreter.hpp"
#include "xform/lang/lexer.hpp"
#include "xform/lang/parser.hpp"
#include "xform/lang/printer.hpp"
#include "xform/lang/program.hpp"

using namespace xform;
using namespace xform::lang;

namespace {

const char* const kUsername = R"(transform(x) {
  let parts = split(x)
  let initials = ""
  for i in length(parts) - 1 {
    initials = initials + lower(char_at(parts[i], 0)) + "."
  }
  initials + lower(parts[-1])
})";

std::size_t count_kind(const Block& b, StmtKind k) {
  std::size_t n = 0;
  for (const auto& s : b.stmts) {
    if (s.kind == k) ++n;
    if (s.body) n += count_kind(*s.body, k);
  }
  return n;
}

Diagnostics diagnose(std::string_view src) { return check(parse_source(src)); }

bool has_message(const Diagnostics& d, Severity sev, std::string_view needle) {
  for (const auto& item : d.items) {
    if (item.severity == sev && item.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

// Random source text over the whole grammar; used for the printer round trip.
class SourceGen {
 public:
  explicit SourceGen(std::uint64_t seed) : rng_(seed) {}

  std::string program() {
    std::string out;
    if (pick(3) == 0) out += "fn helper(a, b) {\n" + block(2, false) + "}\n";
    out += "transform(x) {\n" + block(3, false) + "}\n";
    return out;
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::string name() {
    static const char* names[] = {"x", "xn", "a", "b", "total", "item"};
    return names[pick(6)];
  }

  std::string literal() {
    switch (pick(5)) {
      case 0: return std::to_string(pick(1000));
      case 1: {
        static const char* reals[] = {"0.5", "1.25", "3.0", "1e-3", "2.5e10", "0.1"};
        return reals[pick(6)];
      }
      case 2: {
        static const char* strs[] = {R"("")", R"("a b")", R"("q\"uote")", R"("back\\slash")", R"("tab\tnl\n")",
                                     "\"\xc3\xa9t\xc3\xa9\"", R"("\u{1F600}")"};
        return strs[pick(7)];
      }
      case 3: return pick(2) ? "true" : "false";
      default: return name();
    }
  }

  // `not` binds looser than arithmetic, so it needs parentheses as an operand.
  std::string operand(int depth) {
    std::string e = expr(depth);
    return e.rfind("not ", 0) == 0 ? "(" + e + ")" : e;
  }

  std::string expr(int depth) {
    if (depth <= 0) return literal();
    static const char* ops[] = {"+", "-", "*", "/", "//", "%", "==", "!=", "<", "<=", ">", ">=", "and", "or"};
    switch (pick(9)) {
      case 0: {
        const std::size_t op = pick(14);
        // comparisons do not chain
        if (op >= 6 && op < 12) return "(" + expr(depth - 1) + ") " + ops[op] + " (" + expr(depth - 1) + ")";
        return operand(depth - 1) + " " + ops[op] + " " + operand(depth - 1);
      }
      case 1: return pick(2) ? "-" + operand(depth - 1) : "not " + expr(depth - 1);
      case 2: return "(" + expr(depth - 1) + ")";
      case 3: {
        static const char* fns[] = {"upper", "split", "join", "length", "substring", "helper"};
        std::string s = std::string(fns[pick(6)]) + "(";
        const std::size_t n = pick(3);
        for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + expr(depth - 1);
        return s + ")";
      }
      case 4: return "if " + expr(depth - 1) + " { " + expr(depth - 1) + " } else { " + expr(depth - 1) + " }";
      case 5: return "[" + expr(depth - 1) + ", " + expr(depth - 1) + "]";
      case 6: return name() + "[" + expr(depth - 1) + "]";
      case 7: {
        std::string lo = pick(2) ? expr(depth - 1) : "";
        std::string hi = pick(2) ? expr(depth - 1) : "";
        return name() + "[" + lo + ":" + hi + "]";
      }
      default: return literal();
    }
  }

  std::string stmt(int depth, bool in_loop) {
    switch (pick(in_loop ? 9 : 7)) {
      case 0: return "let " + name() + " = " + expr(2);
      case 1: return name() + " = " + expr(2);
      case 2:
        if (depth <= 0) return expr(1);
        return "for item in " + expr(1) + " {\n" + block(depth - 1, true) + "}";
      case 3:
        if (depth <= 0) return expr(1);
        return "while " + expr(1) + " {\n" + block(depth - 1, true) + "}";
      case 4: return "return " + expr(2);
      case 5: return expr(2);
      case 6: return "if " + expr(1) + " { " + expr(1) + " }";
      case 7: return "break";
      default: return "continue";
    }
  }

  std::string block(int depth, bool in_loop) {
    std::string out;
    const std::size_t n = pick(4);
    for (std::size_t i = 0; i < n; ++i) out += "  " + stmt(depth, in_loop) + (pick(2) ? ";\n" : "\n");
    if (pick(3) != 0) out += "  " + expr(3) + "\n";
    return out;
  }

  std::mt19937_64 rng_;
};

}  // namespace

TEST_SUITE("lang") {

TEST_CASE("tokens") {
  const auto toks = tokenize("let v = 3.5 // 2 # note\n\"a\\n\\u{E9}\"");
  REQUIRE(toks.size() == 8);
  CHECK(toks[7].kind == Tok::End);
  CHECK(toks[0].kind == Tok::Let);
  CHECK(toks[2].kind == Tok::Assign);
  CHECK(toks[3].kind == Tok::Real);
  CHECK(toks[3].real_value == 3.5);
  CHECK(toks[4].kind == Tok::SlashSlash);
  CHECK(toks[5].kind == Tok::Int);
  CHECK(toks[6].kind == Tok::Str);
  CHECK(toks[6].text == "a\n\xc3\xa9");
  CHECK(toks[6].span.line == 2);
}

TEST_CASE("bare expressions and full programs") {
  CHECK_FALSE(diagnose("upper(x)").has_errors());
  const Ast a = parse_source("upper(x)");
  const Ast b = parse_source("transform(x) { upper(x) }");
  CHECK(equal(a, b));
  const Ast u = parse_source(kUsername);
  CHECK(count_kind(u.body, StmtKind::Let) == 2);
  CHECK(count_kind(u.body, StmtKind::For) == 1);
  CHECK(diagnose(kUsername).items.empty());
}

TEST_CASE("sandbox rules") {
  auto code = [](const char* src) { return testing::error_of([&] { parse_source(src); }); };
  CHECK(code("import os") == ErrorCode::ForbiddenConstruct);
  CHECK(code("x.upper()") == ErrorCode::ForbiddenConstruct);
  CHECK(code("__class__") == ErrorCode::ForbiddenConstruct);
  CHECK(code("open(x)") == ErrorCode::ForbiddenConstruct);
  CHECK(code("eval(x)") == ErrorCode::ForbiddenConstruct);
  CHECK(code("transform(x) { let = 3 }") == ErrorCode::SyntaxError);
  CHECK(code("\"unterminated") == ErrorCode::SyntaxError);
  CHECK(code("x +") == ErrorCode::SyntaxError);
  CHECK(code("x ! 3") == ErrorCode::SyntaxError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_source("transform(x) {\n  let a = (1 +\n}");
    FAIL("parsed");
  } catch (const LangError& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.span().line == 3);
    CHECK(std::string(e.what()).find("3:") != std::string::npos);
  }
}

TEST_CASE("checker errors") {
  CHECK(has_message(diagnose("upper(x, 2)"), Severity::Error, "upper"));
  CHECK(has_message(diagnose("nosuch(x)"), Severity::Error, "nosuch"));
  CHECK(has_message(diagnose("y + 1"), Severity::Error, "y"));
  CHECK(diagnose("\"a\" - 1").has_errors());
  CHECK(diagnose("length(3)").has_errors());
  CHECK(diagnose("transform(x) {\n  break\n  x\n}").has_errors());
  CHECK(diagnose("transform(x) {\n  let a = 1\n}").has_errors());
  CHECK(diagnose("[1, 2]").has_errors());
  CHECK(diagnose("fn f(a) { a }\nfn f(b) { b }\ntransform(x) { f(x) }").has_errors());
  CHECK(diagnose("fn upper(a) { a }\ntransform(x) { x }").has_errors());
  CHECK(diagnose("fn f(a, b) { a }\ntransform(x) { f(x) }").has_errors());
  CHECK(diagnose("transform(x) {\n  z = 1\n  x\n}").has_errors());
}

TEST_CASE("checker accepts well typed programs") {
  for (const char* src : {"x", "upper(x) + \"!\"", "str(xn * 2)", "transform(x) { return x }",
                          "transform(x) {\n  if x == \"\" { return \"none\" }\n  x\n}",
                          "fn twice(s) { s + s }\ntransform(x) { twice(x) }",
                          "transform(x) {\n  let a = 1\n  a = \"text\"\n  str(a)\n}"}) {
    const auto d = diagnose(src);
    CHECK_MESSAGE(!d.has_errors(), src, "\n", d.render());
  }
}

TEST_CASE("checker warnings") {
  const auto shadow = diagnose("transform(x) {\n  let a = 1\n  if true {\n    let a = 2\n    a\n  }\n  str(a)\n}");
  CHECK_FALSE(shadow.has_errors());
  CHECK(has_message(shadow, Severity::Warning, "a"));
  const auto dead = diagnose("transform(x) {\n  return x\n  upper(x)\n}");
  CHECK_FALSE(dead.has_errors());
  CHECK(dead.items.size() == 1);
  CHECK(dead.items[0].severity == Severity::Warning);
  CHECK(dead.render().find("3:3: warning:") != std::string::npos);
  CHECK(dead.error_count() == 0);
}

TEST_CASE("evaluation basics") {
  CHECK(evaluate(parse_program("round(0.453 * parse_num(x), 1)"), CellValue("2")).raw() == "0.9");
  CHECK(evaluate(parse_program("x"), CellValue("anything")).raw() == "anything");
  std::uint64_t steps = 0;
  evaluate(parse_program("x"), CellValue("v"), {}, &steps);
  CHECK(steps > 0);
  CHECK(testing::error_of([] { evaluate(parse_program("transform(x) { if false { x } }"), CellValue("v")); }) ==
        ErrorCode::RuntimeFault);
}

TEST_CASE("x and xn bindings") {
  const auto q = parse_program("str(xn + 1)");
  CHECK(evaluate(q, CellValue("41")).raw() == "42");
  CHECK(evaluate(q, CellValue(" 1.5 ")).raw() == "2.5");
}

TEST_CASE("limits are enforced") {
  EvalLimits tight;
  tight.max_steps = 50;
  const auto loop = parse_program("transform(x) {\n  let n = 0\n  while n < 1000 { n = n + 1 }\n  str(n)\n}");
  CHECK(testing::error_of([&] { evaluate(loop, CellValue(""), tight); }) == ErrorCode::StepBudgetExceeded);
  CHECK(evaluate(loop, CellValue("")).raw() == "1000");

  EvalLimits short_strings;
  short_strings.max_string_len = 8;
  CHECK(testing::error_of([&] { evaluate(parse_program("x + x"), CellValue("abcdef"), short_strings); }) ==
        ErrorCode::OutputTooLong);
  CHECK(testing::error_of([&] { evaluate(parse_program("join(range(100), \"\")"), CellValue(""), short_strings); }) ==
        ErrorCode::OutputTooLong);

  EvalLimits shallow;
  shallow.max_call_depth = 5;
  const auto rec = parse_program("fn d(n) { if n == 0 { 0 } else { 1 + d(n - 1) } }\ntransform(x) { str(d(parse_int(x))) }");
  CHECK(evaluate(rec, CellValue("4"), shallow).raw() == "4");
  CHECK(testing::error_of([&] { evaluate(rec, CellValue("10"), shallow); }) == ErrorCode::RuntimeFault);
}

TEST_CASE("step cost grows with built values") {
  std::uint64_t small = 0;
  std::uint64_t large = 0;
  evaluate(parse_program("str(length(x * 1))"), CellValue("abcd"), {}, &small);
  evaluate(parse_program("str(length(x * 1000))"), CellValue("abcd"), {}, &large);
  CHECK(large > small);
}

TEST_CASE("runtime errors carry positions") {
  try {
    evaluate(parse_program("transform(x) {\n  char_at(x, 9)\n}"), CellValue("ab"));
    FAIL("no fault");
  } catch (const LangError& e) {
    CHECK(e.code() == ErrorCode::RuntimeFault);
    CHECK(e.span().line == 2);
  }
}

TEST_CASE("printer output is canonical") {
  const auto ast = parse_source("1 + 2 * x");
  CHECK(print(ast.body.tail ? *ast.body.tail : Expr{}) == "(1 + (2 * x))");
  CHECK(quote_string("a\"b\\\n") == R"("a\"b\\\n")");
  CHECK(format_real_literal(3.0) == "3.0");
  CHECK(format_real_literal(0.1) == "0.1");
}

TEST_CASE("print then parse is the identity on syntax trees") {
  SourceGen gen(42);
  int parsed = 0;
  for (int i = 0; i < 500; ++i) {
    const std::string src = gen.program();
    Ast ast;
    try {
      ast = parse_source(src);
    } catch (const LangError& e) {
      FAIL_CHECK(std::string(e.what()) << "\n" << src);
      continue;
    }
    ++parsed;
    const std::string printed = print(ast);
    const Ast again = parse_source(printed);
    CHECK_MESSAGE(equal(ast, again), src, "\n---\n", printed);
    CHECK(print(again) == printed);
  }
  CHECK(parsed == 500);
}

}
