#include "xform/lang/printer.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "xform/table/numeric_text.hpp"
#include "xform/table/utf8.hpp"

namespace xform::lang {

const char* to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::FloorDiv: return "//";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
  }
  return "?";
}

const char* to_string(UnaryOp op) noexcept { return op == UnaryOp::Neg ? "-" : "not "; }

std::string quote_string(std::string_view value) {
  std::string out = "\"";
  for (char32_t cp : utf8::decode(value)) {
    switch (cp) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (cp < 0x20 || cp == 0x7F) {
          char buf[16];
          std::snprintf(buf, sizeof buf, "\\u{%X}", static_cast<unsigned>(cp));
          out += buf;
        } else {
          utf8::append(out, cp);
        }
    }
  }
  out += '"';
  return out;
}

std::string format_real_literal(double value) {
  std::string s = format_shortest(value);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

namespace {

class Printer {
 public:
  std::string out;

  void ast(const Ast& a) {
    for (const auto& f : a.functions) {
      out += "fn " + f.name + "(";
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        if (i > 0) out += ", ";
        out += f.params[i];
      }
      out += ") ";
      block(f.body, 0);
      out += "\n";
    }
    out += "transform(x) ";
    block(a.body, 0);
    out += "\n";
  }

  void block(const Block& b, int indent) {
    out += "{\n";
    for (const auto& s : b.stmts) {
      pad(indent + 1);
      stmt(s, indent + 1);
      out += "\n";
    }
    if (b.tail) {
      pad(indent + 1);
      expr(*b.tail, indent + 1);
      out += "\n";
    }
    pad(indent);
    out += "}";
  }

  void stmt(const Stmt& s, int indent) {
    switch (s.kind) {
      case StmtKind::Let:
        out += "let " + s.name + " = ";
        expr(*s.expr, indent);
        out += ";";
        break;
      case StmtKind::Assign:
        out += s.name + " = ";
        expr(*s.expr, indent);
        out += ";";
        break;
      case StmtKind::For:
        out += "for " + s.name + " in ";
        expr(*s.expr, indent);
        out += " ";
        block(*s.body, indent);
        break;
      case StmtKind::While:
        out += "while ";
        expr(*s.expr, indent);
        out += " ";
        block(*s.body, indent);
        break;
      case StmtKind::Return:
        out += "return ";
        expr(*s.expr, indent);
        out += ";";
        break;
      case StmtKind::Break: out += "break;"; break;
      case StmtKind::Continue: out += "continue;"; break;
      case StmtKind::Expr:
        expr(*s.expr, indent);
        out += ";";
        break;
    }
  }

  void expr(const Expr& e, int indent) {
    switch (e.kind) {
      case ExprKind::Int:
        if (e.int_value < 0) {
          out += "(-" + std::to_string(-static_cast<unsigned long long>(e.int_value)) + ")";
        } else {
          out += std::to_string(e.int_value);
        }
        break;
      case ExprKind::Real:
        if (std::signbit(e.real_value)) {
          out += "(-" + format_real_literal(-e.real_value) + ")";
        } else {
          out += format_real_literal(e.real_value);
        }
        break;
      case ExprKind::Str: out += quote_string(e.text); break;
      case ExprKind::Bool: out += e.bool_value ? "true" : "false"; break;
      case ExprKind::Name: out += e.text; break;
      case ExprKind::Call:
        out += e.text + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i > 0) out += ", ";
          expr(*e.args[i], indent);
        }
        out += ")";
        break;
      case ExprKind::Binary:
        out += "(";
        expr(*e.args[0], indent);
        out += std::string(" ") + to_string(e.binary_op) + " ";
        expr(*e.args[1], indent);
        out += ")";
        break;
      case ExprKind::Unary:
        out += std::string("(") + to_string(e.unary_op);
        expr(*e.args[0], indent);
        out += ")";
        break;
      case ExprKind::If:
        // Parenthesized so a following `[` or `(` cannot attach to it.
        out += "(if ";
        expr(*e.args[0], indent);
        out += " ";
        block(*e.then_block, indent);
        if (e.else_block) {
          out += " else ";
          block(*e.else_block, indent);
        }
        out += ")";
        break;
      case ExprKind::List:
        out += "[";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i > 0) out += ", ";
          expr(*e.args[i], indent);
        }
        out += "]";
        break;
      case ExprKind::Index:
        expr(*e.args[0], indent);
        out += "[";
        expr(*e.args[1], indent);
        out += "]";
        break;
      case ExprKind::Slice: {
        expr(*e.args[0], indent);
        out += "[";
        std::size_t k = 1;
        if (e.has_lo) expr(*e.args[k++], indent);
        out += ":";
        if (e.has_hi) expr(*e.args[k], indent);
        out += "]";
        break;
      }
    }
  }

  void pad(int indent) { out.append(static_cast<std::size_t>(indent) * 2, ' '); }
};

}  // namespace

std::string print(const Ast& ast) {
  Printer p;
  p.ast(ast);
  return p.out;
}

std::string print(const Expr& expr) {
  Printer p;
  p.expr(expr, 0);
  return p.out;
}

namespace {

bool equal_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal_block_ptr(const std::shared_ptr<const Block>& a, const std::shared_ptr<const Block>& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case ExprKind::Int:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::Real:
      if (std::memcmp(&a.real_value, &b.real_value, sizeof(double)) != 0) return false;
      break;
    case ExprKind::Str:
    case ExprKind::Name:
    case ExprKind::Call:
      if (a.text != b.text) return false;
      break;
    case ExprKind::Bool:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::Binary:
      if (a.binary_op != b.binary_op) return false;
      break;
    case ExprKind::Unary:
      if (a.unary_op != b.unary_op) return false;
      break;
    case ExprKind::If:
      if (!equal_block_ptr(a.then_block, b.then_block) || !equal_block_ptr(a.else_block, b.else_block)) return false;
      break;
    case ExprKind::Slice:
      if (a.has_lo != b.has_lo || a.has_hi != b.has_hi) return false;
      break;
    case ExprKind::List:
    case ExprKind::Index:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal_ptr(a.args[i], b.args[i])) return false;
  }
  return true;
}

bool equal(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.name == b.name && equal_ptr(a.expr, b.expr) && equal_block_ptr(a.body, b.body);
}

bool equal(const Block& a, const Block& b) {
  if (a.stmts.size() != b.stmts.size() || !equal_ptr(a.tail, b.tail)) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    if (!equal(a.stmts[i], b.stmts[i])) return false;
  }
  return true;
}

bool equal(const Ast& a, const Ast& b) {
  if (a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& fa = a.functions[i];
    const auto& fb = b.functions[i];
    if (fa.name != fb.name || fa.params != fb.params || !equal(fa.body, fb.body)) return false;
  }
  return equal(a.body, b.body);
}

}  // namespace xform::lang
