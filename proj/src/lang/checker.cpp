#include "xform/lang/checker.hpp"

#include <set>
#include <unordered_map>

#include "xform/lang/builtins.hpp"

namespace xform::lang {

bool Diagnostics::has_errors() const noexcept { return error_count() > 0; }

std::size_t Diagnostics::error_count() const noexcept {
  std::size_t n = 0;
  for (const auto& d : items) n += d.severity == Severity::Error ? 1 : 0;
  return n;
}

std::string Diagnostics::render() const {
  std::string out;
  for (const auto& d : items) {
    out += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
    out += d.severity == Severity::Error ? "error: " : "warning: ";
    out += d.message;
    out += '\n';
  }
  return out;
}

namespace {

bool is_numeric(Ty t) { return t == Ty::Int || t == Ty::Real || t == Ty::Num; }

Ty join(Ty a, Ty b) {
  if (a == b) return a;
  if (a == Ty::Any || b == Ty::Any) return Ty::Any;
  if (is_numeric(a) && is_numeric(b)) return Ty::Num;
  const auto seq = [](Ty t) { return t == Ty::Str || t == Ty::List || t == Ty::Seq; };
  if (seq(a) && seq(b)) return Ty::Seq;
  return Ty::Any;
}

// Collects names that are reassigned anywhere in a block; their static type is
// left open since a loop may observe either value.
void collect_assigned(const Block& b, std::set<std::string>& out);

void collect_assigned_expr(const Expr& e, std::set<std::string>& out) {
  for (const auto& a : e.args) collect_assigned_expr(*a, out);
  if (e.then_block) collect_assigned(*e.then_block, out);
  if (e.else_block) collect_assigned(*e.else_block, out);
}

void collect_assigned(const Block& b, std::set<std::string>& out) {
  for (const auto& s : b.stmts) {
    if (s.kind == StmtKind::Assign) out.insert(s.name);
    if (s.expr) collect_assigned_expr(*s.expr, out);
    if (s.body) collect_assigned(*s.body, out);
  }
  if (b.tail) collect_assigned_expr(*b.tail, out);
}

bool contains_return(const Block& b);

bool contains_return_expr(const Expr& e) {
  for (const auto& a : e.args) {
    if (contains_return_expr(*a)) return true;
  }
  return (e.then_block && contains_return(*e.then_block)) || (e.else_block && contains_return(*e.else_block));
}

bool contains_return(const Block& b) {
  for (const auto& s : b.stmts) {
    if (s.kind == StmtKind::Return) return true;
    if (s.expr && contains_return_expr(*s.expr)) return true;
    if (s.body && contains_return(*s.body)) return true;
  }
  return b.tail && contains_return_expr(*b.tail);
}

class Checker {
 public:
  explicit Checker(const Ast& ast) : ast_(ast) {}

  Diagnostics run() {
    for (const auto& f : ast_.functions) {
      if (find_builtin(f.name) != nullptr) {
        error("function '" + f.name + "' redefines a builtin", f.span);
      } else if (f.name == "transform" || f.name == "x") {
        error("'" + f.name + "' is reserved", f.span);
      } else if (!functions_.emplace(f.name, &f).second) {
        error("function '" + f.name + "' is defined twice", f.span);
      }
      std::set<std::string> seen;
      for (const auto& p : f.params) {
        if (!seen.insert(p).second) error("duplicate parameter '" + p + "' in " + f.name, f.span);
      }
    }
    for (const auto& f : ast_.functions) {
      begin_function(f.body);
      for (const auto& p : f.params) scopes_.back()[p] = Ty::Any;
      check_block(f.body, false);
      scopes_.clear();
    }
    begin_function(ast_.body);
    scopes_.back()["x"] = Ty::Str;
    scopes_.back()["xn"] = Ty::Any;
    const Ty t = check_block(ast_.body, false);
    if (!ast_.body.tail && !contains_return(ast_.body)) {
      error("transform body produces no value", ast_.body.span);
    } else if (t == Ty::List) {
      error("transform result must not be a list", ast_.body.tail ? ast_.body.tail->span : ast_.body.span);
    }
    return std::move(diags_);
  }

 private:
  const Ast& ast_;
  Diagnostics diags_;
  std::unordered_map<std::string, const FuncDef*> functions_;
  std::vector<std::unordered_map<std::string, Ty>> scopes_;
  std::set<std::string> assigned_;
  int loop_depth_ = 0;

  void error(std::string msg, const Span& at) { diags_.items.push_back({Severity::Error, std::move(msg), at}); }
  void warning(std::string msg, const Span& at) { diags_.items.push_back({Severity::Warning, std::move(msg), at}); }

  void begin_function(const Block& body) {
    scopes_.clear();
    scopes_.emplace_back();
    assigned_.clear();
    collect_assigned(body, assigned_);
    loop_depth_ = 0;
  }

  const Ty* lookup(const std::string& name) const {
    for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s) {
      if (auto it = s->find(name); it != s->end()) return &it->second;
    }
    return nullptr;
  }

  void bind(const std::string& name, Ty t, const Span& at) {
    if (lookup(name) != nullptr) warning("'" + name + "' shadows an earlier binding", at);
    scopes_.back()[name] = assigned_.count(name) ? Ty::Any : t;
  }

  Ty check_block(const Block& b, bool new_scope = true) {
    if (new_scope) scopes_.emplace_back();
    bool terminated = false;
    bool warned = false;
    for (const auto& s : b.stmts) {
      if (terminated && !warned) {
        warning("unreachable code", s.span);
        warned = true;
      }
      check_stmt(s);
      if (s.kind == StmtKind::Return || s.kind == StmtKind::Break || s.kind == StmtKind::Continue) terminated = true;
    }
    Ty t = Ty::Nil;
    if (b.tail) {
      if (terminated && !warned) warning("unreachable code", b.tail->span);
      t = check_expr(*b.tail);
    }
    if (new_scope) scopes_.pop_back();
    return t;
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Let: {
        const Ty t = check_expr(*s.expr);
        bind(s.name, t, s.span);
        return;
      }
      case StmtKind::Assign:
        check_expr(*s.expr);
        if (lookup(s.name) == nullptr) error("assignment to undefined name '" + s.name + "'; declare it with let", s.span);
        return;
      case StmtKind::For: {
        const Ty t = check_expr(*s.expr);
        if (!(compatible(t, Ty::Seq) || compatible(t, Ty::Int))) {
          error(std::string("cannot iterate over ") + to_string(t), s.expr->span);
        }
        scopes_.emplace_back();
        const Ty item = t == Ty::Str ? Ty::Str : (t == Ty::Int ? Ty::Int : Ty::Any);
        bind(s.name, item, s.span);
        ++loop_depth_;
        check_block(*s.body);
        --loop_depth_;
        scopes_.pop_back();
        return;
      }
      case StmtKind::While: {
        const Ty t = check_expr(*s.expr);
        if (!compatible(t, Ty::Bool)) error(std::string("while condition must be bool, found ") + to_string(t), s.expr->span);
        ++loop_depth_;
        check_block(*s.body);
        --loop_depth_;
        return;
      }
      case StmtKind::Return:
        if (s.expr) check_expr(*s.expr);
        return;
      case StmtKind::Break:
      case StmtKind::Continue:
        if (loop_depth_ == 0) error(std::string(s.kind == StmtKind::Break ? "break" : "continue") + " outside a loop", s.span);
        return;
      case StmtKind::Expr:
        check_expr(*s.expr);
        return;
    }
  }

  void expect(Ty actual, Ty wanted, const std::string& what, const Span& at) {
    if (!compatible(actual, wanted)) {
      error(what + " expects " + to_string(wanted) + ", found " + to_string(actual), at);
    }
  }

  Ty check_expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Int: return Ty::Int;
      case ExprKind::Real: return Ty::Real;
      case ExprKind::Str: return Ty::Str;
      case ExprKind::Bool: return Ty::Bool;
      case ExprKind::Name: {
        if (const Ty* t = lookup(e.text)) return *t;
        if (functions_.count(e.text) || find_builtin(e.text)) {
          error("'" + e.text + "' is a function; call it", e.span);
        } else {
          error("unknown name '" + e.text + "'", e.span);
        }
        return Ty::Any;
      }
      case ExprKind::Call: return check_call(e);
      case ExprKind::Binary: return check_binary(e);
      case ExprKind::Unary: {
        const Ty t = check_expr(*e.args[0]);
        if (e.unary_op == UnaryOp::Not) {
          expect(t, Ty::Bool, "'not'", e.span);
          return Ty::Bool;
        }
        expect(t, Ty::Num, "unary '-'", e.span);
        return is_numeric(t) ? t : Ty::Num;
      }
      case ExprKind::If: {
        expect(check_expr(*e.args[0]), Ty::Bool, "if condition", e.args[0]->span);
        const Ty a = check_block(*e.then_block);
        if (!e.else_block) return Ty::Any;
        return join(a, check_block(*e.else_block));
      }
      case ExprKind::List:
        for (const auto& a : e.args) check_expr(*a);
        return Ty::List;
      case ExprKind::Index: {
        const Ty base = check_expr(*e.args[0]);
        expect(base, Ty::Seq, "indexing", e.span);
        expect(check_expr(*e.args[1]), Ty::Int, "index", e.args[1]->span);
        return base == Ty::Str ? Ty::Str : Ty::Any;
      }
      case ExprKind::Slice: {
        const Ty base = check_expr(*e.args[0]);
        expect(base, Ty::Seq, "slicing", e.span);
        for (std::size_t i = 1; i < e.args.size(); ++i) expect(check_expr(*e.args[i]), Ty::Int, "slice bound", e.args[i]->span);
        return base == Ty::Any ? Ty::Seq : base;
      }
    }
    return Ty::Any;
  }

  Ty check_call(const Expr& e) {
    std::vector<Ty> args;
    for (const auto& a : e.args) args.push_back(check_expr(*a));
    if (lookup(e.text) != nullptr && !functions_.count(e.text) && !find_builtin(e.text)) {
      error("'" + e.text + "' is a variable, not a function", e.span);
      return Ty::Any;
    }
    if (auto it = functions_.find(e.text); it != functions_.end()) {
      const std::size_t n = it->second->params.size();
      if (args.size() != n) {
        error(e.text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                  std::to_string(args.size()),
              e.span);
      }
      return Ty::Any;
    }
    const BuiltinInfo* b = find_builtin(e.text);
    if (b == nullptr) {
      error("unknown function '" + e.text + "'", e.span);
      return Ty::Any;
    }
    if (args.size() < b->min_args || args.size() > b->max_args) {
      std::string want = std::to_string(b->min_args);
      if (b->max_args != b->min_args) want += " to " + std::to_string(b->max_args);
      error(std::string(b->name) + " takes " + want + " argument" + (b->max_args == 1 ? "" : "s") + ", got " +
                std::to_string(args.size()) + " (" + std::string(b->signature) + ")",
            e.span);
      return b->result;
    }
    for (std::size_t i = 0; i < args.size() && i < b->params.size(); ++i) {
      expect(args[i], b->params[i], std::string(b->name) + " argument " + std::to_string(i + 1), e.args[i]->span);
    }
    // A few results follow their argument type.
    if (b->name == "reverse" && !args.empty() && args[0] != Ty::Any) return args[0];
    if ((b->name == "abs" || b->name == "min" || b->name == "max") && !args.empty()) {
      Ty t = args[0];
      for (Ty a : args) t = join(t, a);
      return (b->name == "abs" || args.size() == 2) ? t : Ty::Any;
    }
    if (b->name == "round") return args.size() == 1 ? Ty::Int : Ty::Real;
    if (b->name == "pow" && args.size() == 2 && args[0] == Ty::Real) return Ty::Real;
    return b->result;
  }

  Ty check_binary(const Expr& e) {
    const Ty l = check_expr(*e.args[0]);
    const Ty r = check_expr(*e.args[1]);
    const char* op = to_string(e.binary_op);
    auto mismatch = [&] {
      error(std::string("operator '") + op + "' is not defined for " + to_string(l) + " and " + to_string(r), e.span);
    };
    const bool open = l == Ty::Any || r == Ty::Any;
    switch (e.binary_op) {
      case BinaryOp::Add:
        if (is_numeric(l) && is_numeric(r)) return (l == Ty::Int && r == Ty::Int) ? Ty::Int : (l == Ty::Real || r == Ty::Real ? Ty::Real : Ty::Num);
        if (open) return l == Ty::Any ? (r == Ty::Int ? Ty::Any : r) : l;
        if ((compatible(l, Ty::Str) && compatible(r, Ty::Str)) || (compatible(l, Ty::List) && compatible(r, Ty::List))) {
          return join(l, r);
        }
        mismatch();
        return Ty::Any;
      case BinaryOp::Mul:
        if (is_numeric(l) && is_numeric(r)) return (l == Ty::Int && r == Ty::Int) ? Ty::Int : (l == Ty::Real || r == Ty::Real ? Ty::Real : Ty::Num);
        if (compatible(l, Ty::Str) && compatible(r, Ty::Int)) return open && l == Ty::Any ? Ty::Any : Ty::Str;
        if (!open) mismatch();
        return Ty::Any;
      case BinaryOp::Sub:
      case BinaryOp::FloorDiv:
      case BinaryOp::Mod:
        if (!compatible(l, Ty::Num) || !compatible(r, Ty::Num)) {
          mismatch();
          return Ty::Num;
        }
        if (l == Ty::Int && r == Ty::Int) return Ty::Int;
        return (l == Ty::Real || r == Ty::Real) ? Ty::Real : Ty::Num;
      case BinaryOp::Div:
        if (!compatible(l, Ty::Num) || !compatible(r, Ty::Num)) mismatch();
        return Ty::Real;
      case BinaryOp::Eq:
      case BinaryOp::Ne: return Ty::Bool;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: {
        const bool ok = open || (compatible(l, Ty::Num) && compatible(r, Ty::Num)) ||
                        (compatible(l, Ty::Str) && compatible(r, Ty::Str) && l != Ty::Seq && r != Ty::Seq) ||
                        (l == Ty::Seq && r == Ty::Str) || (l == Ty::Str && r == Ty::Seq);
        if (!ok) mismatch();
        return Ty::Bool;
      }
      case BinaryOp::And:
      case BinaryOp::Or:
        expect(l, Ty::Bool, std::string("'") + op + "'", e.args[0]->span);
        expect(r, Ty::Bool, std::string("'") + op + "'", e.args[1]->span);
        return Ty::Bool;
    }
    return Ty::Any;
  }
};

}  // namespace

Diagnostics check(const Ast& ast) { return Checker(ast).run(); }

}  // namespace xform::lang
