#include "xform/lang/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "xform/lang/builtins.hpp"
#include "xform/lang/diagnostics.hpp"
#include "xform/table/utf8.hpp"

namespace xform::lang {

void EvalContext::charge(std::uint64_t cost, const Span& at) {
  steps_ += cost;
  if (steps_ > limits_.max_steps) {
    throw LangError(ErrorCode::StepBudgetExceeded,
                    "evaluation exceeded " + std::to_string(limits_.max_steps) + " steps", at);
  }
}

void EvalContext::check_length(std::size_t len, const Span& at) const {
  if (len > limits_.max_string_len) {
    throw LangError(ErrorCode::OutputTooLong,
                    "value length " + std::to_string(len) + " exceeds " + std::to_string(limits_.max_string_len), at);
  }
}

namespace {

// Control transfer out of nested blocks.
struct ReturnSignal {
  Value value;
};
struct BreakSignal {};
struct ContinueSignal {};

[[noreturn]] void fault(const std::string& msg, const Span& at) { throw LangError(ErrorCode::RuntimeFault, msg, at); }

class Interpreter {
 public:
  Interpreter(const Ast& ast, EvalContext& ctx) : ctx_(ctx) {
    for (const auto& f : ast.functions) functions_.emplace(f.name, &f);
  }

  Value run_body(const Block& body, Value x, Value xn) {
    frames_.emplace_back();
    frames_.back().emplace_back();
    frames_.back().back().emplace_back("x", std::move(x));
    frames_.back().back().emplace_back("xn", std::move(xn));
    try {
      return eval_block(body);
    } catch (ReturnSignal& r) {
      return std::move(r.value);
    }
  }

 private:
  using Scope = std::vector<std::pair<std::string, Value>>;
  using Frame = std::vector<Scope>;

  EvalContext& ctx_;
  std::unordered_map<std::string, const FuncDef*> functions_;
  std::vector<Frame> frames_;

  // Refers to frames_ by owner, not by element: calls push frames and may reallocate.
  struct ScopeGuard {
    std::vector<Frame>& frames;
    explicit ScopeGuard(std::vector<Frame>& f) : frames(f) { frames.back().emplace_back(); }
    ~ScopeGuard() { frames.back().pop_back(); }
    ScopeGuard(const ScopeGuard&) = delete;
    ScopeGuard& operator=(const ScopeGuard&) = delete;
  };

  Value* lookup(const std::string& name) {
    auto& frame = frames_.back();
    for (auto s = frame.rbegin(); s != frame.rend(); ++s) {
      for (auto& [n, v] : *s) {
        if (n == name) return &v;
      }
    }
    return nullptr;
  }

  void define(const std::string& name, Value v) {
    auto& scope = frames_.back().back();
    for (auto& [n, old] : scope) {
      if (n == name) {
        old = std::move(v);
        return;
      }
    }
    scope.emplace_back(name, std::move(v));
  }

  Value eval_block(const Block& b) {
    ScopeGuard guard(frames_);
    for (const auto& s : b.stmts) exec(s);
    if (b.tail) return eval(*b.tail);
    return Value();
  }

  void exec_loop_body(const Block& b) {
    try {
      eval_block(b);
    } catch (ContinueSignal&) {
    }
  }

  void exec(const Stmt& s) {
    ctx_.charge(1, s.span);
    switch (s.kind) {
      case StmtKind::Let:
        define(s.name, eval(*s.expr));
        return;
      case StmtKind::Assign: {
        Value v = eval(*s.expr);
        Value* slot = lookup(s.name);
        if (slot == nullptr) fault("assignment to undefined name '" + s.name + "'", s.span);
        *slot = std::move(v);
        return;
      }
      case StmtKind::For: {
        const Value seq = eval(*s.expr);
        ScopeGuard guard(frames_);
        auto step = [&](Value item) {
          ctx_.charge(1, s.span);
          define(s.name, std::move(item));
          exec_loop_body(*s.body);
        };
        try {
          if (seq.is_list()) {
            for (const auto& item : seq.as_list()) step(item);
          } else if (seq.is_str()) {
            for (char32_t c : utf8::decode(seq.as_str())) {
              std::string one;
              utf8::append(one, c);
              step(Value(std::move(one)));
            }
          } else if (seq.is_int()) {
            for (std::int64_t i = 0; i < seq.as_int(); ++i) step(Value(i));
          } else {
            fault(std::string("cannot iterate over a ") + type_name(seq), s.expr->span);
          }
        } catch (BreakSignal&) {
        }
        return;
      }
      case StmtKind::While:
        try {
          for (;;) {
            const Value c = eval(*s.expr);
            if (!c.is_bool()) fault(std::string("while condition must be bool, got ") + type_name(c), s.expr->span);
            if (!c.as_bool()) break;
            exec_loop_body(*s.body);
          }
        } catch (BreakSignal&) {
        }
        return;
      case StmtKind::Return:
        throw ReturnSignal{s.expr ? eval(*s.expr) : Value()};
      case StmtKind::Break:
        throw BreakSignal{};
      case StmtKind::Continue:
        throw ContinueSignal{};
      case StmtKind::Expr:
        eval(*s.expr);
        return;
    }
  }

  Value eval(const Expr& e) {
    ctx_.charge(1, e.span);
    switch (e.kind) {
      case ExprKind::Int: return Value(e.int_value);
      case ExprKind::Real: return Value(e.real_value);
      case ExprKind::Str: return Value(e.text);
      case ExprKind::Bool: return Value(e.bool_value);
      case ExprKind::Name: {
        const Value* v = lookup(e.text);
        if (v == nullptr) fault("unknown name '" + e.text + "'", e.span);
        return *v;
      }
      case ExprKind::Call: return call(e);
      case ExprKind::Binary: return binary(e);
      case ExprKind::Unary: {
        const Value v = eval(*e.args[0]);
        if (e.unary_op == UnaryOp::Not) {
          if (!v.is_bool()) fault(std::string("'not' expects bool, got ") + type_name(v), e.span);
          return Value(!v.as_bool());
        }
        if (v.is_int()) {
          if (v.as_int() == INT64_MIN) fault("integer overflow in negation", e.span);
          return Value(-v.as_int());
        }
        if (v.is_real()) return Value(-v.as_real());
        fault(std::string("cannot negate a ") + type_name(v), e.span);
      }
      case ExprKind::If: {
        const Value c = eval(*e.args[0]);
        if (!c.is_bool()) fault(std::string("if condition must be bool, got ") + type_name(c), e.args[0]->span);
        if (c.as_bool()) return eval_block(*e.then_block);
        if (e.else_block) return eval_block(*e.else_block);
        return Value();
      }
      case ExprKind::List: {
        List out;
        out.reserve(e.args.size());
        for (const auto& a : e.args) out.push_back(eval(*a));
        ctx_.check_length(out.size(), e.span);
        return Value(std::move(out));
      }
      case ExprKind::Index: return index(e);
      case ExprKind::Slice: return slice(e);
    }
    fault("unsupported expression", e.span);
  }

  Value call(const Expr& e) {
    std::vector<Value> args;
    args.reserve(e.args.size());
    for (const auto& a : e.args) args.push_back(eval(*a));

    if (auto it = functions_.find(e.text); it != functions_.end()) {
      const FuncDef& f = *it->second;
      if (args.size() != f.params.size()) {
        fault(f.name + " takes " + std::to_string(f.params.size()) + " arguments, got " + std::to_string(args.size()),
              e.span);
      }
      if (ctx_.depth + 1 > ctx_.limits().max_call_depth) {
        fault("call depth limit " + std::to_string(ctx_.limits().max_call_depth) + " exceeded", e.span);
      }
      ++ctx_.depth;
      frames_.emplace_back();
      frames_.back().emplace_back();
      for (std::size_t i = 0; i < args.size(); ++i) frames_.back().back().emplace_back(f.params[i], std::move(args[i]));
      Value result;
      try {
        result = eval_block(f.body);
      } catch (ReturnSignal& r) {
        result = std::move(r.value);
      } catch (...) {
        frames_.pop_back();
        --ctx_.depth;
        throw;
      }
      frames_.pop_back();
      --ctx_.depth;
      return result;
    }

    const BuiltinInfo* b = find_builtin(e.text);
    if (b == nullptr) fault("unknown function '" + e.text + "'", e.span);
    if (args.size() < b->min_args || args.size() > b->max_args) {
      fault(std::string(b->name) + " called with " + std::to_string(args.size()) + " arguments", e.span);
    }
    Value out = b->fn(args, ctx_, e.span);
    // Builtins that build large values pay for them.
    if (out.is_str()) ctx_.charge(out.as_str().size() / 64, e.span);
    if (out.is_list()) ctx_.charge(out.as_list().size() / 16, e.span);
    return out;
  }

  static Value checked(bool overflow, std::int64_t v, const Span& at) {
    if (overflow) fault("integer overflow", at);
    return Value(v);
  }

  static int order(const Value& a, const Value& b, const Span& at) {
    if (a.is_int() && b.is_int()) return a.as_int() < b.as_int() ? -1 : (a.as_int() > b.as_int() ? 1 : 0);
    if (a.is_number() && b.is_number()) {
      const double x = a.as_number();
      const double y = b.as_number();
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    if (a.is_str() && b.is_str()) {
      const int c = a.as_str().compare(b.as_str());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    fault(std::string("cannot compare ") + type_name(a) + " with " + type_name(b), at);
  }

  Value binary(const Expr& e) {
    const Span& at = e.span;
    if (e.binary_op == BinaryOp::And || e.binary_op == BinaryOp::Or) {
      const Value l = eval(*e.args[0]);
      if (!l.is_bool()) fault(std::string("logical operator expects bool, got ") + type_name(l), at);
      if (e.binary_op == BinaryOp::And ? !l.as_bool() : l.as_bool()) return l;
      const Value r = eval(*e.args[1]);
      if (!r.is_bool()) fault(std::string("logical operator expects bool, got ") + type_name(r), at);
      return r;
    }
    const Value l = eval(*e.args[0]);
    const Value r = eval(*e.args[1]);
    const bool ints = l.is_int() && r.is_int();
    const bool nums = l.is_number() && r.is_number();
    switch (e.binary_op) {
      case BinaryOp::Add:
        if (ints) {
          std::int64_t v = 0;
          const bool overflow = __builtin_add_overflow(l.as_int(), r.as_int(), &v);
          return checked(overflow, v, at);
        }
        if (nums) return Value(l.as_number() + r.as_number());
        if (l.is_str() && r.is_str()) {
          ctx_.check_length(l.as_str().size() + r.as_str().size(), at);
          ctx_.charge((l.as_str().size() + r.as_str().size()) / 64, at);
          return Value(l.as_str() + r.as_str());
        }
        if (l.is_list() && r.is_list()) {
          List joined = l.as_list();
          joined.insert(joined.end(), r.as_list().begin(), r.as_list().end());
          ctx_.check_length(joined.size(), at);
          ctx_.charge(joined.size() / 16, at);
          return Value(std::move(joined));
        }
        break;
      case BinaryOp::Sub:
        if (ints) {
          std::int64_t v = 0;
          const bool overflow = __builtin_sub_overflow(l.as_int(), r.as_int(), &v);
          return checked(overflow, v, at);
        }
        if (nums) return Value(l.as_number() - r.as_number());
        break;
      case BinaryOp::Mul:
        if (ints) {
          std::int64_t v = 0;
          const bool overflow = __builtin_mul_overflow(l.as_int(), r.as_int(), &v);
          return checked(overflow, v, at);
        }
        if (nums) return Value(l.as_number() * r.as_number());
        if (l.is_str() && r.is_int()) {
          const std::int64_t n = std::max<std::int64_t>(0, r.as_int());
          if (n > 0) ctx_.check_length(l.as_str().size() * static_cast<std::size_t>(n), at);
          std::string rep;
          for (std::int64_t i = 0; i < n; ++i) rep += l.as_str();
          ctx_.charge(rep.size() / 64, at);
          return Value(std::move(rep));
        }
        break;
      case BinaryOp::Div:
        if (nums) {
          if (r.as_number() == 0.0) fault("division by zero", at);
          return Value(l.as_number() / r.as_number());
        }
        break;
      case BinaryOp::FloorDiv:
        if (ints) {
          if (r.as_int() == 0) fault("division by zero", at);
          if (l.as_int() == INT64_MIN && r.as_int() == -1) fault("integer overflow", at);
          std::int64_t q = l.as_int() / r.as_int();
          if ((l.as_int() % r.as_int() != 0) && ((l.as_int() < 0) != (r.as_int() < 0))) --q;
          return Value(q);
        }
        if (nums) {
          if (r.as_number() == 0.0) fault("division by zero", at);
          return Value(std::floor(l.as_number() / r.as_number()));
        }
        break;
      case BinaryOp::Mod:
        if (ints) {
          if (r.as_int() == 0) fault("modulo by zero", at);
          if (r.as_int() == -1) return Value(std::int64_t{0});
          std::int64_t m = l.as_int() % r.as_int();
          if (m != 0 && ((m < 0) != (r.as_int() < 0))) m += r.as_int();
          return Value(m);
        }
        if (nums) {
          if (r.as_number() == 0.0) fault("modulo by zero", at);
          double m = std::fmod(l.as_number(), r.as_number());
          if (m != 0.0 && ((m < 0) != (r.as_number() < 0))) m += r.as_number();
          return Value(m);
        }
        break;
      case BinaryOp::Eq: return Value(values_equal(l, r));
      case BinaryOp::Ne: return Value(!values_equal(l, r));
      case BinaryOp::Lt: return Value(order(l, r, at) < 0);
      case BinaryOp::Le: return Value(order(l, r, at) <= 0);
      case BinaryOp::Gt: return Value(order(l, r, at) > 0);
      case BinaryOp::Ge: return Value(order(l, r, at) >= 0);
      case BinaryOp::And:
      case BinaryOp::Or: break;
    }
    std::string msg = std::string("operator '") + to_string(e.binary_op) + "' not defined for " + type_name(l) +
                      " and " + type_name(r);
    if (e.binary_op == BinaryOp::Add && (l.is_str() || r.is_str())) msg += "; convert with str()";
    fault(msg, at);
  }

  static std::size_t norm_index(std::int64_t i, std::size_t len, const Span& at) {
    const auto n = static_cast<std::int64_t>(len);
    const std::int64_t k = i < 0 ? i + n : i;
    if (k < 0 || k >= n) {
      fault("index " + std::to_string(i) + " out of range for length " + std::to_string(len), at);
    }
    return static_cast<std::size_t>(k);
  }

  Value index(const Expr& e) {
    const Value base = eval(*e.args[0]);
    const Value idx = eval(*e.args[1]);
    if (!idx.is_int()) fault(std::string("index must be int, got ") + type_name(idx), e.args[1]->span);
    if (base.is_list()) return base.as_list()[norm_index(idx.as_int(), base.as_list().size(), e.span)];
    if (base.is_str()) {
      const auto cps = utf8::decode(base.as_str());
      std::string one;
      utf8::append(one, cps[norm_index(idx.as_int(), cps.size(), e.span)]);
      return Value(std::move(one));
    }
    fault(std::string("cannot index a ") + type_name(base), e.span);
  }

  Value slice(const Expr& e) {
    const Value base = eval(*e.args[0]);
    std::size_t k = 1;
    auto bound = [&](bool present) -> std::optional<std::int64_t> {
      if (!present) return std::nullopt;
      const Value v = eval(*e.args[k]);
      if (!v.is_int()) fault(std::string("slice bound must be int, got ") + type_name(v), e.args[k]->span);
      ++k;
      return v.as_int();
    };
    const auto lo = bound(e.has_lo);
    const auto hi = bound(e.has_hi);
    std::size_t len = 0;
    std::u32string cps;
    if (base.is_str()) {
      cps = utf8::decode(base.as_str());
      len = cps.size();
    } else if (base.is_list()) {
      len = base.as_list().size();
    } else {
      fault(std::string("cannot slice a ") + type_name(base), e.span);
    }
    const auto n = static_cast<std::int64_t>(len);
    auto fix = [n](std::int64_t v) { return std::clamp(v < 0 ? v + n : v, std::int64_t{0}, n); };
    const auto a = static_cast<std::size_t>(lo ? fix(*lo) : 0);
    const auto b = static_cast<std::size_t>(std::max<std::int64_t>(static_cast<std::int64_t>(a), hi ? fix(*hi) : n));
    if (base.is_str()) return Value(utf8::encode(std::u32string_view(cps).substr(a, b - a)));
    const List& l = base.as_list();
    return Value(List(l.begin() + static_cast<std::ptrdiff_t>(a), l.begin() + static_cast<std::ptrdiff_t>(b)));
  }
};

}  // namespace

Value run(const Ast& ast, const std::string& input, const std::optional<double>& numeric, const EvalLimits& limits,
          std::uint64_t* steps_used) {
  EvalContext ctx(limits);
  Interpreter interp(ast, ctx);
  struct Report {
    EvalContext& ctx;
    std::uint64_t* out;
    ~Report() {
      if (out != nullptr) *out = ctx.steps();
    }
  } report{ctx, steps_used};
  try {
    return interp.run_body(ast.body, Value(input), numeric ? Value(*numeric) : Value());
  } catch (BreakSignal&) {
    throw LangError(ErrorCode::RuntimeFault, "break outside a loop", ast.body.span);
  } catch (ContinueSignal&) {
    throw LangError(ErrorCode::RuntimeFault, "continue outside a loop", ast.body.span);
  }
}

}  // namespace xform::lang
