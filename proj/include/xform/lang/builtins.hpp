#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "xform/lang/interpreter.hpp"
#include "xform/lang/value.hpp"

namespace xform::lang {

/// Static type lattice used by the checker. Num is Int or Real; Seq is Str or List.
enum class Ty { Any, Nil, Bool, Int, Real, Num, Str, List, Seq };

const char* to_string(Ty t) noexcept;
/// Whether a value of static type `actual` can be passed where `expected` is required.
/// Any on either side is always compatible.
bool compatible(Ty actual, Ty expected) noexcept;

using BuiltinFn = Value (*)(std::span<const Value> args, EvalContext& ctx, const Span& at);

struct BuiltinInfo {
  std::string_view name;
  std::size_t min_args;
  std::size_t max_args;
  std::array<Ty, 3> params;  // declared type per position
  Ty result;
  BuiltinFn fn;
  std::string_view signature;  // for docs and prompts
};

const BuiltinInfo* find_builtin(std::string_view name) noexcept;
std::span<const BuiltinInfo> all_builtins() noexcept;

}  // namespace xform::lang
