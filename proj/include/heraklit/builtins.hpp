#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heraklit/value.hpp"

namespace heraklit {

enum class Builtin {
  Union,
  Intersect,
  Diff,
  Elem,
  Subset,
  Card,
  NotEmpty,
  TupleMake,
  Proj,  // proj_1, proj_2, ... (1-based component access)
  Eq,
  Neq,
  Add,
  Sub,
  Mul,
  Lt,
  Leq,
  And,
  Or,
  Not,
};

struct BuiltinOp {
  Builtin op;
  int proj_index = 0;  // Proj only
  std::string name;
};

std::optional<BuiltinOp> builtin_by_name(std::string_view name);

// Expected argument count; nullopt for variadic (tuple_make).
std::optional<std::size_t> builtin_arity(Builtin op);

// True for builtins whose result is always Bool, i.e. those usable as
// static relations.
bool builtin_is_relation(Builtin op);

// Applies a builtin to already-evaluated arguments. Throws EvalError on
// arity or kind mismatch, naming the builtin and the offending argument
// index; integer overflow is an error, never a wrap.
Value builtin_apply(const BuiltinOp& op, const std::vector<Value>& args);
Value builtin_apply(std::string_view name, const std::vector<Value>& args);

}  // namespace heraklit
