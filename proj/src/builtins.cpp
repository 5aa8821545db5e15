#include "heraklit/builtins.hpp"

#include <algorithm>
#include <charconv>

namespace heraklit {

namespace {

[[noreturn]] void fail(const BuiltinOp& op, const std::string& what) {
  throw EvalError(op.name + ": " + what);
}

void need_arity(const BuiltinOp& op, const std::vector<Value>& args, std::size_t n) {
  if (args.size() != n)
    fail(op, "expects " + std::to_string(n) + " argument(s), got " + std::to_string(args.size()));
}

const Value& need_kind(const BuiltinOp& op, const std::vector<Value>& args, std::size_t i,
                       Value::Kind k) {
  if (args[i].kind() != k)
    fail(op, std::string("argument ") + std::to_string(i) + " must be a " + kind_name(k) +
                 ", got " + kind_name(args[i].kind()));
  return args[i];
}

std::int64_t int_arg(const BuiltinOp& op, const std::vector<Value>& args, std::size_t i) {
  return need_kind(op, args, i, Value::Kind::Int).int_value();
}

bool bool_arg(const BuiltinOp& op, const std::vector<Value>& args, std::size_t i) {
  return need_kind(op, args, i, Value::Kind::Bool).bool_value();
}

const std::vector<Value>& set_arg(const BuiltinOp& op, const std::vector<Value>& args,
                                  std::size_t i) {
  return need_kind(op, args, i, Value::Kind::Set).items();
}

}  // namespace

std::optional<BuiltinOp> builtin_by_name(std::string_view name) {
  auto make = [&](Builtin b) { return BuiltinOp{b, 0, std::string(name)}; };
  if (name == "union") return make(Builtin::Union);
  if (name == "intersect") return make(Builtin::Intersect);
  if (name == "diff") return make(Builtin::Diff);
  if (name == "elem") return make(Builtin::Elem);
  if (name == "subset") return make(Builtin::Subset);
  if (name == "card") return make(Builtin::Card);
  if (name == "not_empty") return make(Builtin::NotEmpty);
  if (name == "tuple_make") return make(Builtin::TupleMake);
  if (name == "eq") return make(Builtin::Eq);
  if (name == "neq") return make(Builtin::Neq);
  if (name == "add") return make(Builtin::Add);
  if (name == "sub") return make(Builtin::Sub);
  if (name == "mul") return make(Builtin::Mul);
  if (name == "lt") return make(Builtin::Lt);
  if (name == "leq") return make(Builtin::Leq);
  if (name == "and") return make(Builtin::And);
  if (name == "or") return make(Builtin::Or);
  if (name == "not") return make(Builtin::Not);
  if (name.starts_with("proj_")) {
    int idx = 0;
    auto digits = name.substr(5);
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec == std::errc() && p == digits.data() + digits.size() && idx >= 1)
      return BuiltinOp{Builtin::Proj, idx, std::string(name)};
  }
  return std::nullopt;
}

std::optional<std::size_t> builtin_arity(Builtin op) {
  switch (op) {
    case Builtin::Union:
    case Builtin::Intersect:
    case Builtin::Diff:
    case Builtin::Elem:
    case Builtin::Subset:
    case Builtin::Eq:
    case Builtin::Neq:
    case Builtin::Add:
    case Builtin::Sub:
    case Builtin::Mul:
    case Builtin::Lt:
    case Builtin::Leq:
    case Builtin::And:
    case Builtin::Or:
      return 2;
    case Builtin::Card:
    case Builtin::NotEmpty:
    case Builtin::Not:
    case Builtin::Proj:
      return 1;
    case Builtin::TupleMake:
      return std::nullopt;
  }
  return std::nullopt;
}

bool builtin_is_relation(Builtin op) {
  switch (op) {
    case Builtin::Elem:
    case Builtin::Subset:
    case Builtin::NotEmpty:
    case Builtin::Eq:
    case Builtin::Neq:
    case Builtin::Lt:
    case Builtin::Leq:
    case Builtin::And:
    case Builtin::Or:
    case Builtin::Not:
      return true;
    default:
      return false;
  }
}

Value builtin_apply(const BuiltinOp& op, const std::vector<Value>& args) {
  if (auto n = builtin_arity(op.op)) need_arity(op, args, *n);
  switch (op.op) {
    case Builtin::Union: {
      const auto& a = set_arg(op, args, 0);
      const auto& b = set_arg(op, args, 1);
      std::vector<Value> out;
      out.reserve(a.size() + b.size());
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return Value::set(std::move(out));
    }
    case Builtin::Intersect: {
      const auto& a = set_arg(op, args, 0);
      const auto& b = set_arg(op, args, 1);
      std::vector<Value> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return Value::set(std::move(out));
    }
    case Builtin::Diff: {
      const auto& a = set_arg(op, args, 0);
      const auto& b = set_arg(op, args, 1);
      std::vector<Value> out;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return Value::set(std::move(out));
    }
    case Builtin::Elem: {
      need_kind(op, args, 1, Value::Kind::Set);
      return Value::boolean(args[1].set_contains(args[0]));
    }
    case Builtin::Subset: {
      const auto& a = set_arg(op, args, 0);
      const auto& b = set_arg(op, args, 1);
      return Value::boolean(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
    case Builtin::Card:
      return Value::integer(static_cast<std::int64_t>(set_arg(op, args, 0).size()));
    case Builtin::NotEmpty:
      return Value::boolean(!set_arg(op, args, 0).empty());
    case Builtin::TupleMake:
      return Value::tuple(args);
    case Builtin::Proj: {
      const auto& t = need_kind(op, args, 0, Value::Kind::Tuple).items();
      if (op.proj_index < 1 || static_cast<std::size_t>(op.proj_index) > t.size())
        fail(op, "component index out of range for arity-" + std::to_string(t.size()) +
                     " tuple (argument 0)");
      return t[static_cast<std::size_t>(op.proj_index) - 1];
    }
    case Builtin::Eq:
      return Value::boolean(args[0] == args[1]);
    case Builtin::Neq:
      return Value::boolean(args[0] != args[1]);
    case Builtin::Add:
    case Builtin::Sub:
    case Builtin::Mul: {
      std::int64_t a = int_arg(op, args, 0);
      std::int64_t b = int_arg(op, args, 1);
      std::int64_t r = 0;
      bool ovf = false;
      if (op.op == Builtin::Add) ovf = __builtin_add_overflow(a, b, &r);
      if (op.op == Builtin::Sub) ovf = __builtin_sub_overflow(a, b, &r);
      if (op.op == Builtin::Mul) ovf = __builtin_mul_overflow(a, b, &r);
      if (ovf) fail(op, "integer overflow");
      return Value::integer(r);
    }
    case Builtin::Lt:
      return Value::boolean(int_arg(op, args, 0) < int_arg(op, args, 1));
    case Builtin::Leq:
      return Value::boolean(int_arg(op, args, 0) <= int_arg(op, args, 1));
    case Builtin::And:
      return Value::boolean(bool_arg(op, args, 0) && bool_arg(op, args, 1));
    case Builtin::Or:
      return Value::boolean(bool_arg(op, args, 0) || bool_arg(op, args, 1));
    case Builtin::Not:
      return Value::boolean(!bool_arg(op, args, 0));
  }
  throw EvalError("unknown builtin");
}

Value builtin_apply(std::string_view name, const std::vector<Value>& args) {
  auto op = builtin_by_name(name);
  if (!op) throw EvalError("unknown builtin '" + std::string(name) + "'");
  return builtin_apply(*op, args);
}

}  // namespace heraklit
