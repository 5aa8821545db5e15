#include "heraklit/value.hpp"

#include <algorithm>
#include <sstream>

namespace heraklit {

Value::Value() {
  static const auto node = std::make_shared<const Node>();
  node_ = node;
}

Value Value::symbol(std::string name) {
  if (!is_valid_symbol_name(name))
    throw std::invalid_argument("invalid symbol name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->sym = std::move(name);
  return Value(std::move(n));
}

Value Value::integer(std::int64_t v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->num = v;
  return Value(std::move(n));
}

Value Value::boolean(bool b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bool;
  n->flag = b;
  return Value(std::move(n));
}

Value Value::tuple(std::vector<Value> items) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tuple;
  n->elems = std::move(items);
  return Value(std::move(n));
}

Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end(),
                          [](const Value& a, const Value& b) { return a == b; }),
              items.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Set;
  n->elems = std::move(items);
  return Value(std::move(n));
}

const std::string& Value::symbol_name() const {
  if (!is_symbol()) throw std::logic_error("Value::symbol_name on non-symbol");
  return node_->sym;
}

std::int64_t Value::int_value() const {
  if (!is_int()) throw std::logic_error("Value::int_value on non-int");
  return node_->num;
}

bool Value::bool_value() const {
  if (!is_bool()) throw std::logic_error("Value::bool_value on non-bool");
  return node_->flag;
}

const std::vector<Value>& Value::items() const {
  if (!is_tuple() && !is_set()) throw std::logic_error("Value::items on scalar value");
  return node_->elems;
}

bool Value::set_contains(const Value& v) const {
  const auto& elems = items();
  return std::binary_search(elems.begin(), elems.end(), v,
                            [](const Value& a, const Value& b) { return a < b; });
}

static int kind_rank(Value::Kind k) {
  switch (k) {
    case Value::Kind::Symbol: return 0;
    case Value::Kind::Int: return 1;
    case Value::Kind::Bool: return 2;
    case Value::Kind::Tuple: return 3;
    case Value::Kind::Set: return 4;
  }
  return 5;
}

std::strong_ordering compare(const Value& a, const Value& b) {
  if (int ra = kind_rank(a.kind()), rb = kind_rank(b.kind()); ra != rb)
    return ra <=> rb;
  switch (a.kind()) {
    case Value::Kind::Symbol:
      return a.symbol_name() <=> b.symbol_name();
    case Value::Kind::Int:
      return a.int_value() <=> b.int_value();
    case Value::Kind::Bool:
      return a.bool_value() <=> b.bool_value();
    case Value::Kind::Tuple:
    case Value::Kind::Set: {
      const auto& xs = a.items();
      const auto& ys = b.items();
      std::size_t n = std::min(xs.size(), ys.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare(xs[i], ys[i]); c != std::strong_ordering::equal) return c;
      }
      return xs.size() <=> ys.size();
    }
  }
  return std::strong_ordering::equal;
}

std::string canonical_text(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Symbol:
      return v.symbol_name();
    case Value::Kind::Int:
      return std::to_string(v.int_value());
    case Value::Kind::Bool:
      return v.bool_value() ? "true" : "false";
    case Value::Kind::Tuple:
    case Value::Kind::Set: {
      std::ostringstream out;
      out << (v.is_tuple() ? '(' : '{');
      bool first = true;
      for (const auto& e : v.items()) {
        if (!first) out << ", ";
        first = false;
        out << canonical_text(e);
      }
      out << (v.is_tuple() ? ')' : '}');
      return out.str();
    }
  }
  return {};
}

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Symbol: return "symbol";
    case Value::Kind::Int: return "int";
    case Value::Kind::Bool: return "bool";
    case Value::Kind::Tuple: return "tuple";
    case Value::Kind::Set: return "set";
  }
  return "?";
}

const std::vector<std::string>& reserved_words() {
  static const std::vector<std::string> words = {
      "module", "sort",   "powerset",   "const",   "fn",     "pred",      "static",
      "dynamic", "place", "transition", "consume", "read",   "produce",   "var",
      "guard",   "marking", "interface", "left",   "right",  "builtin",   "table",
      "true",    "false",
  };
  return words;
}

bool is_reserved_word(std::string_view name) {
  const auto& words = reserved_words();
  return std::find(words.begin(), words.end(), name) != words.end();
}

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty() || is_reserved_word(name)) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  bool segment_start = true;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (segment_start) {
      if (!alpha(c)) return false;
      segment_start = false;
    } else if (c == '.') {
      if (i + 1 >= name.size()) return false;
      segment_start = true;
    } else if (!alnum(c)) {
      return false;
    }
  }
  return !segment_start;
}

}  // namespace heraklit
