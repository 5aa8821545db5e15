#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heraklit {

// Raised by evaluation-layer failures: builtin misuse, unbound variables,
// table misses, enumeration over an infinite carrier.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An item of the universal domain: symbol, integer, boolean, tuple, or
// finite set. Immutable after construction; copies share the node.
// Sets hold their elements sorted by compare() and duplicate-free.
class Value {
public:
  enum class Kind { Symbol, Int, Bool, Tuple, Set };

  Value();  // Int 0

  // Symbol names follow the identifier grammar (letters, digits,
  // underscores, dot-separated segments) and must not be reserved words;
  // this keeps canonical_text parseable. Throws std::invalid_argument.
  static Value symbol(std::string name);
  static Value integer(std::int64_t n);
  static Value boolean(bool b);
  static Value tuple(std::vector<Value> items);
  // Sorts and deduplicates: a set, not a multiset.
  static Value set(std::vector<Value> items);

  Kind kind() const { return node_->kind; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_int() const { return kind() == Kind::Int; }
  bool is_bool() const { return kind() == Kind::Bool; }
  bool is_tuple() const { return kind() == Kind::Tuple; }
  bool is_set() const { return kind() == Kind::Set; }

  const std::string& symbol_name() const;
  std::int64_t int_value() const;
  bool bool_value() const;
  // Tuple components in order, or set elements in compare() order.
  const std::vector<Value>& items() const;

  bool set_contains(const Value& v) const;

private:
  struct Node {
    Kind kind = Kind::Int;
    std::string sym;
    std::int64_t num = 0;
    bool flag = false;
    std::vector<Value> elems;
  };
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Strict total order: kind rank (Symbol < Int < Bool < Tuple < Set), then
// recursive lexicographic comparison within a kind.
std::strong_ordering compare(const Value& a, const Value& b);

inline std::strong_ordering operator<=>(const Value& a, const Value& b) { return compare(a, b); }
inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == std::strong_ordering::equal; }
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) == std::strong_ordering::less; }

// Deterministic text form; set elements appear in compare() order.
// Round-trips through the DSL literal grammar.
std::string canonical_text(const Value& v);

const char* kind_name(Value::Kind k);

// The language's reserved words; unusable as symbol names.
const std::vector<std::string>& reserved_words();
bool is_reserved_word(std::string_view name);
bool is_valid_symbol_name(std::string_view name);

}  // namespace heraklit
