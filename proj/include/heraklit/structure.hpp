#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "heraklit/builtins.hpp"
#include "heraklit/signature.hpp"
#include "heraklit/value.hpp"

namespace heraklit {

// A function symbol's interpretation: a builtin or a finite table.
struct FnDef {
  enum class Kind { Builtin, Table };
  Kind kind = Kind::Builtin;
  BuiltinOp builtin{Builtin::Eq, 0, "eq"};
  std::map<std::vector<Value>, Value> table;

  static FnDef from_builtin(BuiltinOp op);
  static FnDef from_table(std::map<std::vector<Value>, Value> entries);

  bool operator==(const FnDef& o) const;
};

// A static predicate's interpretation: a finite set of argument tuples
// or a boolean-valued builtin.
struct RelDef {
  enum class Kind { Builtin, Tuples };
  Kind kind = Kind::Tuples;
  BuiltinOp builtin{Builtin::Eq, 0, "eq"};
  std::set<std::vector<Value>> tuples;

  static RelDef from_builtin(BuiltinOp op);
  static RelDef from_tuples(std::set<std::vector<Value>> ts);

  bool operator==(const RelDef& o) const;
};

// The interpretation of a signature: one value per constant, one
// definition per function and static predicate. Carriers derive from the
// signature's sort definitions (see carrier_contains / enumerate_carrier).
struct Structure {
  std::map<std::string, Value> constant_values;
  std::map<std::string, FnDef> function_defs;
  std::map<std::string, RelDef> static_relations;

  bool operator==(const Structure&) const = default;
};

// Empty result means the structure is a well-formed interpretation of the
// signature: every symbol interpreted exactly once, constants inside their
// carriers, tables well-sorted and total over finite argument carriers.
std::vector<std::string> wf_check(const Signature& sig, const Structure& str);

}  // namespace heraklit
