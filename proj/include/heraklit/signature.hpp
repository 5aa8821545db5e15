#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heraklit/value.hpp"

namespace heraklit {

// How a sort's carrier is built. Explicit sorts list their elements;
// powerset and product sorts derive from other sorts; int and bool are
// the predeclared builtin sorts.
struct SortDef {
  enum class Kind { Explicit, Powerset, Product, IntSort, BoolSort };
  Kind kind = Kind::Explicit;
  std::vector<Value> elements;          // Explicit, sorted unique
  std::string base;                     // Powerset
  std::vector<std::string> components;  // Product

  static SortDef explicit_set(std::vector<Value> elems);
  static SortDef powerset(std::string base_sort);
  static SortDef product(std::vector<std::string> comps);
  static SortDef int_sort();
  static SortDef bool_sort();

  bool operator==(const SortDef&) const = default;
};

struct FunctionDecl {
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  bool operator==(const FunctionDecl&) const = default;
};

// The symbol vocabulary. "int" and "bool" are always declared. Symbol
// names are unique across all five categories.
struct Signature {
  std::map<std::string, SortDef> sorts;
  std::map<std::string, std::string> constants;                       // name -> sort
  std::map<std::string, FunctionDecl> functions;                      // name -> profile
  std::map<std::string, std::vector<std::string>> static_predicates;  // name -> arg sorts
  std::map<std::string, std::string> dynamic_predicates;              // name -> item sort

  Signature();

  bool has_sort(const std::string& name) const { return sorts.count(name) != 0; }
  // Any declared symbol, across all categories.
  bool has_symbol(const std::string& name) const;

  bool operator==(const Signature&) const = default;
};

// Declaration-level problems: undeclared sorts, duplicate symbol names,
// malformed sort definitions (including cyclic powerset/product chains).
std::vector<std::string> signature_diagnostics(const Signature& sig);

// Membership test against a sort's carrier, derived from the sort
// definitions alone.
bool carrier_contains(const Signature& sig, const std::string& sort, const Value& v);

// False exactly when the carrier is (transitively) the integer carrier.
bool carrier_finite(const Signature& sig, const std::string& sort);

// All carrier values in compare() order. Throws EvalError for infinite
// carriers or when the expansion exceeds `cap` values.
std::vector<Value> enumerate_carrier(const Signature& sig, const std::string& sort,
                                     std::size_t cap = 1u << 16);

// Every symbol occurring in an explicit carrier, recursively. Bare
// identifiers in term position that name one of these parse as literals.
std::vector<std::string> carrier_symbols(const Signature& sig);

}  // namespace heraklit
