#include "heraklit/structure.hpp"

#include <algorithm>

namespace heraklit {

FnDef FnDef::from_builtin(BuiltinOp op) {
  FnDef d;
  d.kind = Kind::Builtin;
  d.builtin = std::move(op);
  return d;
}

FnDef FnDef::from_table(std::map<std::vector<Value>, Value> entries) {
  FnDef d;
  d.kind = Kind::Table;
  d.table = std::move(entries);
  return d;
}

bool FnDef::operator==(const FnDef& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Builtin) return builtin.name == o.builtin.name;
  return table == o.table;
}

RelDef RelDef::from_builtin(BuiltinOp op) {
  RelDef d;
  d.kind = Kind::Builtin;
  d.builtin = std::move(op);
  return d;
}

RelDef RelDef::from_tuples(std::set<std::vector<Value>> ts) {
  RelDef d;
  d.kind = Kind::Tuples;
  d.tuples = std::move(ts);
  return d;
}

bool RelDef::operator==(const RelDef& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Builtin) return builtin.name == o.builtin.name;
  return tuples == o.tuples;
}

namespace {

// Total number of argument tuples if all argument carriers are finite.
bool finite_domain_size(const Signature& sig, const std::vector<std::string>& arg_sorts,
                        std::size_t cap, std::size_t& out) {
  std::size_t total = 1;
  for (const auto& s : arg_sorts) {
    if (!carrier_finite(sig, s)) return false;
    std::size_t n = 0;
    try {
      n = enumerate_carrier(sig, s, cap).size();
    } catch (const EvalError&) {
      return false;
    }
    if (n == 0) {
      out = 0;
      return true;
    }
    if (total > cap / n) return false;
    total *= n;
  }
  out = total;
  return true;
}

}  // namespace

std::vector<std::string> wf_check(const Signature& sig, const Structure& str) {
  std::vector<std::string> diags;
  auto bad = [&](const std::string& sym, const std::string& why) {
    diags.push_back("symbol '" + sym + "': " + why);
  };

  for (const auto& d : signature_diagnostics(sig)) diags.push_back(d);

  for (const auto& [name, sort] : sig.constants) {
    auto it = str.constant_values.find(name);
    if (it == str.constant_values.end()) {
      bad(name, "uninterpreted symbol (no constant value)");
      continue;
    }
    if (sig.has_sort(sort) && !carrier_contains(sig, sort, it->second))
      bad(name, "sort violation: value " + canonical_text(it->second) +
                    " is outside the carrier of '" + sort + "'");
  }

  for (const auto& [name, decl] : sig.functions) {
    auto it = str.function_defs.find(name);
    if (it == str.function_defs.end()) {
      bad(name, "uninterpreted symbol (no function definition)");
      continue;
    }
    const FnDef& def = it->second;
    if (def.kind == FnDef::Kind::Builtin) {
      if (auto n = builtin_arity(def.builtin.op); n && *n != decl.arg_sorts.size())
        bad(name, "builtin '" + def.builtin.name + "' expects " + std::to_string(*n) +
                      " argument(s) but the declaration has " +
                      std::to_string(decl.arg_sorts.size()));
      continue;
    }
    bool entries_ok = true;
    for (const auto& [key, result] : def.table) {
      if (key.size() != decl.arg_sorts.size()) {
        bad(name, "table entry arity mismatch");
        entries_ok = false;
        continue;
      }
      for (std::size_t i = 0; i < key.size(); ++i)
        if (sig.has_sort(decl.arg_sorts[i]) &&
            !carrier_contains(sig, decl.arg_sorts[i], key[i])) {
          bad(name, "sort violation: table argument " + canonical_text(key[i]) +
                        " is outside the carrier of '" + decl.arg_sorts[i] + "'");
          entries_ok = false;
        }
      if (sig.has_sort(decl.result_sort) &&
          !carrier_contains(sig, decl.result_sort, result)) {
        bad(name, "sort violation: table result " + canonical_text(result) +
                      " is outside the carrier of '" + decl.result_sort + "'");
        entries_ok = false;
      }
    }
    std::size_t domain = 0;
    if (entries_ok && finite_domain_size(sig, decl.arg_sorts, 1u << 16, domain) &&
        def.table.size() < domain)
      bad(name, "partial table: " + std::to_string(def.table.size()) + " of " +
                    std::to_string(domain) + " argument tuples covered");
  }

  for (const auto& [name, arg_sorts] : sig.static_predicates) {
    auto it = str.static_relations.find(name);
    if (it == str.static_relations.end()) {
      bad(name, "uninterpreted symbol (no relation)");
      continue;
    }
    const RelDef& def = it->second;
    if (def.kind == RelDef::Kind::Builtin) {
      if (!builtin_is_relation(def.builtin.op))
        bad(name, "builtin '" + def.builtin.name + "' is not boolean-valued");
      if (auto n = builtin_arity(def.builtin.op); n && *n != arg_sorts.size())
        bad(name, "builtin '" + def.builtin.name + "' expects " + std::to_string(*n) +
                      " argument(s) but the declaration has " + std::to_string(arg_sorts.size()));
      continue;
    }
    for (const auto& key : def.tuples) {
      if (key.size() != arg_sorts.size()) {
        bad(name, "relation tuple arity mismatch");
        continue;
      }
      for (std::size_t i = 0; i < key.size(); ++i)
        if (sig.has_sort(arg_sorts[i]) && !carrier_contains(sig, arg_sorts[i], key[i]))
          bad(name, "sort violation: relation argument " + canonical_text(key[i]) +
                        " is outside the carrier of '" + arg_sorts[i] + "'");
    }
  }

  for (const auto& [name, _] : str.constant_values)
    if (!sig.constants.count(name)) bad(name, "interpretation for undeclared constant");
  for (const auto& [name, _] : str.function_defs)
    if (!sig.functions.count(name)) bad(name, "interpretation for undeclared function");
  for (const auto& [name, _] : str.static_relations)
    if (!sig.static_predicates.count(name)) bad(name, "interpretation for undeclared predicate");

  std::sort(diags.begin(), diags.end());
  diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
  return diags;
}

}  // namespace heraklit
