#include "heraklit/signature.hpp"

#include <algorithm>
#include <set>

namespace heraklit {

SortDef SortDef::explicit_set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const Value& a, const Value& b) { return a == b; }),
              elems.end());
  SortDef d;
  d.kind = Kind::Explicit;
  d.elements = std::move(elems);
  return d;
}

SortDef SortDef::powerset(std::string base_sort) {
  SortDef d;
  d.kind = Kind::Powerset;
  d.base = std::move(base_sort);
  return d;
}

SortDef SortDef::product(std::vector<std::string> comps) {
  SortDef d;
  d.kind = Kind::Product;
  d.components = std::move(comps);
  return d;
}

SortDef SortDef::int_sort() {
  SortDef d;
  d.kind = Kind::IntSort;
  return d;
}

SortDef SortDef::bool_sort() {
  SortDef d;
  d.kind = Kind::BoolSort;
  return d;
}

Signature::Signature() {
  sorts.emplace("int", SortDef::int_sort());
  sorts.emplace("bool", SortDef::bool_sort());
}

bool Signature::has_symbol(const std::string& name) const {
  return sorts.count(name) || constants.count(name) || functions.count(name) ||
         static_predicates.count(name) || dynamic_predicates.count(name);
}

namespace {

// Detects cycles through powerset/product references while checking that
// referenced sorts exist.
bool sort_def_ok(const Signature& sig, const std::string& name, std::set<std::string>& active,
                 std::vector<std::string>& diags) {
  if (active.count(name)) {
    diags.push_back("sort '" + name + "': cyclic definition");
    return false;
  }
  auto it = sig.sorts.find(name);
  if (it == sig.sorts.end()) {
    diags.push_back("sort '" + name + "': not declared");
    return false;
  }
  const SortDef& d = it->second;
  active.insert(name);
  bool ok = true;
  if (d.kind == SortDef::Kind::Powerset) ok = sort_def_ok(sig, d.base, active, diags);
  if (d.kind == SortDef::Kind::Product) {
    if (d.components.empty()) {
      diags.push_back("sort '" + name + "': product of zero sorts");
      ok = false;
    }
    for (const auto& c : d.components) ok = sort_def_ok(sig, c, active, diags) && ok;
  }
  active.erase(name);
  return ok;
}

}  // namespace

std::vector<std::string> signature_diagnostics(const Signature& sig) {
  std::vector<std::string> diags;

  std::map<std::string, int> uses;
  for (const auto& [n, _] : sig.sorts) uses[n]++;
  for (const auto& [n, _] : sig.constants) uses[n]++;
  for (const auto& [n, _] : sig.functions) uses[n]++;
  for (const auto& [n, _] : sig.static_predicates) uses[n]++;
  for (const auto& [n, _] : sig.dynamic_predicates) uses[n]++;
  for (const auto& [n, c] : uses)
    if (c > 1) diags.push_back("symbol '" + n + "': declared in more than one category");

  for (const auto& [n, _] : sig.sorts) {
    std::set<std::string> active;
    sort_def_ok(sig, n, active, diags);
  }

  auto check_sort_ref = [&](const std::string& owner, const std::string& sort) {
    if (!sig.has_sort(sort))
      diags.push_back("symbol '" + owner + "': references undeclared sort '" + sort + "'");
  };
  for (const auto& [n, s] : sig.constants) check_sort_ref(n, s);
  for (const auto& [n, f] : sig.functions) {
    for (const auto& s : f.arg_sorts) check_sort_ref(n, s);
    check_sort_ref(n, f.result_sort);
  }
  for (const auto& [n, args] : sig.static_predicates)
    for (const auto& s : args) check_sort_ref(n, s);
  for (const auto& [n, s] : sig.dynamic_predicates) check_sort_ref(n, s);

  if (auto it = sig.sorts.find("int");
      it == sig.sorts.end() || it->second.kind != SortDef::Kind::IntSort)
    diags.push_back("sort 'int': builtin declaration missing or overridden");
  if (auto it = sig.sorts.find("bool");
      it == sig.sorts.end() || it->second.kind != SortDef::Kind::BoolSort)
    diags.push_back("sort 'bool': builtin declaration missing or overridden");

  std::sort(diags.begin(), diags.end());
  diags.erase(std::unique(diags.begin(), diags.end()), diags.end());
  return diags;
}

bool carrier_contains(const Signature& sig, const std::string& sort, const Value& v) {
  auto it = sig.sorts.find(sort);
  if (it == sig.sorts.end()) return false;
  const SortDef& d = it->second;
  switch (d.kind) {
    case SortDef::Kind::IntSort:
      return v.is_int();
    case SortDef::Kind::BoolSort:
      return v.is_bool();
    case SortDef::Kind::Explicit:
      return std::binary_search(d.elements.begin(), d.elements.end(), v,
                                [](const Value& a, const Value& b) { return a < b; });
    case SortDef::Kind::Powerset: {
      if (!v.is_set()) return false;
      for (const auto& e : v.items())
        if (!carrier_contains(sig, d.base, e)) return false;
      return true;
    }
    case SortDef::Kind::Product: {
      if (!v.is_tuple() || v.items().size() != d.components.size()) return false;
      for (std::size_t i = 0; i < d.components.size(); ++i)
        if (!carrier_contains(sig, d.components[i], v.items()[i])) return false;
      return true;
    }
  }
  return false;
}

bool carrier_finite(const Signature& sig, const std::string& sort) {
  auto it = sig.sorts.find(sort);
  if (it == sig.sorts.end()) return false;
  const SortDef& d = it->second;
  switch (d.kind) {
    case SortDef::Kind::IntSort:
      return false;
    case SortDef::Kind::BoolSort:
    case SortDef::Kind::Explicit:
      return true;
    case SortDef::Kind::Powerset:
      return carrier_finite(sig, d.base);
    case SortDef::Kind::Product:
      return std::all_of(d.components.begin(), d.components.end(),
                         [&](const std::string& c) { return carrier_finite(sig, c); });
  }
  return false;
}

std::vector<Value> enumerate_carrier(const Signature& sig, const std::string& sort,
                                     std::size_t cap) {
  auto it = sig.sorts.find(sort);
  if (it == sig.sorts.end()) throw EvalError("sort '" + sort + "' not declared");
  const SortDef& d = it->second;
  std::vector<Value> out;
  switch (d.kind) {
    case SortDef::Kind::IntSort:
      throw EvalError("sort '" + sort + "': cannot enumerate the integer carrier");
    case SortDef::Kind::BoolSort:
      out = {Value::boolean(false), Value::boolean(true)};
      break;
    case SortDef::Kind::Explicit:
      out = d.elements;
      break;
    case SortDef::Kind::Powerset: {
      auto base = enumerate_carrier(sig, d.base, cap);
      if (base.size() >= 8 * sizeof(std::size_t) || (std::size_t(1) << base.size()) > cap)
        throw EvalError("sort '" + sort + "': powerset expansion exceeds " +
                        std::to_string(cap) + " values");
      std::size_t n = std::size_t(1) << base.size();
      out.reserve(n);
      for (std::size_t mask = 0; mask < n; ++mask) {
        std::vector<Value> elems;
        for (std::size_t i = 0; i < base.size(); ++i)
          if (mask & (std::size_t(1) << i)) elems.push_back(base[i]);
        out.push_back(Value::set(std::move(elems)));
      }
      break;
    }
    case SortDef::Kind::Product: {
      std::vector<std::vector<Value>> comps;
      std::size_t total = 1;
      for (const auto& c : d.components) {
        comps.push_back(enumerate_carrier(sig, c, cap));
        if (comps.back().empty()) return {};
        if (total > cap / comps.back().size())
          throw EvalError("sort '" + sort + "': product expansion exceeds " +
                          std::to_string(cap) + " values");
        total *= comps.back().size();
      }
      std::vector<std::size_t> idx(comps.size(), 0);
      for (std::size_t k = 0; k < total; ++k) {
        std::vector<Value> elems;
        elems.reserve(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) elems.push_back(comps[i][idx[i]]);
        out.push_back(Value::tuple(std::move(elems)));
        for (std::size_t i = comps.size(); i-- > 0;) {
          if (++idx[i] < comps[i].size()) break;
          idx[i] = 0;
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void collect_symbols(const Value& v, std::set<std::string>& out) {
  if (v.is_symbol()) out.insert(v.symbol_name());
  if (v.is_tuple() || v.is_set())
    for (const auto& e : v.items()) collect_symbols(e, out);
}

}  // namespace

std::vector<std::string> carrier_symbols(const Signature& sig) {
  std::set<std::string> out;
  for (const auto& [_, d] : sig.sorts)
    for (const auto& e : d.elements) collect_symbols(e, out);
  return {out.begin(), out.end()};
}

}  // namespace heraklit
