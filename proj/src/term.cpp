#include "heraklit/term.hpp"

#include <algorithm>
#include <sstream>

namespace heraklit {

Term Term::var(std::string name) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  return t;
}

Term Term::constant(std::string name) {
  Term t;
  t.kind = Kind::Const;
  t.name = std::move(name);
  return t;
}

Term Term::app(std::string name, std::vector<Term> args) {
  Term t;
  t.kind = Kind::App;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

Term Term::tuple(std::vector<Term> comps) {
  Term t;
  t.kind = Kind::Tuple;
  t.args = std::move(comps);
  return t;
}

Term Term::set(std::vector<Term> elems) {
  Term t;
  t.kind = Kind::Set;
  t.args = std::move(elems);
  return t;
}

Term Term::literal(Value v) {
  Term t;
  t.kind = Kind::Lit;
  t.lit = std::move(v);
  return t;
}

bool Term::operator==(const Term& o) const {
  if (kind != o.kind || name != o.name || args.size() != o.args.size()) return false;
  if (kind == Kind::Lit && lit != o.lit) return false;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!(args[i] == o.args[i])) return false;
  return true;
}

std::string term_text(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t.name;
    case Term::Kind::Lit:
      return canonical_text(t.lit);
    case Term::Kind::App: {
      std::ostringstream out;
      out << t.name << '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out << ", ";
        out << term_text(t.args[i]);
      }
      out << ')';
      return out.str();
    }
    case Term::Kind::Tuple:
    case Term::Kind::Set: {
      std::ostringstream out;
      out << (t.kind == Term::Kind::Tuple ? '(' : '{');
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out << ", ";
        out << term_text(t.args[i]);
      }
      out << (t.kind == Term::Kind::Tuple ? ')' : '}');
      return out.str();
    }
  }
  return {};
}

Term normalize_term(const Term& t) {
  if (t.args.empty() && t.kind != Term::Kind::Tuple && t.kind != Term::Kind::Set) return t;
  Term out = t;
  for (auto& a : out.args) a = normalize_term(a);
  if (out.kind == Term::Kind::Tuple || out.kind == Term::Kind::Set) {
    bool all_lit = std::all_of(out.args.begin(), out.args.end(), [](const Term& a) {
      return a.kind == Term::Kind::Lit;
    });
    if (all_lit) {
      std::vector<Value> vals;
      vals.reserve(out.args.size());
      for (auto& a : out.args) vals.push_back(std::move(a.lit));
      return Term::literal(out.kind == Term::Kind::Tuple ? Value::tuple(std::move(vals))
                                                         : Value::set(std::move(vals)));
    }
  }
  return out;
}

std::string env_text(const Env& env) {
  std::ostringstream out;
  out << '[';
  bool first = true;
  for (const auto& [name, v] : env) {
    if (!first) out << ", ";
    first = false;
    out << name << '=' << canonical_text(v);
  }
  out << ']';
  return out.str();
}

namespace {

[[noreturn]] void ill(const Term& t, const std::string& why) {
  throw SortError("ill-sorted term '" + term_text(t) + "': " + why);
}

// Checks a ground value against a sort definition.
bool value_in_sort(const Signature& sig, const std::string& sort, const Value& v) {
  return carrier_contains(sig, sort, v);
}

}  // namespace

std::string sort_check(const Term& t, const Signature& sig, const VarSorts& var_sorts) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = var_sorts.find(t.name);
      if (it == var_sorts.end()) ill(t, "unbound variable '" + t.name + "'");
      if (!sig.has_sort(it->second)) ill(t, "variable sort '" + it->second + "' not declared");
      return it->second;
    }
    case Term::Kind::Const: {
      auto it = sig.constants.find(t.name);
      if (it == sig.constants.end()) ill(t, "unknown constant '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::App: {
      const std::vector<std::string>* arg_sorts = nullptr;
      std::string result;
      if (auto it = sig.functions.find(t.name); it != sig.functions.end()) {
        arg_sorts = &it->second.arg_sorts;
        result = it->second.result_sort;
      } else if (auto pit = sig.static_predicates.find(t.name);
                 pit != sig.static_predicates.end()) {
        arg_sorts = &pit->second;
        result = "bool";
      } else {
        ill(t, "unknown symbol '" + t.name + "'");
      }
      if (t.args.size() != arg_sorts->size())
        ill(t, "arity mismatch: '" + t.name + "' expects " +
                   std::to_string(arg_sorts->size()) + " argument(s), got " +
                   std::to_string(t.args.size()));
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        VarSorts copy = var_sorts;
        try {
          check_term(t.args[i], (*arg_sorts)[i], sig, copy);
        } catch (const SortError& e) {
          ill(t, "argument sort mismatch at position " + std::to_string(i) + ": " + e.what());
        }
        if (copy != var_sorts)
          ill(t, "argument " + std::to_string(i) + " contains an unbound variable");
      }
      return result;
    }
    case Term::Kind::Lit: {
      if (t.lit.is_int()) return "int";
      if (t.lit.is_bool()) return "bool";
      std::vector<std::string> hits;
      for (const auto& [name, def] : sig.sorts) {
        if (def.kind == SortDef::Kind::IntSort || def.kind == SortDef::Kind::BoolSort) continue;
        if (value_in_sort(sig, name, t.lit)) hits.push_back(name);
      }
      if (hits.empty()) ill(t, "literal belongs to no declared carrier");
      if (hits.size() > 1)
        ill(t, "literal is ambiguous between sorts '" + hits[0] + "' and '" + hits[1] + "'");
      return hits[0];
    }
    case Term::Kind::Tuple:
    case Term::Kind::Set: {
      // Infer by acceptance: the unique product/powerset sort the term
      // checks against without needing fresh variable inferences.
      const bool is_tuple = t.kind == Term::Kind::Tuple;
      std::vector<std::string> hits;
      for (const auto& [name, def] : sig.sorts) {
        if (def.kind != (is_tuple ? SortDef::Kind::Product : SortDef::Kind::Powerset)) continue;
        VarSorts copy = var_sorts;
        try {
          check_term(t, name, sig, copy);
        } catch (const SortError&) {
          continue;
        }
        if (copy == var_sorts) hits.push_back(name);
      }
      if (hits.empty())
        ill(t, is_tuple ? "no product sort accepts this tuple"
                        : "no powerset sort accepts this set");
      if (hits.size() > 1)
        ill(t, std::string(is_tuple ? "tuple" : "set") + " is ambiguous between sorts '" +
                   hits[0] + "' and '" + hits[1] + "'");
      return hits[0];
    }
  }
  ill(t, "unreachable");
}

void check_term(const Term& t, const std::string& expected, const Signature& sig,
                VarSorts& var_sorts) {
  if (!sig.has_sort(expected)) ill(t, "expected sort '" + expected + "' not declared");
  const SortDef& def = sig.sorts.at(expected);
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = var_sorts.find(t.name);
      if (it == var_sorts.end()) {
        var_sorts.emplace(t.name, expected);
        return;
      }
      if (it->second != expected)
        ill(t, "variable '" + t.name + "' used at sort '" + expected +
                   "' but already has sort '" + it->second + "'");
      return;
    }
    case Term::Kind::Const:
    case Term::Kind::App: {
      std::string actual = sort_check(t, sig, var_sorts);
      if (actual != expected)
        ill(t, "has sort '" + actual + "', expected '" + expected + "'");
      return;
    }
    case Term::Kind::Lit: {
      if (!value_in_sort(sig, expected, t.lit))
        ill(t, "literal is outside the carrier of '" + expected + "'");
      return;
    }
    case Term::Kind::Tuple: {
      if (def.kind != SortDef::Kind::Product)
        ill(t, "tuple builder against non-product sort '" + expected + "'");
      if (def.components.size() != t.args.size())
        ill(t, "tuple arity " + std::to_string(t.args.size()) + " does not match sort '" +
                   expected + "' (" + std::to_string(def.components.size()) + " components)");
      for (std::size_t i = 0; i < t.args.size(); ++i)
        check_term(t.args[i], def.components[i], sig, var_sorts);
      return;
    }
    case Term::Kind::Set: {
      if (def.kind != SortDef::Kind::Powerset)
        ill(t, "set builder against non-powerset sort '" + expected + "'");
      for (const auto& e : t.args) check_term(e, def.base, sig, var_sorts);
      return;
    }
  }
}

Value eval(const Term& t, const Structure& str, const Env& env) {
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw EvalError("unbound variable '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::Const: {
      auto it = str.constant_values.find(t.name);
      if (it == str.constant_values.end())
        throw EvalError("uninterpreted constant '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::Lit:
      return t.lit;
    case Term::Kind::Tuple: {
      std::vector<Value> vs;
      vs.reserve(t.args.size());
      for (const auto& a : t.args) vs.push_back(eval(a, str, env));
      return Value::tuple(std::move(vs));
    }
    case Term::Kind::Set: {
      std::vector<Value> vs;
      vs.reserve(t.args.size());
      for (const auto& a : t.args) vs.push_back(eval(a, str, env));
      return Value::set(std::move(vs));
    }
    case Term::Kind::App: {
      std::vector<Value> vs;
      vs.reserve(t.args.size());
      for (const auto& a : t.args) vs.push_back(eval(a, str, env));
      if (auto it = str.function_defs.find(t.name); it != str.function_defs.end()) {
        const FnDef& def = it->second;
        if (def.kind == FnDef::Kind::Builtin) return builtin_apply(def.builtin, vs);
        auto hit = def.table.find(vs);
        if (hit == def.table.end()) {
          std::string key = canonical_text(Value::tuple(vs));
          throw EvalError("function '" + t.name + "': table miss at " + key);
        }
        return hit->second;
      }
      if (auto it = str.static_relations.find(t.name); it != str.static_relations.end()) {
        const RelDef& def = it->second;
        if (def.kind == RelDef::Kind::Builtin) {
          Value r = builtin_apply(def.builtin, vs);
          if (!r.is_bool())
            throw EvalError("predicate '" + t.name + "': builtin result is not boolean");
          return r;
        }
        return Value::boolean(def.tuples.count(vs) != 0);
      }
      throw EvalError("unknown symbol '" + t.name + "'");
    }
  }
  throw EvalError("malformed term");
}

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.name);
  for (const auto& a : t.args) term_vars(a, out);
}

void bindable_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.name);
  if (t.kind == Term::Kind::Tuple)
    for (const auto& a : t.args) bindable_vars(a, out);
}

bool is_ground(const Term& t, const Env& env) {
  std::set<std::string> vars;
  term_vars(t, vars);
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return env.count(v) != 0; });
}

std::optional<Env> match_structural(const Term& pattern, const Value& v, Env env,
                                    const Structure& str, std::vector<Residual>& residuals) {
  switch (pattern.kind) {
    case Term::Kind::Var: {
      auto it = env.find(pattern.name);
      if (it != env.end()) {
        if (it->second != v) return std::nullopt;
        return env;
      }
      env.emplace(pattern.name, v);
      return env;
    }
    case Term::Kind::Lit:
      if (pattern.lit != v) return std::nullopt;
      return env;
    case Term::Kind::Const: {
      auto it = str.constant_values.find(pattern.name);
      if (it == str.constant_values.end())
        throw EvalError("uninterpreted constant '" + pattern.name + "'");
      if (it->second != v) return std::nullopt;
      return env;
    }
    case Term::Kind::Tuple: {
      if (!v.is_tuple() || v.items().size() != pattern.args.size()) return std::nullopt;
      for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        auto next = match_structural(pattern.args[i], v.items()[i], std::move(env), str,
                                     residuals);
        if (!next) return std::nullopt;
        env = std::move(*next);
      }
      return env;
    }
    case Term::Kind::Set:
    case Term::Kind::App: {
      if (is_ground(pattern, env)) {
        if (eval(pattern, str, env) != v) return std::nullopt;
        return env;
      }
      residuals.push_back({pattern, v});
      return env;
    }
  }
  return std::nullopt;
}

MatchResult match_term(const Term& pattern, const Value& v, const Env& env,
                       const Structure& str) {
  std::vector<Residual> residuals;
  auto matched = match_structural(pattern, v, env, str, residuals);
  MatchResult result;
  if (!matched) return result;
  // Residuals that became ground through sibling bindings can be decided now.
  for (const auto& r : residuals) {
    if (!is_ground(r.term, *matched)) {
      result.deferred = true;
      return result;
    }
    if (eval(r.term, str, *matched) != r.expected) return result;
  }
  result.envs.push_back(std::move(*matched));
  return result;
}

}  // namespace heraklit
