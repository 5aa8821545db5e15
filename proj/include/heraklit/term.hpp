#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heraklit/structure.hpp"

namespace heraklit {

// A symbolic expression over a signature: variables, constants, function
// applications, tuple and set builders, and ground literals.
struct Term {
  enum class Kind { Var, Const, App, Tuple, Set, Lit };
  Kind kind = Kind::Lit;
  std::string name;        // Var / Const / App
  std::vector<Term> args;  // App arguments, tuple components, set elements
  Value lit;               // Lit only

  static Term var(std::string name);
  static Term constant(std::string name);
  static Term app(std::string name, std::vector<Term> args);
  static Term tuple(std::vector<Term> comps);
  static Term set(std::vector<Term> elems);
  static Term literal(Value v);

  bool operator==(const Term& o) const;
};

// Prefix textual form; ground literals via canonical_text.
std::string term_text(const Term& t);

// Normal form: tuple/set builders whose parts are all literals collapse
// into one literal value. Applications stay symbolic. finalize_net applies
// this to every inscription and guard, so equal-meaning terms compare equal.
Term normalize_term(const Term& t);

using Env = std::map<std::string, Value>;
using VarSorts = std::map<std::string, std::string>;

std::string env_text(const Env& env);

class SortError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bottom-up sort inference. Literal symbols, tuples and sets resolve to the
// unique declared sort whose carrier shape matches; ambiguity is an error.
// Throws SortError naming the ill-sorted subterm.
std::string sort_check(const Term& t, const Signature& sig, const VarSorts& var_sorts);

// Checking mode: verifies `t` against an expected sort, inferring sorts for
// variables first seen at structural positions (recorded into var_sorts).
// Throws SortError on mismatch or on conflicting inferences.
void check_term(const Term& t, const std::string& expected, const Signature& sig,
                VarSorts& var_sorts);

// Denotational evaluation under a structure and a variable environment.
// Throws EvalError on unbound variables and table misses.
Value eval(const Term& t, const Structure& str, const Env& env);

// Variables occurring anywhere in the term.
void term_vars(const Term& t, std::set<std::string>& out);

// Variables at structural positions (reachable through tuple nesting only);
// these are the positions pattern matching can bind.
void bindable_vars(const Term& t, std::set<std::string>& out);

bool is_ground(const Term& t, const Env& env);

// A check postponed until the environment is total: `term`, once ground,
// must evaluate to `expected`.
struct Residual {
  Term term;
  Value expected;
};

// Structural matcher: walks the pattern, binding variables and comparing
// literals/constants; function applications and non-ground set builders
// become residual checks (evaluated immediately when already ground).
// Returns the extended environment, or nullopt on a definite mismatch.
std::optional<Env> match_structural(const Term& pattern, const Value& v, Env env,
                                    const Structure& str, std::vector<Residual>& residuals);

// All minimal extensions of env under which pattern evaluates to v, or the
// `deferred` sentinel when the pattern cannot be decided structurally yet
// (a function application or set builder with unbound variables).
struct MatchResult {
  bool deferred = false;
  std::vector<Env> envs;
};

MatchResult match_term(const Term& pattern, const Value& v, const Env& env,
                       const Structure& str);

}  // namespace heraklit
