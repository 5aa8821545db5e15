#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/fixtures.hpp"
#include "support/gen.hpp"

using namespace heraklit;
using heraklit::test::load_fixture;
using heraklit::test::module_from;
using heraklit::test::Rng;

namespace {

Value sym(const char* s) { return Value::symbol(s); }

// Restaurant model plus the declarations the signature examples need.
const char* kExtendedRestaurant = R"(
module restaurant_ext;

sort Client = {alice};
sort Dish = {fish, meat, rice};
powerset sort DishSet = Dish;
sort Order = Table * DishSet;
sort Seat = Client * Table;
sort Table = {1};

const menu_all : DishSet = {fish, meat, rice};

fn and(bool, bool) -> bool = builtin and;
fn best(Dish) -> int = table { (fish) -> 3; (meat) -> 2; (rice) -> 1; };
fn not_empty(DishSet) -> bool = builtin not_empty;
fn subset(DishSet, DishSet) -> bool = builtin subset;
fn union(DishSet, DishSet) -> DishSet = builtin union;

pred static cheap(Dish) = {(rice)};

place free : Table;
place menu : DishSet;
place orders : Order;
place pending : Seat;
place ready : Seat;
place waiting : Client;

transition enter {
  consume free : xt;
  consume waiting : xc;
  produce ready : (xc, xt);
}

transition select {
  consume ready : (xc, xt);
  read menu : m;
  produce orders : (xt, d);
  produce pending : (xc, xt);
  var d : DishSet;
  guard and(subset(d, m), not_empty(d));
}

marking {
  free: {1};
  menu: {{fish, meat, rice}};
  waiting: {alice};
}
)";

}  // namespace

TEST_CASE("wf_check accepts the restaurant structure") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  CHECK(wf_check(mod.net.signature, mod.net.structure).empty());
}

TEST_CASE("wf_check flags an uninterpreted function") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  mod.net.structure.function_defs.erase("subset");
  auto diags = wf_check(mod.net.signature, mod.net.structure);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("subset") != std::string::npos);
  CHECK(diags[0].find("uninterpreted symbol") != std::string::npos);
}

TEST_CASE("wf_check flags a constant outside its carrier") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  mod.net.structure.constant_values.at("menu_all") = sym("alice");
  auto diags = wf_check(mod.net.signature, mod.net.structure);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("menu_all") != std::string::npos);
  CHECK(diags[0].find("sort violation") != std::string::npos);
}

TEST_CASE("wf_check flags a partial table over a finite carrier") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  mod.net.structure.function_defs.at("best").table.erase({sym("rice")});
  auto diags = wf_check(mod.net.signature, mod.net.structure);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("partial table") != std::string::npos);
}

TEST_CASE("sort_check infers variable, application and error cases") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  const Signature& sig = mod.net.signature;

  VarSorts vs{{"d", "DishSet"}};
  CHECK(sort_check(Term::var("d"), sig, vs) == "DishSet");
  CHECK(sort_check(Term::app("union", {Term::var("d"), Term::constant("menu_all")}), sig, vs) ==
        "DishSet");
  CHECK(sort_check(Term::app("cheap", {Term::literal(sym("rice"))}), sig, vs) == "bool");
  CHECK(sort_check(Term::literal(Value::integer(3)), sig, vs) == "int");
  CHECK(sort_check(Term::tuple({Term::literal(sym("alice")), Term::literal(Value::integer(1))}),
                   sig, vs) == "Seat");

  CHECK_THROWS_WITH_AS(
      sort_check(Term::app("union", {Term::literal(Value::integer(1)), Term::var("d")}), sig, vs),
      doctest::Contains("argument sort mismatch"), SortError);
  CHECK_THROWS_WITH_AS(sort_check(Term::var("zz"), sig, vs), doctest::Contains("unbound"),
                       SortError);
  CHECK_THROWS_WITH_AS(sort_check(Term::app("nosuch", {}), sig, vs),
                       doctest::Contains("unknown symbol"), SortError);
  CHECK_THROWS_WITH_AS(sort_check(Term::app("union", {Term::var("d")}), sig, vs),
                       doctest::Contains("arity mismatch"), SortError);
}

TEST_CASE("eval covers variables, sets, applications and tables") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  const Structure& str = mod.net.structure;

  Value chosen = Value::set({sym("rice"), sym("meat")});
  Value menu = Value::set({sym("rice"), sym("meat"), sym("fish")});

  Env env{{"d", chosen}, {"m", menu}};
  CHECK(eval(Term::var("d"), str, env) == chosen);

  // Duplicate elements in a set builder collapse.
  CHECK(eval(Term::set({Term::literal(sym("rice")), Term::literal(sym("rice"))}), str, {}) ==
        Value::set({sym("rice")}));

  CHECK(eval(Term::app("subset", {Term::var("d"), Term::var("m")}), str, env) ==
        Value::boolean(true));

  // Brute-force subset oracle over every pair of subsets of the menu.
  auto subsets = enumerate_carrier(mod.net.signature, "DishSet");
  for (const auto& a : subsets)
    for (const auto& b : subsets) {
      bool expect = true;
      for (const auto& e : a.items()) {
        bool found = false;
        for (const auto& f : b.items())
          if (e == f) found = true;
        if (!found) expect = false;
      }
      Env e2{{"d", a}, {"m", b}};
      CHECK(eval(Term::app("subset", {Term::var("d"), Term::var("m")}), str, e2) ==
            Value::boolean(expect));
    }

  CHECK(eval(Term::app("best", {Term::literal(sym("meat"))}), str, {}) == Value::integer(2));
  CHECK(eval(Term::constant("menu_all"), str, {}) == menu);
  CHECK(eval(Term::app("cheap", {Term::literal(sym("rice"))}), str, {}) == Value::boolean(true));
  CHECK(eval(Term::app("cheap", {Term::literal(sym("meat"))}), str, {}) == Value::boolean(false));

  CHECK_THROWS_WITH_AS(eval(Term::var("nope"), str, env), doctest::Contains("unbound variable"),
                       EvalError);
}

TEST_CASE("eval reports table misses on under-specified structures") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  mod.net.structure.function_defs.at("best").table.erase({sym("rice")});
  CHECK_THROWS_WITH_AS(eval(Term::app("best", {Term::literal(sym("rice"))}),
                            mod.net.structure, {}),
                       doctest::Contains("table miss"), EvalError);
}

TEST_CASE("match_term binds tuple components") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  Term pattern = Term::tuple({Term::var("xc"), Term::var("xt")});
  Value item = Value::tuple({sym("alice"), Value::integer(1)});
  auto result = match_term(pattern, item, {}, mod.net.structure);
  CHECK_FALSE(result.deferred);
  REQUIRE(result.envs.size() == 1);
  CHECK(result.envs[0] == Env{{"xc", sym("alice")}, {"xt", Value::integer(1)}});
}

TEST_CASE("match_term respects existing bindings") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  auto result = match_term(Term::var("x"), Value::integer(5), {{"x", Value::integer(6)}},
                           mod.net.structure);
  CHECK_FALSE(result.deferred);
  CHECK(result.envs.empty());
}

TEST_CASE("match_term defers non-invertible applications") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  Term pattern = Term::app("union", {Term::var("a"), Term::var("b")});
  auto result = match_term(pattern, Value::set({sym("rice")}), {}, mod.net.structure);
  CHECK(result.deferred);
  CHECK(result.envs.empty());

  // A ground application is decided by evaluation instead.
  Term ground = Term::app("union", {Term::literal(Value::set({sym("rice")})),
                                    Term::literal(Value::set({}))});
  auto decided = match_term(ground, Value::set({sym("rice")}), {}, mod.net.structure);
  CHECK_FALSE(decided.deferred);
  CHECK(decided.envs.size() == 1);
}

TEST_CASE("match soundness: every returned extension evaluates back to the value") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  const Signature& sig = mod.net.signature;
  Rng rng(4242);

  auto carrier_seat = enumerate_carrier(sig, "Seat");
  auto carrier_dish = enumerate_carrier(sig, "Dish");
  std::vector<Term> patterns = {
      Term::var("x"),
      Term::tuple({Term::var("a"), Term::var("b")}),
      Term::tuple({Term::literal(sym("alice")), Term::var("b")}),
      Term::literal(sym("rice")),
  };
  for (int i = 0; i < 300; ++i) {
    const Term& p = rng.pick(patterns);
    Value v = rng.chance(50) ? rng.pick(carrier_seat) : rng.pick(carrier_dish);
    auto result = match_term(p, v, {}, mod.net.structure);
    for (const auto& env : result.envs)
      CHECK(eval(p, mod.net.structure, env) == v);
  }
}

TEST_CASE("match completeness on structural patterns over finite carriers") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  const Signature& sig = mod.net.signature;

  // pattern (xc, xt) over Seat: every total assignment with eval == v must
  // be found by matching.
  Term p = Term::tuple({Term::var("xc"), Term::var("xt")});
  auto clients = enumerate_carrier(sig, "Client");
  auto tables = enumerate_carrier(sig, "Table");
  auto seats = enumerate_carrier(sig, "Seat");
  for (const auto& v : seats) {
    auto result = match_term(p, v, {}, mod.net.structure);
    REQUIRE_FALSE(result.deferred);
    std::size_t expected = 0;
    for (const auto& c : clients)
      for (const auto& t : tables) {
        Env env{{"xc", c}, {"xt", t}};
        if (eval(p, mod.net.structure, env) == v) {
          ++expected;
          CHECK(std::find(result.envs.begin(), result.envs.end(), env) != result.envs.end());
        }
      }
    CHECK(result.envs.size() == expected);
  }
}

TEST_CASE("eval result lies in the carrier of the inferred sort") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  const Signature& sig = mod.net.signature;
  Value menu = Value::set({sym("rice"), sym("meat"), sym("fish")});
  Env env{{"d", Value::set({sym("rice")})}, {"m", menu}};
  VarSorts vs{{"d", "DishSet"}, {"m", "DishSet"}};

  std::vector<Term> terms = {
      Term::var("d"),
      Term::constant("menu_all"),
      Term::app("union", {Term::var("d"), Term::var("m")}),
      Term::app("best", {Term::literal(sym("fish"))}),
      Term::app("subset", {Term::var("d"), Term::var("m")}),
      Term::tuple({Term::literal(sym("alice")), Term::literal(Value::integer(1))}),
      Term::literal(sym("rice")),
  };
  for (const auto& t : terms) {
    std::string sort = sort_check(t, sig, vs);
    CHECK(carrier_contains(sig, sort, eval(t, mod.net.structure, env)));
  }
}

TEST_CASE("carrier enumeration and finiteness") {
  ModuleNet mod = module_from(kExtendedRestaurant);
  const Signature& sig = mod.net.signature;

  auto subsets = enumerate_carrier(sig, "DishSet");
  CHECK(subsets.size() == 8);  // powerset of a 3-dish menu
  CHECK(std::is_sorted(subsets.begin(), subsets.end(),
                       [](const Value& a, const Value& b) { return a < b; }));
  CHECK(enumerate_carrier(sig, "Seat").size() == 1);
  CHECK(enumerate_carrier(sig, "Order").size() == 8);
  CHECK(enumerate_carrier(sig, "bool").size() == 2);

  CHECK(carrier_finite(sig, "DishSet"));
  CHECK_FALSE(carrier_finite(sig, "int"));
  CHECK_THROWS_WITH_AS(enumerate_carrier(sig, "int"), doctest::Contains("integer carrier"),
                       EvalError);

  CHECK(carrier_contains(sig, "Order", Value::tuple({Value::integer(1),
                                                     Value::set({sym("rice")})})));
  CHECK_FALSE(carrier_contains(sig, "Order", Value::tuple({Value::integer(2),
                                                           Value::set({sym("rice")})})));
}

TEST_CASE("signature diagnostics catch duplicate symbols and cycles") {
  Signature sig;
  sig.sorts.emplace("S", SortDef::explicit_set({sym("a")}));
  sig.constants.emplace("S", "S");  // collides with the sort name
  auto diags = signature_diagnostics(sig);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("more than one category") != std::string::npos);

  Signature cyc;
  cyc.sorts.emplace("A", SortDef::powerset("A"));
  auto cdiags = signature_diagnostics(cyc);
  CHECK(std::any_of(cdiags.begin(), cdiags.end(), [](const std::string& d) {
    return d.find("cyclic") != std::string::npos;
  }));
}
