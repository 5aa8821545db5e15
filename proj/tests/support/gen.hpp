#pragma once

// Seeded random model generators for property tests: values, well-formed
// nets (finite carriers, oracle-enumerable variable counts), full modules,
// and composable module triples.

#include <random>
#include <string>
#include <vector>

#include "heraklit/module.hpp"
#include "heraklit/printer.hpp"

namespace heraklit::test {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
  }
  std::size_t range(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng);
  }
  bool chance(int percent) { return static_cast<int>(below(100)) < percent; }
  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }
};

inline Value random_value(Rng& rng, int depth = 0) {
  static const std::vector<std::string> syms = {"apple", "bread", "corn", "dill", "egg"};
  std::size_t variants = depth >= 2 ? 3 : 5;
  switch (rng.below(variants)) {
    case 0: return Value::symbol(rng.pick(syms));
    case 1: return Value::integer(static_cast<std::int64_t>(rng.below(21)) - 10);
    case 2: return Value::boolean(rng.chance(50));
    case 3: {
      std::vector<Value> items;
      for (std::size_t i = rng.range(0, 3); i > 0; --i)
        items.push_back(random_value(rng, depth + 1));
      return Value::tuple(std::move(items));
    }
    default: {
      std::vector<Value> items;
      for (std::size_t i = rng.range(0, 3); i > 0; --i)
        items.push_back(random_value(rng, depth + 1));
      return Value::set(std::move(items));
    }
  }
}

// ---------------------------------------------------------------------------
// Random nets: <= 5 places, carriers <= 6, <= 4 transitions, every variable
// over a finite carrier so the all-assignments oracle stays cheap.
// ---------------------------------------------------------------------------

class NetGen {
public:
  NetGen(Rng& rng, bool with_interfaces) : rng_(rng), with_interfaces_(with_interfaces) {}

  ModuleNet generate() {
    ModuleNet mod;
    if (rng_.chance(70)) mod.name = "gen" + std::to_string(rng_.below(1000));
    Net& net = mod.net;
    make_sorts(net);
    make_functions(net);
    make_places(net);
    for (std::size_t i = 0, n = rng_.range(1, 4); i < n; ++i) make_transition(net, i);
    make_marking(net);
    if (with_interfaces_) make_interfaces(mod);
    auto issues = check_module(mod);
    if (!issues.empty())
      throw std::logic_error("generator produced an invalid net: " + issues.front().message);
    return mod;
  }

private:
  void make_sorts(Net& net) {
    Signature& sig = net.signature;
    std::size_t na = rng_.range(2, 3);
    std::vector<Value> as;
    for (std::size_t i = 0; i < na; ++i) as.push_back(Value::symbol("wa" + std::to_string(i)));
    sig.sorts.emplace("Wa", SortDef::explicit_set(as));
    sorts_.push_back("Wa");

    bool ints = rng_.chance(40);
    std::vector<Value> bs;
    for (std::size_t i = 0; i < 2; ++i)
      bs.push_back(ints ? Value::integer(static_cast<std::int64_t>(i))
                        : Value::symbol("wb" + std::to_string(i)));
    sig.sorts.emplace("Wb", SortDef::explicit_set(bs));
    sorts_.push_back("Wb");

    if (rng_.chance(50)) {
      sig.sorts.emplace("Pp", SortDef::product({"Wa", "Wb"}));
      sorts_.push_back("Pp");
    }
    if (na == 2 && rng_.chance(50)) {
      sig.sorts.emplace("Qq", SortDef::powerset("Wa"));
      sorts_.push_back("Qq");
    }
  }

  void make_functions(Net& net) {
    if (rng_.chance(70)) {
      net.signature.functions.emplace("feq", FunctionDecl{{"Wa", "Wa"}, "bool"});
      net.structure.function_defs.emplace("feq", FnDef::from_builtin(*builtin_by_name("eq")));
      has_feq_ = true;
    }
    if (rng_.chance(60)) {
      net.signature.functions.emplace("ftab", FunctionDecl{{"Wa"}, "Wa"});
      std::map<std::vector<Value>, Value> table;
      auto dom = enumerate_carrier(net.signature, "Wa");
      for (const auto& v : dom) table.emplace(std::vector<Value>{v}, rng_.pick(dom));
      net.structure.function_defs.emplace("ftab", FnDef::from_table(std::move(table)));
      has_ftab_ = true;
    }
    if (rng_.chance(40)) {
      net.signature.static_predicates.emplace("prel", std::vector<std::string>{"Wa"});
      std::set<std::vector<Value>> tuples;
      for (const auto& v : enumerate_carrier(net.signature, "Wa"))
        if (rng_.chance(50)) tuples.insert({v});
      net.structure.static_relations.emplace("prel", RelDef::from_tuples(std::move(tuples)));
      has_prel_ = true;
    }
    if (rng_.chance(30)) {
      net.signature.constants.emplace("kc", "Wa");
      net.structure.constant_values.emplace(
          "kc", rng_.pick(enumerate_carrier(net.signature, "Wa")));
      has_const_ = true;
    }
  }

  void make_places(Net& net) {
    std::size_t n = rng_.range(1, 5);
    for (std::size_t i = 0; i < n; ++i) {
      std::string name = "p" + std::to_string(i);
      net.places.emplace(name, Place{name, rng_.pick(sorts_)});
      places_.push_back(name);
    }
  }

  const std::string& place_sort(const Net& net, const std::string& p) {
    return net.places.at(p).item_sort;
  }

  // Patterns for consume/read arcs: variables, tuple destructuring,
  // literals, and the occasional function application over a free variable.
  Term make_pattern(Net& net, const std::string& sort,
                    std::map<std::string, std::string>& bound, std::size_t& budget,
                    const std::map<std::string, std::string>& free_vars, int depth) {
    const SortDef& def = net.signature.sorts.at(sort);
    if (depth < 2 && def.kind == SortDef::Kind::Product && rng_.chance(60)) {
      std::vector<Term> comps;
      for (const auto& c : def.components)
        comps.push_back(make_pattern(net, c, bound, budget, free_vars, depth + 1));
      return Term::tuple(std::move(comps));
    }
    if (rng_.chance(15))
      return Term::literal(rng_.pick(enumerate_carrier(net.signature, sort)));
    if (has_ftab_ && sort == "Wa" && rng_.chance(10)) {
      for (const auto& [v, s] : free_vars)
        if (s == "Wa") return Term::app("ftab", {Term::var(v)});
    }
    // Reuse a variable of this sort, or bind a fresh one.
    std::vector<std::string> same_sort;
    for (const auto& [v, s] : bound)
      if (s == sort) same_sort.push_back(v);
    std::size_t carrier = enumerate_carrier(net.signature, sort).size();
    if (!same_sort.empty() && (rng_.chance(25) || budget / std::max<std::size_t>(carrier, 1) < 1))
      return Term::var(rng_.pick(same_sort));
    std::string fresh = "v" + std::to_string(bound.size() + free_vars.size());
    bound.emplace(fresh, sort);
    budget /= std::max<std::size_t>(carrier, 1);
    return Term::var(fresh);
  }

  Term make_produce_term(Net& net, const std::string& sort,
                         const std::map<std::string, std::string>& vars, int depth) {
    const SortDef& def = net.signature.sorts.at(sort);
    std::vector<std::string> same_sort;
    for (const auto& [v, s] : vars)
      if (s == sort) same_sort.push_back(v);
    if (!same_sort.empty() && rng_.chance(60)) return Term::var(rng_.pick(same_sort));
    if (depth < 2 && def.kind == SortDef::Kind::Product && rng_.chance(70)) {
      std::vector<Term> comps;
      for (const auto& c : def.components)
        comps.push_back(make_produce_term(net, c, vars, depth + 1));
      return Term::tuple(std::move(comps));
    }
    if (depth < 2 && def.kind == SortDef::Kind::Powerset && rng_.chance(40)) {
      std::vector<Term> elems;
      for (std::size_t i = rng_.range(1, 2); i > 0; --i)
        elems.push_back(make_produce_term(net, def.base, vars, depth + 1));
      return Term::set(std::move(elems));
    }
    if (has_ftab_ && sort == "Wa" && !same_sort.empty() && rng_.chance(30))
      return Term::app("ftab", {Term::var(rng_.pick(same_sort))});
    if (has_const_ && sort == "Wa" && rng_.chance(20)) return Term::constant("kc");
    return Term::literal(rng_.pick(enumerate_carrier(net.signature, sort)));
  }

  void make_transition(Net& net, std::size_t index) {
    Transition t;
    t.name = "t" + std::to_string(index);

    std::map<std::string, std::string> free_vars;
    if (rng_.chance(40)) {
      std::vector<std::string> finite;
      for (const auto& s : sorts_)
        if (carrier_finite(net.signature, s) &&
            enumerate_carrier(net.signature, s).size() <= 6)
          finite.push_back(s);
      free_vars.emplace("f" + std::to_string(index), rng_.pick(finite));
    }
    t.free_vars = free_vars;

    std::map<std::string, std::string> bound = free_vars;
    std::size_t budget = 2000;  // cap on the oracle's assignment product
    std::size_t n_consume = rng_.range(0, 2);
    std::size_t n_read = rng_.range(0, 1);
    for (std::size_t i = 0; i < n_consume + n_read; ++i) {
      const std::string& p = rng_.pick(places_);
      Term pat = make_pattern(net, place_sort(net, p), bound, budget, free_vars, 0);
      t.arcs.push_back({p, i < n_consume ? ArcMode::Consume : ArcMode::Read, pat});
    }

    for (std::size_t i = 0, n = rng_.range(1, 2); i < n; ++i) {
      const std::string& p = rng_.pick(places_);
      t.arcs.push_back(
          {p, ArcMode::Produce, make_produce_term(net, place_sort(net, p), bound, 0)});
    }

    std::vector<std::string> wa_vars;
    for (const auto& [v, s] : bound)
      if (s == "Wa") wa_vars.push_back(v);
    if (!wa_vars.empty() && rng_.chance(50)) {
      if (has_feq_ && wa_vars.size() >= 2 && rng_.chance(40)) {
        t.guard = Term::app("feq", {Term::var(wa_vars[0]), Term::var(wa_vars[1])});
      } else if (has_prel_ && rng_.chance(50)) {
        t.guard = Term::app("prel", {Term::var(rng_.pick(wa_vars))});
      } else if (has_feq_) {
        t.guard = Term::app(
            "feq", {Term::var(rng_.pick(wa_vars)),
                    Term::literal(rng_.pick(enumerate_carrier(net.signature, "Wa")))});
      }
    }

    net.transitions.emplace(t.name, std::move(t));
  }

  void make_marking(Net& net) {
    for (const auto& p : places_) {
      net.initial_marking.ensure_place(p);
      auto carrier = enumerate_carrier(net.signature, place_sort(net, p));
      for (const auto& v : carrier)
        if (rng_.chance(40) && net.initial_marking.items(p).size() < 3)
          net.initial_marking.add(p, v);
    }
  }

  void make_interfaces(ModuleNet& mod) {
    for (const auto& p : places_) {
      if (rng_.chance(20))
        mod.left_interface.push_back(p);
      else if (rng_.chance(20))
        mod.right_interface.push_back(p);
    }
  }

  Rng& rng_;
  bool with_interfaces_;
  std::vector<std::string> sorts_;
  std::vector<std::string> places_;
  bool has_feq_ = false, has_ftab_ = false, has_prel_ = false, has_const_ = false;
};

inline Net random_net(Rng& rng) { return NetGen(rng, false).generate().net; }
inline ModuleNet random_module(Rng& rng) { return NetGen(rng, true).generate(); }

// ---------------------------------------------------------------------------
// Composable module triples for the associativity property: a/b/c share one
// signature; fusion labels l1 (a.right~b.left), l2 (b.right~c.left) and
// l3 (a.right~c.left) are wired so both association orders fuse the same
// pairs.
// ---------------------------------------------------------------------------

struct ModuleTriple {
  ModuleNet a, b, c;
};

inline ModuleTriple compatible_triple(Rng& rng) {
  Signature common;
  std::vector<Value> as = {Value::symbol("wa0"), Value::symbol("wa1")};
  common.sorts.emplace("Wa", SortDef::explicit_set(as));

  bool l1 = rng.chance(80), l2 = rng.chance(80), l3 = rng.chance(50);
  if (!l1 && !l2 && !l3) l1 = true;

  auto build = [&](const std::string& name, std::vector<std::string> lefts,
                   std::vector<std::string> rights) {
    ModuleNet mod;
    mod.name = name;
    mod.net.signature = common;
    std::vector<std::string> places = {name + "_in"};
    for (const auto& l : lefts) places.push_back(l);
    for (const auto& r : rights) places.push_back(r);
    if (rng.chance(50)) places.push_back(name + "_buf");
    for (const auto& p : places) mod.net.places.emplace(p, Place{p, "Wa"});

    for (std::size_t i = 0, n = rng.range(1, 2); i < n; ++i) {
      Transition t;
      t.name = name + "_t" + std::to_string(i);
      const std::string& src = places[rng.below(places.size())];
      const std::string& dst = places[rng.below(places.size())];
      t.arcs.push_back({src, ArcMode::Consume, Term::var("x")});
      t.arcs.push_back({dst, ArcMode::Produce, Term::var("x")});
      mod.net.transitions.emplace(t.name, std::move(t));
    }
    for (const auto& p : places)
      if (rng.chance(50)) mod.net.initial_marking.add(p, rng.chance(50) ? as[0] : as[1]);

    mod.left_interface = std::move(lefts);
    mod.right_interface = std::move(rights);
    auto issues = check_module(mod);
    if (!issues.empty())
      throw std::logic_error("triple generator produced an invalid module: " +
                             issues.front().message);
    return mod;
  };

  ModuleTriple out;
  std::vector<std::string> a_right, b_left, b_right, c_left;
  if (l1) {
    a_right.push_back("l1");
    b_left.push_back("l1");
  }
  if (l2) {
    b_right.push_back("l2");
    c_left.push_back("l2");
  }
  if (l3) {
    a_right.push_back("l3");
    c_left.push_back("l3");
  }
  if (rng.chance(30)) a_right.push_back("ar");
  if (rng.chance(30)) b_right.push_back("br");
  if (rng.chance(30)) c_left.push_back("cl");

  out.a = build("a", {}, a_right);
  out.b = build("b", b_left, b_right);
  out.c = build("c", c_left, {});
  return out;
}

}  // namespace heraklit::test
