#include "heraklit/net.hpp"

#include <algorithm>
#include <sstream>

namespace heraklit {

const char* arc_mode_name(ArcMode m) {
  switch (m) {
    case ArcMode::Consume: return "consume";
    case ArcMode::Read: return "read";
    case ArcMode::Produce: return "produce";
  }
  return "?";
}

const std::vector<Value>& Marking::items(const std::string& p) const {
  auto it = ext_.find(p);
  if (it == ext_.end()) throw std::out_of_range("marking has no place '" + p + "'");
  return it->second;
}

bool Marking::contains(const std::string& p, const Value& v) const {
  auto it = ext_.find(p);
  if (it == ext_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), v,
                            [](const Value& a, const Value& b) { return a < b; });
}

bool Marking::add(const std::string& p, const Value& v) {
  auto& items = ext_[p];
  auto pos = std::lower_bound(items.begin(), items.end(), v,
                              [](const Value& a, const Value& b) { return a < b; });
  if (pos != items.end() && *pos == v) return false;
  items.insert(pos, v);
  return true;
}

bool Marking::remove(const std::string& p, const Value& v) {
  auto it = ext_.find(p);
  if (it == ext_.end()) return false;
  auto& items = it->second;
  auto pos = std::lower_bound(items.begin(), items.end(), v,
                              [](const Value& a, const Value& b) { return a < b; });
  if (pos == items.end() || !(*pos == v)) return false;
  items.erase(pos);
  return true;
}

std::size_t Marking::total_items() const {
  std::size_t n = 0;
  for (const auto& [_, items] : ext_) n += items.size();
  return n;
}

std::string Marking::text() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [place, items] : ext_) {
    if (items.empty()) continue;
    if (!first) out << ", ";
    first = false;
    out << place << ": {";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out << ", ";
      out << canonical_text(items[i]);
    }
    out << '}';
  }
  out << '}';
  return out.str();
}

std::string occurrence_text(const ModeOccurrence& occ) {
  return occ.transition + env_text(occ.binding);
}

namespace {

int mode_rank(ArcMode m) {
  switch (m) {
    case ArcMode::Consume: return 0;
    case ArcMode::Read: return 1;
    case ArcMode::Produce: return 2;
  }
  return 3;
}

bool arc_less(const Arc& a, const Arc& b) {
  if (mode_rank(a.mode) != mode_rank(b.mode)) return mode_rank(a.mode) < mode_rank(b.mode);
  if (a.place != b.place) return a.place < b.place;
  return term_text(a.inscription) < term_text(b.inscription);
}

// Records variable sorts at structural (tuple-nested) positions; the only
// positions pattern matching can bind.
void infer_structural(const Term& t, const std::string& expected, const Signature& sig,
                      VarSorts& var_sorts, const std::string& subject,
                      std::vector<NetIssue>& issues) {
  if (t.kind == Term::Kind::Var) {
    auto it = var_sorts.find(t.name);
    if (it == var_sorts.end()) {
      var_sorts.emplace(t.name, expected);
    } else if (it->second != expected) {
      issues.push_back({subject, "variable '" + t.name + "' used at sort '" + expected +
                                     "' but already has sort '" + it->second + "'"});
    }
    return;
  }
  if (t.kind == Term::Kind::Tuple) {
    auto sit = sig.sorts.find(expected);
    if (sit == sig.sorts.end() || sit->second.kind != SortDef::Kind::Product) return;
    const auto& comps = sit->second.components;
    if (comps.size() != t.args.size()) return;
    for (std::size_t i = 0; i < t.args.size(); ++i)
      infer_structural(t.args[i], comps[i], sig, var_sorts, subject, issues);
  }
}

}  // namespace

std::vector<NetIssue> finalize_net(Net& net) {
  std::vector<NetIssue> issues;

  net.signature.dynamic_predicates.clear();
  for (const auto& [name, place] : net.places)
    net.signature.dynamic_predicates.emplace(name, place.item_sort);

  for (const auto& d : wf_check(net.signature, net.structure)) issues.push_back({"", d});

  for (auto& [name, place] : net.places) {
    place.name = name;
    if (!net.signature.has_sort(place.item_sort))
      issues.push_back({name, "place item sort '" + place.item_sort + "' not declared"});
  }

  for (auto& [tname, t] : net.transitions) {
    t.name = tname;
    for (auto& arc : t.arcs) arc.inscription = normalize_term(arc.inscription);
    t.guard = normalize_term(t.guard);
    std::sort(t.arcs.begin(), t.arcs.end(), arc_less);

    t.var_sorts.clear();
    for (const auto& [v, sort] : t.free_vars) {
      if (!net.signature.has_sort(sort)) {
        issues.push_back({tname, "free variable '" + v + "' has undeclared sort '" + sort + "'"});
        continue;
      }
      if (!carrier_finite(net.signature, sort))
        issues.push_back({tname, "free variable '" + v + "' ranges over the infinite carrier '" +
                                     sort + "'"});
      t.var_sorts.emplace(v, sort);
    }

    bool arcs_ok = true;
    for (const auto& arc : t.arcs) {
      auto pit = net.places.find(arc.place);
      if (pit == net.places.end()) {
        issues.push_back({tname, "arc references undeclared place '" + arc.place + "'"});
        arcs_ok = false;
        continue;
      }
      if (arc.mode != ArcMode::Produce)
        infer_structural(arc.inscription, pit->second.item_sort, net.signature, t.var_sorts,
                         tname, issues);
    }
    if (!arcs_ok) continue;

    std::set<std::string> vars;
    for (const auto& arc : t.arcs) term_vars(arc.inscription, vars);
    term_vars(t.guard, vars);
    bool vars_ok = true;
    for (const auto& v : vars)
      if (!t.var_sorts.count(v)) {
        issues.push_back({tname, "unbound variable '" + v +
                                     "' (not bound by consume/read matching nor declared)"});
        vars_ok = false;
      }
    if (!vars_ok) continue;

    for (const auto& arc : t.arcs) {
      VarSorts vs = t.var_sorts;
      try {
        check_term(arc.inscription, net.places.at(arc.place).item_sort, net.signature, vs);
      } catch (const SortError& e) {
        issues.push_back({tname, std::string(arc_mode_name(arc.mode)) + " arc on '" + arc.place +
                                     "': " + e.what()});
      }
    }
    VarSorts vs = t.var_sorts;
    try {
      check_term(t.guard, "bool", net.signature, vs);
    } catch (const SortError& e) {
      issues.push_back({tname, std::string("guard: ") + e.what()});
    }
  }

  for (const auto& [name, _] : net.places) net.initial_marking.ensure_place(name);
  for (const auto& [place, items] : net.initial_marking.extension()) {
    auto pit = net.places.find(place);
    if (pit == net.places.end()) {
      issues.push_back(
          {place, "initial marking mentions undeclared place '" + place + "'", true});
      continue;
    }
    for (const auto& v : items)
      if (net.signature.has_sort(pit->second.item_sort) &&
          !carrier_contains(net.signature, pit->second.item_sort, v))
        issues.push_back({place, "initial item " + canonical_text(v) +
                                     " is outside the carrier of '" + pit->second.item_sort +
                                     "'",
                          true});
  }

  return issues;
}

OccurrenceEffect occurrence_effect(const Net& net, const ModeOccurrence& occ) {
  auto tit = net.transitions.find(occ.transition);
  if (tit == net.transitions.end())
    throw NotEnabledError("unknown transition '" + occ.transition + "'");
  OccurrenceEffect eff;
  for (const auto& arc : tit->second.arcs) {
    Value item = eval(arc.inscription, net.structure, occ.binding);
    switch (arc.mode) {
      case ArcMode::Consume: eff.consumed[arc.place].push_back(std::move(item)); break;
      case ArcMode::Read: eff.read[arc.place].push_back(std::move(item)); break;
      case ArcMode::Produce: eff.produced[arc.place].push_back(std::move(item)); break;
    }
  }
  return eff;
}

namespace {

bool pairwise_distinct(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  return std::adjacent_find(items.begin(), items.end(), [](const Value& a, const Value& b) {
           return a == b;
         }) == items.end();
}

bool effect_enabled(const Net& net, const Marking& m, const Transition& t,
                    const ModeOccurrence& occ, const OccurrenceEffect& eff) {
  // Guard first; it depends only on the binding.
  Value g = eval(t.guard, net.structure, occ.binding);
  if (!g.is_bool()) throw EvalError("transition '" + t.name + "': guard is not boolean");
  if (!g.bool_value()) return false;

  std::set<std::string> input_places;
  for (const auto& [p, _] : eff.consumed) input_places.insert(p);
  for (const auto& [p, _] : eff.read) input_places.insert(p);
  for (const auto& p : input_places) {
    std::vector<Value> touched;
    if (auto it = eff.consumed.find(p); it != eff.consumed.end())
      touched.insert(touched.end(), it->second.begin(), it->second.end());
    if (auto it = eff.read.find(p); it != eff.read.end())
      touched.insert(touched.end(), it->second.begin(), it->second.end());
    if (!pairwise_distinct(touched)) return false;
    if (!m.has_place(p)) return false;
    for (const auto& v : touched)
      if (!m.contains(p, v)) return false;
  }

  if (!net.idempotent_produce) {
    for (const auto& [p, items] : eff.produced) {
      const std::vector<Value>* consumed_here = nullptr;
      if (auto it = eff.consumed.find(p); it != eff.consumed.end()) consumed_here = &it->second;
      for (const auto& v : items) {
        bool present = m.contains(p, v);
        bool consumed = consumed_here && std::find(consumed_here->begin(), consumed_here->end(),
                                                   v) != consumed_here->end();
        if (present && !consumed) return false;
      }
    }
  }
  return true;
}

Marking apply_effect(const Marking& m, const OccurrenceEffect& eff) {
  Marking out = m;
  for (const auto& [p, items] : eff.consumed)
    for (const auto& v : items) out.remove(p, v);
  for (const auto& [p, items] : eff.produced)
    for (const auto& v : items) out.add(p, v);
  return out;
}

}  // namespace

std::vector<ModeOccurrence> enabled_bindings(const Net& net, const Marking& m,
                                             const Transition& t) {
  std::vector<const Arc*> input_arcs;
  std::vector<const Arc*> produce_arcs;
  for (const auto& a : t.arcs)
    (a.mode == ArcMode::Produce ? produce_arcs : input_arcs).push_back(&a);

  std::vector<std::pair<std::string, std::vector<Value>>> free_domains;
  for (const auto& [v, sort] : t.free_vars)
    free_domains.emplace_back(v, enumerate_carrier(net.signature, sort));

  std::vector<ModeOccurrence> out;
  std::map<std::string, std::vector<Value>> used;      // consume + read items per place
  std::map<std::string, std::vector<Value>> consumed;  // consume items per place
  std::vector<Residual> residuals;

  auto emit_if_enabled = [&](const Env& env) {
    for (const auto& r : residuals)
      if (eval(r.term, net.structure, env) != r.expected) return;
    Value g = eval(t.guard, net.structure, env);
    if (!g.is_bool()) throw EvalError("transition '" + t.name + "': guard is not boolean");
    if (!g.bool_value()) return;
    for (const Arc* arc : produce_arcs) {
      Value item = eval(arc->inscription, net.structure, env);
      if (net.idempotent_produce) continue;
      bool was_consumed = false;
      if (auto it = consumed.find(arc->place); it != consumed.end())
        was_consumed = std::find(it->second.begin(), it->second.end(), item) != it->second.end();
      if (m.contains(arc->place, item) && !was_consumed) return;
    }
    out.push_back({t.name, env});
  };

  auto enum_free = [&](auto&& self, std::size_t k, Env env) -> void {
    if (k == free_domains.size()) {
      emit_if_enabled(env);
      return;
    }
    // A free variable already pinned down by arc matching is not enumerated.
    if (env.count(free_domains[k].first)) {
      self(self, k + 1, std::move(env));
      return;
    }
    for (const auto& v : free_domains[k].second) {
      env[free_domains[k].first] = v;
      self(self, k + 1, env);
    }
  };

  auto match_arcs = [&](auto&& self, std::size_t i, Env env) -> void {
    if (i == input_arcs.size()) {
      enum_free(enum_free, 0, std::move(env));
      return;
    }
    const Arc* arc = input_arcs[i];
    if (!m.has_place(arc->place)) return;
    auto& used_here = used[arc->place];
    for (const Value& item : m.items(arc->place)) {
      if (std::find(used_here.begin(), used_here.end(), item) != used_here.end()) continue;
      std::size_t mark = residuals.size();
      auto next = match_structural(arc->inscription, item, env, net.structure, residuals);
      if (next) {
        used_here.push_back(item);
        if (arc->mode == ArcMode::Consume) consumed[arc->place].push_back(item);
        self(self, i + 1, std::move(*next));
        if (arc->mode == ArcMode::Consume) consumed[arc->place].pop_back();
        used_here.pop_back();
      }
      residuals.resize(mark);
    }
  };

  match_arcs(match_arcs, 0, Env{});

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ModeOccurrence> all_enabled(const Net& net, const Marking& m) {
  std::vector<ModeOccurrence> out;
  for (const auto& [_, t] : net.transitions) {
    auto occs = enabled_bindings(net, m, t);
    out.insert(out.end(), std::make_move_iterator(occs.begin()),
               std::make_move_iterator(occs.end()));
  }
  return out;
}

bool is_enabled(const Net& net, const Marking& m, const ModeOccurrence& occ) {
  auto tit = net.transitions.find(occ.transition);
  if (tit == net.transitions.end()) return false;
  const Transition& t = tit->second;
  if (occ.binding.size() != t.var_sorts.size()) return false;
  for (const auto& [v, sort] : t.var_sorts) {
    auto it = occ.binding.find(v);
    if (it == occ.binding.end()) return false;
    if (!carrier_contains(net.signature, sort, it->second)) return false;
  }
  return effect_enabled(net, m, t, occ, occurrence_effect(net, occ));
}

Marking fire(const Net& net, const Marking& m, const ModeOccurrence& occ) {
  if (!is_enabled(net, m, occ))
    throw NotEnabledError("occurrence " + occurrence_text(occ) + " is not enabled at " +
                          m.text());
  return apply_effect(m, occurrence_effect(net, occ));
}

namespace {

bool intersects(const std::vector<Value>& a, const std::vector<Value>& b) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

bool effects_conflict(const Net& net, const Marking& m, const OccurrenceEffect& ea,
                      const OccurrenceEffect& eb) {
  for (const auto& [p, items] : ea.consumed) {
    if (auto it = eb.consumed.find(p); it != eb.consumed.end() && intersects(items, it->second))
      return true;
    if (auto it = eb.read.find(p); it != eb.read.end() && intersects(items, it->second))
      return true;
  }
  for (const auto& [p, items] : eb.consumed)
    if (auto it = ea.read.find(p); it != ea.read.end() && intersects(items, it->second))
      return true;

  if (!net.idempotent_produce) {
    // Contact of one against the other's result marking.
    auto contact_bad = [&](const OccurrenceEffect& mine, const OccurrenceEffect& other) {
      Marking after_other = apply_effect(m, other);
      for (const auto& [p, items] : mine.produced) {
        const std::vector<Value>* consumed_here = nullptr;
        if (auto it = mine.consumed.find(p); it != mine.consumed.end())
          consumed_here = &it->second;
        for (const auto& v : items) {
          bool present = after_other.contains(p, v);
          bool consumed = consumed_here &&
                          std::find(consumed_here->begin(), consumed_here->end(), v) !=
                              consumed_here->end();
          if (present && !consumed) return true;
        }
      }
      return false;
    };
    if (contact_bad(ea, eb) || contact_bad(eb, ea)) return true;
  }
  return false;
}

}  // namespace

bool independent(const Net& net, const Marking& m, const ModeOccurrence& a,
                 const ModeOccurrence& b) {
  if (!is_enabled(net, m, a))
    throw NotEnabledError("occurrence " + occurrence_text(a) + " is not enabled at " + m.text());
  if (!is_enabled(net, m, b))
    throw NotEnabledError("occurrence " + occurrence_text(b) + " is not enabled at " + m.text());
  return !effects_conflict(net, m, occurrence_effect(net, a), occurrence_effect(net, b));
}

Marking concurrent_step(const Net& net, const Marking& m,
                        const std::vector<ModeOccurrence>& occs) {
  std::vector<OccurrenceEffect> effects;
  effects.reserve(occs.size());
  for (const auto& occ : occs) {
    if (!is_enabled(net, m, occ))
      throw NotEnabledError("occurrence " + occurrence_text(occ) + " is not enabled at " +
                            m.text());
    effects.push_back(occurrence_effect(net, occ));
  }
  for (std::size_t i = 0; i < occs.size(); ++i)
    for (std::size_t j = i + 1; j < occs.size(); ++j)
      if (effects_conflict(net, m, effects[i], effects[j]))
        throw DependentError("dependent occurrences " + occurrence_text(occs[i]) + " and " +
                             occurrence_text(occs[j]));
  Marking out = m;
  for (const auto& eff : effects) out = apply_effect(out, eff);
  return out;
}

}  // namespace heraklit
