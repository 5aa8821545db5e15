#include "heraklit/runs.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace heraklit {

const char* termination_name(RunTermination t) {
  switch (t) {
    case RunTermination::Deadlock: return "deadlock";
    case RunTermination::Bound: return "bound";
    case RunTermination::UserStop: return "user-stop";
  }
  return "?";
}

std::vector<std::string> check_run(const CausalRun& run) {
  std::vector<std::string> diags;
  std::size_t nc = run.conditions.size();
  std::size_t ne = run.events.size();
  if (run.producer_of.size() != nc || run.consumer_of.size() != nc) {
    diags.push_back("producer/consumer tables do not cover all conditions");
    return diags;
  }

  for (std::size_t c = 0; c < nc; ++c) {
    if (run.producer_of[c] >= static_cast<int>(ne) || run.consumer_of[c] >= static_cast<int>(ne))
      diags.push_back("condition " + std::to_string(c) + ": event id out of range");
  }
  for (auto [c, e] : run.read_edges)
    if (c >= nc || e >= ne) diags.push_back("read edge out of range");
  for (auto c : run.initial_conditions)
    if (c >= nc) diags.push_back("initial condition out of range");

  // Initial conditions are exactly the unproduced ones.
  std::set<std::size_t> initial(run.initial_conditions.begin(), run.initial_conditions.end());
  for (std::size_t c = 0; c < nc; ++c) {
    bool produced = run.producer_of[c] >= 0;
    if (produced && initial.count(c))
      diags.push_back("condition " + std::to_string(c) + ": produced but marked initial");
    if (!produced && !initial.count(c))
      diags.push_back("condition " + std::to_string(c) + ": neither initial nor produced");
  }

  // Instance indices per (place, item) consecutive from 0.
  std::map<std::pair<std::string, Value>, std::vector<int>> instances;
  for (const auto& c : run.conditions) instances[{c.place, c.item}].push_back(c.instance);
  for (auto& [key, idxs] : instances) {
    std::sort(idxs.begin(), idxs.end());
    for (std::size_t i = 0; i < idxs.size(); ++i)
      if (idxs[i] != static_cast<int>(i)) {
        diags.push_back("instance indices for (" + key.first + ", " +
                        canonical_text(key.second) + ") are not consecutive from 0");
        break;
      }
  }

  // Acyclicity of the produce/consume event graph.
  std::vector<std::vector<std::size_t>> succ(ne);
  for (std::size_t c = 0; c < nc; ++c)
    if (run.producer_of[c] >= 0 && run.consumer_of[c] >= 0)
      succ[static_cast<std::size_t>(run.producer_of[c])].push_back(
          static_cast<std::size_t>(run.consumer_of[c]));
  std::vector<int> state(ne, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t s = 0; s < ne; ++s) {
    if (state[s]) continue;
    stack.push_back({s, 0});
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < succ[v].size()) {
        std::size_t w = succ[v][i++];
        if (state[w] == 1) {
          diags.push_back("produce/consume edges contain a cycle");
          stack.clear();
          break;
        }
        if (state[w] == 0) {
          state[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }

  return diags;
}

RunRecorder::RunRecorder(const Net& net) : net_(net), marking_(net.initial_marking) {
  for (const auto& [place, items] : marking_.extension())
    for (const auto& item : items) {
      std::size_t id = new_condition(place, item);
      run_.initial_conditions.push_back(id);
    }
}

std::size_t RunRecorder::live_condition(const std::string& place, const Value& item) const {
  auto it = live_.find({place, item});
  if (it == live_.end())
    throw std::logic_error("no live condition for (" + place + ", " + canonical_text(item) + ")");
  return it->second;
}

std::size_t RunRecorder::new_condition(const std::string& place, const Value& item) {
  int idx = instances_[{place, item}]++;
  std::size_t id = run_.conditions.size();
  run_.conditions.push_back({place, item, idx});
  run_.producer_of.push_back(-1);
  run_.consumer_of.push_back(-1);
  live_[{place, item}] = id;
  return id;
}

void RunRecorder::step(const ModeOccurrence& occ) {
  if (!is_enabled(net_, marking_, occ))
    throw NotEnabledError("occurrence " + occurrence_text(occ) + " is not enabled at " +
                          marking_.text());
  OccurrenceEffect eff = occurrence_effect(net_, occ);
  std::size_t ev = run_.events.size();
  run_.events.push_back({occ});
  trace_.push_back(occ);

  for (const auto& [place, items] : eff.read)
    for (const auto& item : items)
      run_.read_edges.emplace_back(live_condition(place, item), ev);
  for (const auto& [place, items] : eff.consumed)
    for (const auto& item : items) {
      std::size_t c = live_condition(place, item);
      run_.consumer_of[c] = static_cast<int>(ev);
      live_.erase({place, item});
      marking_.remove(place, item);
    }
  for (const auto& [place, items] : eff.produced)
    for (const auto& item : items) {
      if (marking_.contains(place, item)) continue;  // idempotent-produce collapse
      std::size_t c = new_condition(place, item);
      run_.producer_of[c] = static_cast<int>(ev);
      marking_.add(place, item);
    }
}

RecordedRun record_run(const Net& net, const Policy& policy, std::size_t max_events) {
  RunRecorder rec(net);
  std::mt19937_64 rng;
  if (auto* r = std::get_if<PolicyRandom>(&policy)) rng.seed(r->seed);

  RunTermination reason = RunTermination::Bound;
  std::size_t fired = 0;
  while (fired < max_events) {
    auto occs = all_enabled(net, rec.marking());
    if (occs.empty()) {
      reason = RunTermination::Deadlock;
      break;
    }
    std::size_t pick = 0;
    if (std::holds_alternative<PolicyRandom>(policy)) {
      pick = std::uniform_int_distribution<std::size_t>(0, occs.size() - 1)(rng);
    } else if (auto* cb = std::get_if<InteractiveCallback>(&policy)) {
      auto choice = (*cb)(rec.marking(), occs);
      if (!choice || *choice >= occs.size()) {
        reason = RunTermination::UserStop;
        break;
      }
      pick = *choice;
    }
    rec.step(occs[pick]);
    ++fired;
  }

  return {rec.trace(), rec.run(), reason, rec.marking()};
}

CausalOrder causal_order(const CausalRun& run) {
  std::size_t n = run.events.size();
  CausalOrder ord;
  ord.n = n;
  ord.less.assign(n, std::vector<bool>(n, false));

  auto add = [&](int a, int b) {
    if (a >= 0 && b >= 0 && a != b) ord.less[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
  };
  std::vector<std::vector<std::size_t>> readers(run.conditions.size());
  for (auto [c, e] : run.read_edges) readers[c].push_back(e);
  for (std::size_t c = 0; c < run.conditions.size(); ++c) {
    add(run.producer_of[c], run.consumer_of[c]);
    for (std::size_t r : readers[c]) {
      add(run.producer_of[c], static_cast<int>(r));
      add(static_cast<int>(r), run.consumer_of[c]);
    }
  }

  // Re-creating a fact depends on its previous instance being consumed;
  // without this, a linearization could produce an item that is still
  // present (contact) and fail to replay.
  std::map<std::pair<std::string, Value>, std::vector<std::size_t>> chains;
  for (std::size_t c = 0; c < run.conditions.size(); ++c)
    chains[{run.conditions[c].place, run.conditions[c].item}].push_back(c);
  for (auto& [_, chain] : chains) {
    std::sort(chain.begin(), chain.end(), [&](std::size_t a, std::size_t b) {
      return run.conditions[a].instance < run.conditions[b].instance;
    });
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      add(run.consumer_of[chain[i]], run.producer_of[chain[i + 1]]);
  }

  // Transitive closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (ord.less[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (ord.less[k][j]) ord.less[i][j] = true;

  for (std::size_t i = 0; i < n; ++i)
    if (ord.less[i][i]) throw std::logic_error("corrupted run: causal order is cyclic");
  return ord;
}

namespace {

void extend_linearization(const CausalOrder& ord, std::vector<std::size_t>& prefix,
                          std::vector<bool>& placed, Linearizations& out, std::size_t cap) {
  if (out.cap_exceeded) return;
  if (prefix.size() == ord.n) {
    if (out.sequences.size() >= cap) {
      out.cap_exceeded = true;
      return;
    }
    out.sequences.push_back(prefix);
    return;
  }
  for (std::size_t e = 0; e < ord.n; ++e) {
    if (placed[e]) continue;
    bool ready = true;
    for (std::size_t p = 0; p < ord.n; ++p)
      if (!placed[p] && ord.less[p][e]) {
        ready = false;
        break;
      }
    if (!ready) continue;
    placed[e] = true;
    prefix.push_back(e);
    extend_linearization(ord, prefix, placed, out, cap);
    prefix.pop_back();
    placed[e] = false;
    if (out.cap_exceeded) return;
  }
}

}  // namespace

Linearizations linearizations(const CausalRun& run, std::size_t cap) {
  CausalOrder ord = causal_order(run);
  Linearizations out;
  std::vector<std::size_t> prefix;
  std::vector<bool> placed(ord.n, false);
  extend_linearization(ord, prefix, placed, out, cap);
  return out;
}

Marking replay(const Net& net, const std::vector<ModeOccurrence>& trace) {
  Marking m = net.initial_marking;
  for (const auto& occ : trace) m = fire(net, m, occ);
  return m;
}

ReachabilityGraph build_reachability(const Net& net, std::size_t max_states) {
  ReachabilityGraph g;
  std::map<Marking, std::size_t> index;

  g.nodes.push_back(net.initial_marking);
  index.emplace(net.initial_marking, 0);
  std::deque<std::size_t> frontier{0};

  while (!frontier.empty()) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    Marking m = g.nodes[id];
    for (const auto& occ : all_enabled(net, m)) {
      Marking next = fire(net, m, occ);
      auto it = index.find(next);
      std::size_t nid;
      if (it == index.end()) {
        if (g.nodes.size() >= max_states) {
          g.bound_hit = true;
          continue;
        }
        nid = g.nodes.size();
        g.nodes.push_back(next);
        index.emplace(std::move(next), nid);
        frontier.push_back(nid);
      } else {
        nid = it->second;
      }
      g.edges.push_back({id, nid, occ});
    }
  }
  return g;
}

}  // namespace heraklit
