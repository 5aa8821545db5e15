#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>

#include "heraklit/net.hpp"

namespace heraklit {

// One fact in a run: an item held by a place. The instance index counts
// re-creations of the same fact, consecutively from 0.
struct Condition {
  std::string place;
  Value item;
  int instance = 0;
  bool operator==(const Condition&) const = default;
};

struct RunEvent {
  ModeOccurrence occurrence;
  bool operator==(const RunEvent&) const = default;
};

// A partial-order record of one behavior: conditions and events with
// produce, consume, and read adjacency. Condition and event ids index the
// vectors below; events appear in firing order.
struct CausalRun {
  std::vector<Condition> conditions;
  std::vector<RunEvent> events;
  std::vector<std::size_t> initial_conditions;
  std::vector<int> producer_of;                     // per condition, event id or -1
  std::vector<int> consumer_of;                     // per condition, event id or -1
  std::vector<std::pair<std::size_t, std::size_t>> read_edges;  // (condition, event)

  bool operator==(const CausalRun&) const = default;
};

// Structural invariants: acyclic produce/consume graph, at most one
// producer/consumer per condition, instance indices consecutive from 0,
// initial conditions exactly the unproduced ones.
std::vector<std::string> check_run(const CausalRun& run);

// Incremental recorder used by record_run and the interactive token game.
class RunRecorder {
public:
  explicit RunRecorder(const Net& net);

  const Marking& marking() const { return marking_; }
  const CausalRun& run() const { return run_; }
  const std::vector<ModeOccurrence>& trace() const { return trace_; }

  // Fires occ (must be enabled) and extends the causal record.
  void step(const ModeOccurrence& occ);

private:
  std::size_t live_condition(const std::string& place, const Value& item) const;
  std::size_t new_condition(const std::string& place, const Value& item);

  const Net& net_;
  Marking marking_;
  CausalRun run_;
  std::vector<ModeOccurrence> trace_;
  std::map<std::pair<std::string, Value>, std::size_t> live_;
  std::map<std::pair<std::string, Value>, int> instances_;
};

struct PolicyFirst {};
struct PolicyRandom {
  std::uint64_t seed = 0;
};
// Picks the index of the next occurrence, or nullopt to stop.
using InteractiveCallback =
    std::function<std::optional<std::size_t>(const Marking&, const std::vector<ModeOccurrence>&)>;
using Policy = std::variant<PolicyFirst, PolicyRandom, InteractiveCallback>;

enum class RunTermination { Deadlock, Bound, UserStop };

const char* termination_name(RunTermination t);

struct RecordedRun {
  std::vector<ModeOccurrence> trace;
  CausalRun run;
  RunTermination reason = RunTermination::Deadlock;
  Marking final_marking;
};

// Fires occurrences from the initial marking under the policy until
// max_events, deadlock, or a user stop. Deadlock and bound are normal
// terminations, distinguished in the result.
RecordedRun record_run(const Net& net, const Policy& policy, std::size_t max_events);

// The strict partial order generated by: producer < consumer,
// producer < reader, reader < consumer per condition, and consumer of one
// instance < producer of the next instance of the same fact (so every
// linear extension is contact-free and replays). Readers of the same
// condition stay mutually unordered. Throws on a cyclic (corrupted) run.
struct CausalOrder {
  std::size_t n = 0;
  std::vector<std::vector<bool>> less;  // less[i][j]: event i precedes event j

  bool is_less(std::size_t i, std::size_t j) const { return less[i][j]; }
};

CausalOrder causal_order(const CausalRun& run);

struct Linearizations {
  std::vector<std::vector<std::size_t>> sequences;
  bool cap_exceeded = false;
};

// All linear extensions of causal_order(run), up to cap sequences.
Linearizations linearizations(const CausalRun& run, std::size_t cap);

// Fires trace from the net's initial marking; throws NotEnabledError when a
// step is not enabled.
Marking replay(const Net& net, const std::vector<ModeOccurrence>& trace);

struct ReachEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  ModeOccurrence occurrence;
  bool operator==(const ReachEdge&) const = default;
};

// Interleaving state graph: nodes are canonical markings, arcs are
// occurrences. Node 0 is the initial marking; discovery is breadth-first
// and deterministic.
struct ReachabilityGraph {
  std::vector<Marking> nodes;
  std::vector<ReachEdge> edges;
  std::size_t root = 0;
  bool bound_hit = false;
};

ReachabilityGraph build_reachability(const Net& net, std::size_t max_states);

}  // namespace heraklit
