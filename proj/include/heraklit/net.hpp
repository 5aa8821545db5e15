#pragma once

#include <map>
#include <string>
#include <vector>

#include "heraklit/term.hpp"

namespace heraklit {

class NotEnabledError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DependentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A dynamic predicate: holds a set of items of one sort.
struct Place {
  std::string name;
  std::string item_sort;
  bool operator==(const Place&) const = default;
};

enum class ArcMode { Consume, Read, Produce };

const char* arc_mode_name(ArcMode m);

struct Arc {
  std::string place;
  ArcMode mode = ArcMode::Consume;
  Term inscription;
  bool operator==(const Arc&) const = default;
};

// A step schema. Variables in produce inscriptions and the guard must be
// bound by consume/read matching or listed among free_vars; free variables
// range over finite carriers (a free variable that matching happens to pin
// down is not enumerated). `var_sorts` covers every variable of the
// transition and is filled in by finalize_net.
struct Transition {
  std::string name;
  std::vector<Arc> arcs;  // canonical order after finalize_net
  Term guard = Term::literal(Value::boolean(true));
  std::map<std::string, std::string> free_vars;
  std::map<std::string, std::string> var_sorts;
  bool operator==(const Transition&) const = default;
};

// The joint extension of all dynamic predicates: per place, a set of
// items. Every place of the net is present as a key, possibly empty.
class Marking {
public:
  Marking() = default;

  const std::map<std::string, std::vector<Value>>& extension() const { return ext_; }
  bool has_place(const std::string& p) const { return ext_.count(p) != 0; }
  void ensure_place(const std::string& p) { ext_.try_emplace(p); }
  const std::vector<Value>& items(const std::string& p) const;
  bool contains(const std::string& p, const Value& v) const;
  // Set semantics: adding a present item reports false and changes nothing.
  bool add(const std::string& p, const Value& v);
  bool remove(const std::string& p, const Value& v);
  std::size_t total_items() const;

  // Canonical text: places in name order, items in compare() order; empty
  // places are skipped.
  std::string text() const;

  auto operator<=>(const Marking& o) const { return ext_ <=> o.ext_; }
  bool operator==(const Marking& o) const { return ext_ == o.ext_; }

private:
  std::map<std::string, std::vector<Value>> ext_;
};

struct Net {
  Signature signature;
  Structure structure;
  std::map<std::string, Place> places;
  std::map<std::string, Transition> transitions;
  Marking initial_marking;
  // Relaxes contact-freeness: producing an already-present item is allowed
  // and collapses (set union) instead of disabling the step.
  bool idempotent_produce = false;

  bool operator==(const Net&) const = default;
};

// One enabled firing: a transition plus a total variable binding whose
// guard holds.
struct ModeOccurrence {
  std::string transition;
  Env binding;
  auto operator<=>(const ModeOccurrence&) const = default;
};

std::string occurrence_text(const ModeOccurrence& occ);

struct NetIssue {
  std::string subject;  // place / transition / symbol the issue belongs to
  std::string message;
  bool about_marking = false;  // anchored at a marking entry, not a declaration
};

// Completes and validates a net in place: mirrors places into the
// signature's dynamic predicates, infers per-transition variable sorts,
// reorders arcs canonically, normalizes the initial marking, and returns
// every invariant violation found. A net is well-formed iff the result is
// empty.
std::vector<NetIssue> finalize_net(Net& net);

// Per-place items an occurrence touches, evaluated under its binding.
// Lists preserve one entry per arc, so a double match shows up as a
// duplicate.
struct OccurrenceEffect {
  std::map<std::string, std::vector<Value>> consumed;
  std::map<std::string, std::vector<Value>> read;
  std::map<std::string, std::vector<Value>> produced;
};

OccurrenceEffect occurrence_effect(const Net& net, const ModeOccurrence& occ);

// Exactly the occurrences enabled at m for this transition: injective
// per-place assignment of present items to consume/read arcs, free
// variables ranging over their carriers, guard true, and produced items
// contact-free. Result is sorted by binding. Throws EvalError when a free
// variable would require enumerating an infinite carrier.
std::vector<ModeOccurrence> enabled_bindings(const Net& net, const Marking& m,
                                             const Transition& t);

// Union over all transitions, ordered by (transition name, binding).
std::vector<ModeOccurrence> all_enabled(const Net& net, const Marking& m);

bool is_enabled(const Net& net, const Marking& m, const ModeOccurrence& occ);

// Removes consumed items, adds produced items, leaves read places alone.
// Throws NotEnabledError when occ is not enabled at m.
Marking fire(const Net& net, const Marking& m, const ModeOccurrence& occ);

// True iff the two occurrences can fire in either order from m with the
// same overall effect: disjoint consumed items per place, no consume/read
// conflicts, and neither one's produced items violate contact against the
// other's result.
bool independent(const Net& net, const Marking& m, const ModeOccurrence& a,
                 const ModeOccurrence& b);

// Fires a set of pairwise independent occurrences as one step. Throws
// DependentError if any pair conflicts.
Marking concurrent_step(const Net& net, const Marking& m,
                        const std::vector<ModeOccurrence>& occs);

}  // namespace heraklit
