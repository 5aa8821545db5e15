#pragma once

#include <string>

#include "heraklit/runs.hpp"

namespace heraklit {

// Graphviz text. Nodes carry the canonical marking text, edges the firing
// occurrence ("transition[binding]").
std::string reach_to_dot(const ReachabilityGraph& g);

// {"nodes":[{"id",,"marking"}], "edges":[{"from","to","transition","binding"}]}
std::string reach_to_json(const ReachabilityGraph& g);

// Conditions as ellipses, events as boxes; read adjacency drawn dashed and
// undirected.
std::string run_to_dot(const CausalRun& run);

std::string run_to_json(const CausalRun& run);

}  // namespace heraklit
