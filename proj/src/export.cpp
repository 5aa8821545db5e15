#include "heraklit/export.hpp"

#include <sstream>

#include <json.hpp>

namespace heraklit {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

nlohmann::ordered_json marking_json(const Marking& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [place, items] : m.extension()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : items) arr.push_back(canonical_text(v));
    j[place] = std::move(arr);
  }
  return j;
}

nlohmann::ordered_json binding_json(const Env& env) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [name, v] : env) j[name] = canonical_text(v);
  return j;
}

std::string condition_label(const Condition& c) {
  std::string label = c.place + ": " + canonical_text(c.item);
  if (c.instance > 0) label += " #" + std::to_string(c.instance);
  return label;
}

}  // namespace

std::string reach_to_dot(const ReachabilityGraph& g) {
  std::ostringstream out;
  out << "digraph reachability {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << "  s" << i << " [label=\"" << dot_escape(g.nodes[i].text()) << '"';
    if (i == g.root) out << ", penwidth=2";
    out << "];\n";
  }
  for (const auto& e : g.edges)
    out << "  s" << e.from << " -> s" << e.to << " [label=\""
        << dot_escape(occurrence_text(e.occurrence)) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string reach_to_json(const ReachabilityGraph& g) {
  nlohmann::ordered_json j;
  j["root"] = g.root;
  j["bound_hit"] = g.bound_hit;
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    nlohmann::ordered_json n;
    n["id"] = i;
    n["marking"] = marking_json(g.nodes[i]);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) {
    nlohmann::ordered_json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["transition"] = e.occurrence.transition;
    je["binding"] = binding_json(e.occurrence.binding);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

std::string run_to_dot(const CausalRun& run) {
  std::ostringstream out;
  out << "digraph run {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t c = 0; c < run.conditions.size(); ++c)
    out << "  c" << c << " [shape=ellipse, label=\""
        << dot_escape(condition_label(run.conditions[c])) << "\"];\n";
  for (std::size_t e = 0; e < run.events.size(); ++e)
    out << "  e" << e << " [shape=box, label=\""
        << dot_escape(occurrence_text(run.events[e].occurrence)) << "\"];\n";
  for (std::size_t c = 0; c < run.conditions.size(); ++c) {
    if (run.producer_of[c] >= 0) out << "  e" << run.producer_of[c] << " -> c" << c << ";\n";
    if (run.consumer_of[c] >= 0) out << "  c" << c << " -> e" << run.consumer_of[c] << ";\n";
  }
  for (const auto& [c, e] : run.read_edges)
    out << "  c" << c << " -> e" << e << " [style=dashed, dir=none];\n";
  out << "}\n";
  return out.str();
}

std::string run_to_json(const CausalRun& run) {
  nlohmann::ordered_json j;
  auto conds = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < run.conditions.size(); ++c) {
    nlohmann::ordered_json jc;
    jc["id"] = c;
    jc["place"] = run.conditions[c].place;
    jc["item"] = canonical_text(run.conditions[c].item);
    jc["instance"] = run.conditions[c].instance;
    conds.push_back(std::move(jc));
  }
  j["conditions"] = std::move(conds);
  auto events = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < run.events.size(); ++e) {
    nlohmann::ordered_json je;
    je["id"] = e;
    je["transition"] = run.events[e].occurrence.transition;
    je["binding"] = binding_json(run.events[e].occurrence.binding);
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  j["initial"] = run.initial_conditions;
  auto produce = nlohmann::ordered_json::array();
  auto consume = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < run.conditions.size(); ++c) {
    if (run.producer_of[c] >= 0) produce.push_back({run.producer_of[c], c});
    if (run.consumer_of[c] >= 0) consume.push_back({c, run.consumer_of[c]});
  }
  j["produce"] = std::move(produce);
  j["consume"] = std::move(consume);
  auto reads = nlohmann::ordered_json::array();
  for (const auto& [c, e] : run.read_edges) reads.push_back({c, e});
  j["read"] = std::move(reads);
  return j.dump(2) + "\n";
}

}  // namespace heraklit
