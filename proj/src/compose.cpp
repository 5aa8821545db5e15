#include "heraklit/module.hpp"

#include <algorithm>

namespace heraklit {

std::vector<NetIssue> check_module(ModuleNet& m) {
  std::vector<NetIssue> issues = finalize_net(m.net);
  std::set<std::string> seen;
  auto check_side = [&](const std::vector<std::string>& labels, const char* side) {
    for (const auto& l : labels) {
      if (!m.net.places.count(l))
        issues.push_back({l, std::string(side) + " interface label '" + l +
                                 "' does not name a place"});
      if (!seen.insert(l).second)
        issues.push_back({l, "label '" + l + "' appears in more than one interface position"});
    }
  };
  check_side(m.left_interface, "left");
  check_side(m.right_interface, "right");
  return issues;
}

namespace {

template <typename M>
void merge_symbols(M& out, const M& add, const char* what) {
  for (const auto& [name, def] : add) {
    auto it = out.find(name);
    if (it == out.end()) {
      out.emplace(name, def);
    } else if (!(it->second == def)) {
      throw ComposeError("conflicting interpretations of shared " + std::string(what) + " '" +
                         name + "'");
    }
  }
}

std::string qualified(const std::string& module_name, const std::string& name) {
  return module_name + "." + name;
}

}  // namespace

ModuleNet compose(const ModuleNet& a, const ModuleNet& b) {
  const std::string an = a.name.empty() ? "m1" : a.name;
  const std::string bn = b.name.empty() ? "m2" : b.name;

  for (const ModuleNet* mod : {&a, &b})
    for (const auto& side : {mod->left_interface, mod->right_interface})
      for (const auto& l : side)
        if (!mod->net.places.count(l))
          throw ComposeError("interface label '" + l + "' does not name a place");

  // Labels fused: a's right meeting b's left.
  std::vector<std::string> matched;
  for (const auto& l : a.right_interface)
    if (std::find(b.left_interface.begin(), b.left_interface.end(), l) !=
        b.left_interface.end())
      matched.push_back(l);
  std::sort(matched.begin(), matched.end());
  auto is_matched = [&](const std::string& l) {
    return std::binary_search(matched.begin(), matched.end(), l);
  };

  for (const auto& l : matched) {
    const auto& pa = a.net.places.at(l);
    const auto& pb = b.net.places.at(l);
    if (pa.item_sort != pb.item_sort)
      throw ComposeError("sort mismatch on fused label '" + l + "': '" + pa.item_sort +
                         "' vs '" + pb.item_sort + "'");
  }

  // Any other label known to both sides would collide unfused.
  std::set<std::string> a_labels(a.left_interface.begin(), a.left_interface.end());
  a_labels.insert(a.right_interface.begin(), a.right_interface.end());
  for (const auto& side : {b.left_interface, b.right_interface})
    for (const auto& l : side)
      if (a_labels.count(l) && !is_matched(l))
        throw ComposeError("interface label collision on '" + l +
                           "' (present in both modules but not fused)");

  ModuleNet out;
  out.name = an + "_" + bn;
  out.net.idempotent_produce = a.net.idempotent_produce || b.net.idempotent_produce;

  Signature& sig = out.net.signature;
  merge_symbols(sig.sorts, a.net.signature.sorts, "sort");
  merge_symbols(sig.sorts, b.net.signature.sorts, "sort");
  merge_symbols(sig.constants, a.net.signature.constants, "constant");
  merge_symbols(sig.constants, b.net.signature.constants, "constant");
  merge_symbols(sig.functions, a.net.signature.functions, "function");
  merge_symbols(sig.functions, b.net.signature.functions, "function");
  merge_symbols(sig.static_predicates, a.net.signature.static_predicates, "predicate");
  merge_symbols(sig.static_predicates, b.net.signature.static_predicates, "predicate");

  Structure& str = out.net.structure;
  merge_symbols(str.constant_values, a.net.structure.constant_values, "constant");
  merge_symbols(str.constant_values, b.net.structure.constant_values, "constant");
  merge_symbols(str.function_defs, a.net.structure.function_defs, "function");
  merge_symbols(str.function_defs, b.net.structure.function_defs, "function");
  merge_symbols(str.static_relations, a.net.structure.static_relations, "predicate");
  merge_symbols(str.static_relations, b.net.structure.static_relations, "predicate");

  // Interface places keep their label; everything else is qualified.
  auto place_name = [&](const ModuleNet& mod, const std::string& qualifier,
                        const std::string& p) {
    bool is_interface =
        std::find(mod.left_interface.begin(), mod.left_interface.end(), p) !=
            mod.left_interface.end() ||
        std::find(mod.right_interface.begin(), mod.right_interface.end(), p) !=
            mod.right_interface.end();
    return is_interface ? p : qualified(qualifier, p);
  };

  auto add_places = [&](const ModuleNet& mod, const std::string& qualifier) {
    for (const auto& [pname, place] : mod.net.places) {
      std::string nn = place_name(mod, qualifier, pname);
      auto [it, inserted] = out.net.places.emplace(nn, Place{nn, place.item_sort});
      if (!inserted) {
        if (!is_matched(nn))
          throw ComposeError("duplicate place name '" + nn + "' after qualification");
        if (it->second.item_sort != place.item_sort)
          throw ComposeError("sort mismatch on fused label '" + nn + "'");
      }
    }
  };
  add_places(a, an);
  add_places(b, bn);

  auto add_transitions = [&](const ModuleNet& mod, const std::string& qualifier) {
    for (const auto& [tname, t] : mod.net.transitions) {
      Transition nt = t;
      nt.name = qualified(qualifier, tname);
      for (auto& arc : nt.arcs) arc.place = place_name(mod, qualifier, arc.place);
      if (!out.net.transitions.emplace(nt.name, std::move(nt)).second)
        throw ComposeError("duplicate transition name '" + qualified(qualifier, tname) +
                           "' after qualification");
    }
  };
  add_transitions(a, an);
  add_transitions(b, bn);

  // Initial markings; fused places take the set union.
  auto add_marking = [&](const ModuleNet& mod, const std::string& qualifier) {
    for (const auto& [pname, items] : mod.net.initial_marking.extension())
      for (const auto& v : items) out.net.initial_marking.add(place_name(mod, qualifier, pname), v);
  };
  add_marking(a, an);
  add_marking(b, bn);

  auto propagate = [&](const std::vector<std::string>& first,
                       const std::vector<std::string>& second) {
    std::vector<std::string> labels;
    for (const auto& l : first) labels.push_back(l);
    for (const auto& l : second)
      if (!is_matched(l)) labels.push_back(l);
    return labels;
  };
  out.left_interface = propagate(a.left_interface, b.left_interface);
  out.right_interface = propagate(b.right_interface, a.right_interface);

  auto issues = check_module(out);
  if (!issues.empty())
    throw ComposeError("composition produced an ill-formed module: " + issues.front().message);
  return out;
}

}  // namespace heraklit
