#include "heraklit/printer.hpp"

#include <sstream>

namespace heraklit {

namespace {

void print_value_list(std::ostringstream& out, const std::vector<Value>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out << ", ";
    out << canonical_text(vals[i]);
  }
}

void print_sorts(std::ostringstream& out, const Signature& sig, bool& any) {
  for (const auto& [name, def] : sig.sorts) {
    switch (def.kind) {
      case SortDef::Kind::IntSort:
      case SortDef::Kind::BoolSort:
        continue;  // predeclared
      case SortDef::Kind::Explicit:
        out << "sort " << name << " = {";
        print_value_list(out, def.elements);
        out << "};\n";
        break;
      case SortDef::Kind::Product: {
        out << "sort " << name << " = ";
        for (std::size_t i = 0; i < def.components.size(); ++i) {
          if (i) out << " * ";
          out << def.components[i];
        }
        out << ";\n";
        break;
      }
      case SortDef::Kind::Powerset:
        out << "powerset sort " << name << " = " << def.base << ";\n";
        break;
    }
    any = true;
  }
}

}  // namespace

std::string print_module(const ModuleNet& m) {
  std::ostringstream out;
  const Net& net = m.net;
  const Signature& sig = net.signature;
  bool any = false;
  auto blank = [&] {
    if (any) out << '\n';
    any = false;
  };

  if (!m.name.empty()) {
    out << "module " << m.name << ";\n";
    any = true;
  }

  blank();
  print_sorts(out, sig, any);

  blank();
  for (const auto& [name, sort] : sig.constants) {
    out << "const " << name << " : " << sort << " = ";
    if (auto it = net.structure.constant_values.find(name);
        it != net.structure.constant_values.end())
      out << canonical_text(it->second);
    out << ";\n";
    any = true;
  }

  blank();
  for (const auto& [name, decl] : sig.functions) {
    out << "fn " << name << '(';
    for (std::size_t i = 0; i < decl.arg_sorts.size(); ++i) {
      if (i) out << ", ";
      out << decl.arg_sorts[i];
    }
    out << ") -> " << decl.result_sort << " = ";
    auto it = net.structure.function_defs.find(name);
    if (it != net.structure.function_defs.end() && it->second.kind == FnDef::Kind::Builtin) {
      out << "builtin " << it->second.builtin.name;
    } else if (it != net.structure.function_defs.end()) {
      out << "table {";
      for (const auto& [key, result] : it->second.table) {
        out << " (";
        print_value_list(out, key);
        out << ") -> " << canonical_text(result) << ';';
      }
      out << " }";
    }
    out << ";\n";
    any = true;
  }

  blank();
  for (const auto& [name, arg_sorts] : sig.static_predicates) {
    out << "pred static " << name << '(';
    for (std::size_t i = 0; i < arg_sorts.size(); ++i) {
      if (i) out << ", ";
      out << arg_sorts[i];
    }
    out << ") = ";
    auto it = net.structure.static_relations.find(name);
    if (it != net.structure.static_relations.end() &&
        it->second.kind == RelDef::Kind::Builtin) {
      out << "builtin " << it->second.builtin.name;
    } else if (it != net.structure.static_relations.end()) {
      out << '{';
      bool first = true;
      for (const auto& tup : it->second.tuples) {
        if (!first) out << ", ";
        first = false;
        out << '(';
        print_value_list(out, tup);
        out << ')';
      }
      out << '}';
    }
    out << ";\n";
    any = true;
  }

  blank();
  for (const auto& [name, place] : net.places) {
    out << "place " << name << " : " << place.item_sort << ";\n";
    any = true;
  }

  for (const auto& [name, t] : net.transitions) {
    blank();
    out << "transition " << name << " {\n";
    for (const auto& arc : t.arcs)
      out << "  " << arc_mode_name(arc.mode) << ' ' << arc.place << " : "
          << term_text(arc.inscription) << ";\n";
    for (const auto& [v, sort] : t.free_vars) out << "  var " << v << " : " << sort << ";\n";
    if (!(t.guard == Term::literal(Value::boolean(true))))
      out << "  guard " << term_text(t.guard) << ";\n";
    out << "}\n";
    any = true;
  }

  bool marking_nonempty = net.initial_marking.total_items() > 0;
  if (marking_nonempty) {
    blank();
    out << "marking {\n";
    for (const auto& [place, items] : net.initial_marking.extension()) {
      if (items.empty()) continue;
      out << "  " << place << ": {";
      print_value_list(out, items);
      out << "};\n";
    }
    out << "}\n";
    any = true;
  }

  if (!m.left_interface.empty() || !m.right_interface.empty()) {
    blank();
    if (!m.left_interface.empty()) {
      out << "interface left (";
      for (std::size_t i = 0; i < m.left_interface.size(); ++i) {
        if (i) out << ", ";
        out << m.left_interface[i];
      }
      out << ");\n";
    }
    if (!m.right_interface.empty()) {
      out << "interface right (";
      for (std::size_t i = 0; i < m.right_interface.size(); ++i) {
        if (i) out << ", ";
        out << m.right_interface[i];
      }
      out << ");\n";
    }
  }

  return out.str();
}

}  // namespace heraklit
