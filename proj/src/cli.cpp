#include "heraklit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "heraklit/export.hpp"
#include "heraklit/parser.hpp"
#include "heraklit/printer.hpp"

namespace heraklit {

RunReport make_report(const RecordedRun& r) {
  RunReport rep;
  rep.trace = r.trace;
  rep.final_marking = r.final_marking;
  rep.reason = r.reason;
  rep.event_count = r.run.events.size();
  rep.condition_count = r.run.conditions.size();
  return rep;
}

std::string report_text(const RunReport& r) {
  std::ostringstream out;
  out << "trace:\n";
  if (r.trace.empty()) out << "  (empty)\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i)
    out << "  " << i + 1 << ". " << occurrence_text(r.trace[i]) << '\n';
  out << "final marking:\n";
  bool any = false;
  for (const auto& [place, items] : r.final_marking.extension()) {
    if (items.empty()) continue;
    any = true;
    out << "  " << place << ": {";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out << ", ";
      out << canonical_text(items[i]);
    }
    out << "}\n";
  }
  if (!any) out << "  (all places empty)\n";
  out << "reason: " << termination_name(r.reason) << '\n';
  out << "events: " << r.event_count << ", conditions: " << r.condition_count << '\n';
  return out.str();
}

std::string report_json(const RunReport& r) {
  nlohmann::ordered_json j;
  auto trace = nlohmann::ordered_json::array();
  for (const auto& occ : r.trace) {
    nlohmann::ordered_json jo;
    jo["transition"] = occ.transition;
    auto binding = nlohmann::ordered_json::object();
    for (const auto& [name, v] : occ.binding) binding[name] = canonical_text(v);
    jo["binding"] = std::move(binding);
    trace.push_back(std::move(jo));
  }
  j["trace"] = std::move(trace);
  auto marking = nlohmann::ordered_json::object();
  for (const auto& [place, items] : r.final_marking.extension()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : items) arr.push_back(canonical_text(v));
    marking[place] = std::move(arr);
  }
  j["final_marking"] = std::move(marking);
  j["reason"] = termination_name(r.reason);
  j["events"] = r.event_count;
  j["conditions"] = r.condition_count;
  return j.dump(2) + "\n";
}

namespace {

struct CliError {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot open '" << path << "'\n";
    throw CliError{2};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ModuleNet load_module(const std::string& path, std::ostream& err) {
  std::string text = read_file(path, err);
  ParseResult result = parse(text, path);
  for (const auto& d : result.diagnostics) err << diagnostic_text(d, path) << '\n';
  if (!result.module) throw CliError{1};
  return std::move(*result.module);
}

void write_output(const std::string& target, const std::string& content, std::ostream& out,
                  std::ostream& err) {
  if (target == "-") {
    out << content;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) {
    err << "cannot write '" << target << "'\n";
    throw CliError{2};
  }
  file << content;
}

Policy make_policy(const std::string& name, std::uint64_t seed, std::ostream& err) {
  if (name == "first") return PolicyFirst{};
  if (name == "random") return PolicyRandom{seed};
  err << "unknown policy '" << name << "' (expected first or random)\n";
  throw CliError{2};
}

Marking starting_marking(const Net& net, const std::string& marking_path, std::ostream& err) {
  if (marking_path.empty()) return net.initial_marking;
  std::string text = read_file(marking_path, err);
  MarkingResult mr = parse_marking_text(text, net);
  for (const auto& d : mr.diagnostics) err << diagnostic_text(d, marking_path) << '\n';
  if (!mr.marking) throw CliError{1};
  return std::move(*mr.marking);
}

void print_marking_lines(const Marking& m, std::ostream& out) {
  bool any = false;
  for (const auto& [place, items] : m.extension()) {
    if (items.empty()) continue;
    any = true;
    out << "  " << place << ": {";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out << ", ";
      out << canonical_text(items[i]);
    }
    out << "}\n";
  }
  if (!any) out << "  (all places empty)\n";
}

int cmd_play(const Net& net, std::istream& in, std::ostream& out) {
  std::vector<Marking> stack{net.initial_marking};
  std::vector<ModeOccurrence> trace;
  RunTermination reason = RunTermination::UserStop;
  bool deadlocked = false;

  while (true) {
    const Marking& m = stack.back();
    out << "step " << trace.size() << ":\n";
    print_marking_lines(m, out);
    auto occs = all_enabled(net, m);
    deadlocked = occs.empty();
    if (deadlocked) {
      out << "no enabled occurrences (deadlock); u=undo, q=quit\n";
    } else {
      out << "enabled:\n";
      for (std::size_t i = 0; i < occs.size(); ++i)
        out << "  " << i + 1 << ") " << occurrence_text(occs[i]) << '\n';
      out << "choose [1-" << occs.size() << "], u=undo, q=quit\n";
    }
    out << "> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      reason = deadlocked ? RunTermination::Deadlock : RunTermination::UserStop;
      break;
    }
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok.empty()) continue;
    if (tok == "q") {
      reason = deadlocked ? RunTermination::Deadlock : RunTermination::UserStop;
      break;
    }
    if (tok == "u") {
      if (stack.size() > 1) {
        stack.pop_back();
        trace.pop_back();
      } else {
        out << "nothing to undo\n";
      }
      continue;
    }
    std::size_t pick = 0;
    try {
      pick = std::stoul(tok);
    } catch (const std::exception&) {
      out << "unrecognized input '" << tok << "'\n";
      continue;
    }
    if (deadlocked || pick < 1 || pick > occs.size()) {
      out << "no occurrence numbered " << tok << '\n';
      continue;
    }
    stack.push_back(fire(net, stack.back(), occs[pick - 1]));
    trace.push_back(occs[pick - 1]);
  }

  // Rebuild the causal record from the chosen trace for the transcript.
  RunRecorder rec(net);
  for (const auto& occ : trace) rec.step(occ);
  RunReport rep;
  rep.trace = trace;
  rep.final_marking = rec.marking();
  rep.reason = reason;
  rep.event_count = rec.run().events.size();
  rep.condition_count = rec.run().conditions.size();
  out << "\n" << report_text(rep);
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"predicate-net modeling kernel"};
  app.name("hkt");
  app.require_subcommand(1);

  std::string file, file_b, marking_file, out_target = "-", json_target, dot_target;
  std::size_t steps = 10, max_states = 10000;
  std::string policy_name = "first";
  std::uint64_t seed = 0;
  bool in_place = false, causal = false, idempotent = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "model file (.hkt)")->required();
    cmd->add_flag("--idempotent-produce", idempotent,
                  "relax contact-freeness: producing a present item collapses");
  };

  CLI::App* check = app.add_subcommand("check", "parse and well-formedness check");
  add_common(check);

  CLI::App* simulate = app.add_subcommand("simulate", "record a run under a policy");
  add_common(simulate);
  simulate->add_option("--steps", steps, "maximum number of events")->required();
  simulate->add_option("--policy", policy_name, "first|random");
  simulate->add_option("--seed", seed, "seed for the random policy");
  simulate->add_option("--json", json_target, "write the run report as JSON ('-' = stdout)");
  simulate->add_option("--dot", dot_target, "write the causal run as DOT ('-' = stdout)");

  CLI::App* bindings = app.add_subcommand("bindings", "list enabled occurrences");
  add_common(bindings);
  bindings->add_option("--marking", marking_file, "marking file overriding the initial marking");

  CLI::App* play = app.add_subcommand("play", "interactive token game");
  add_common(play);

  CLI::App* space = app.add_subcommand("space", "explore the reachability graph");
  add_common(space);
  space->add_option("--max-states", max_states, "state bound");
  space->add_option("--dot", dot_target, "write the graph as DOT ('-' = stdout)");
  space->add_option("--json", json_target, "write the graph as JSON ('-' = stdout)");

  CLI::App* runcmd = app.add_subcommand("run", "record a run and export its causal record");
  add_common(runcmd);
  runcmd->add_option("--steps", steps, "maximum number of events")->required();
  runcmd->add_option("--policy", policy_name, "first|random");
  runcmd->add_option("--seed", seed, "seed for the random policy");
  runcmd->add_flag("--causal", causal, "export the causal (partial-order) run");
  runcmd->add_option("--dot", dot_target, "write the causal run as DOT ('-' = stdout)");
  runcmd->add_option("--json", json_target, "write the causal run as JSON ('-' = stdout)");

  CLI::App* compose_cmd = app.add_subcommand("compose", "fuse two modules along interfaces");
  compose_cmd->add_option("file_a", file, "left module")->required();
  compose_cmd->add_option("file_b", file_b, "right module")->required();
  compose_cmd->add_option("-o,--output", out_target, "output file ('-' = stdout)");

  CLI::App* fmt = app.add_subcommand("fmt", "canonical formatting");
  fmt->add_option("file", file, "model file (.hkt)")->required();
  fmt->add_flag("-i,--in-place", in_place, "rewrite the file instead of printing");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (check->parsed()) {
      load_module(file, err);
      return 0;
    }

    if (simulate->parsed() || runcmd->parsed()) {
      ModuleNet mod = load_module(file, err);
      mod.net.idempotent_produce = idempotent;
      Policy policy = make_policy(policy_name, seed, err);
      RecordedRun rec = record_run(mod.net, policy, steps);
      bool exported = false;
      if (!json_target.empty()) {
        write_output(json_target,
                     runcmd->parsed() && causal ? run_to_json(rec.run)
                                                : report_json(make_report(rec)),
                     out, err);
        exported = true;
      }
      if (!dot_target.empty()) {
        write_output(dot_target, run_to_dot(rec.run), out, err);
        exported = true;
      }
      if (!exported) out << report_text(make_report(rec));
      return 0;
    }

    if (bindings->parsed()) {
      ModuleNet mod = load_module(file, err);
      mod.net.idempotent_produce = idempotent;
      Marking m = starting_marking(mod.net, marking_file, err);
      for (const auto& occ : all_enabled(mod.net, m)) out << occurrence_text(occ) << '\n';
      return 0;
    }

    if (play->parsed()) {
      ModuleNet mod = load_module(file, err);
      mod.net.idempotent_produce = idempotent;
      return cmd_play(mod.net, in, out);
    }

    if (space->parsed()) {
      ModuleNet mod = load_module(file, err);
      mod.net.idempotent_produce = idempotent;
      ReachabilityGraph g = build_reachability(mod.net, max_states);
      bool exported = false;
      if (!dot_target.empty()) {
        write_output(dot_target, reach_to_dot(g), out, err);
        exported = true;
      }
      if (!json_target.empty()) {
        write_output(json_target, reach_to_json(g), out, err);
        exported = true;
      }
      if (!exported)
        out << "states: " << g.nodes.size() << ", edges: " << g.edges.size()
            << (g.bound_hit ? " (bound hit)" : "") << '\n';
      return g.bound_hit ? 3 : 0;
    }

    if (compose_cmd->parsed()) {
      ModuleNet a = load_module(file, err);
      ModuleNet b = load_module(file_b, err);
      try {
        ModuleNet c = compose(a, b);
        write_output(out_target, print_module(c), out, err);
      } catch (const ComposeError& e) {
        err << e.what() << '\n';
        return 1;
      }
      return 0;
    }

    if (fmt->parsed()) {
      ModuleNet mod = load_module(file, err);
      std::string text = print_module(mod);
      if (in_place)
        write_output(file, text, out, err);
      else
        out << text;
      return 0;
    }
  } catch (const CliError& e) {
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace heraklit
