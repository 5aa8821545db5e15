#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "heraklit/cli.hpp"
#include "support/fixtures.hpp"

using namespace heraklit;
using heraklit::test::fixture_path;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_command(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check is quiet on a valid model and exits zero") {
  auto r = run({"check", fixture_path("restaurant.hkt")});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.empty());
}

TEST_CASE("check reports diagnostics and exits one") {
  std::string bad = "/tmp/hkt_bad_model.hkt";
  std::ofstream(bad) << "place p : Nope;\n";
  auto r = run({"check", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("Nope") != std::string::npos);
}

TEST_CASE("missing files and bad usage have distinct exit codes") {
  CHECK(run({"check", "/tmp/no_such_file.hkt"}).code == 2);
  CHECK(run({"nosuchcommand"}).code == 2);
  CHECK(run({"simulate", fixture_path("restaurant.hkt")}).code == 2);  // --steps required
  CHECK(run({}).code == 2);
}

TEST_CASE("simulate policy first reaches the documented restaurant state") {
  auto r = run({"simulate", fixture_path("restaurant.hkt"), "--steps", "2", "--policy", "first"});
  CHECK(r.code == 0);
  CHECK(r.out.find("enter[xc=alice, xt=1]") != std::string::npos);
  CHECK(r.out.find("pending: {(alice, 1)}") != std::string::npos);
  CHECK(r.out.find("orders: {(1, {fish})}") != std::string::npos);  // documented tie-break
  CHECK(r.out.find("menu: {{fish, meat, rice}}") != std::string::npos);
  CHECK(r.out.find("reason: bound") != std::string::npos);
}

TEST_CASE("simulate emits a structured JSON report") {
  auto r = run({"simulate", fixture_path("restaurant.hkt"), "--steps", "5", "--policy", "first",
                "--json", "-"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["trace"].size() == 2);
  CHECK(j["trace"][0]["transition"] == "enter");
  CHECK(j["trace"][0]["binding"]["xc"] == "alice");
  CHECK(j["reason"] == "deadlock");
  CHECK(j["final_marking"]["pending"][0] == "(alice, 1)");
}

TEST_CASE("space reports the golden state counts") {
  auto r = run({"space", fixture_path("restaurant.hkt"), "--max-states", "100", "--json", "-"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["nodes"].size() == 9);
  CHECK(j["edges"].size() == 8);
  CHECK(j["bound_hit"] == false);
  CHECK(j["root"] == 0);
}

TEST_CASE("space exits three when the bound cuts exploration short") {
  auto r = run({"space", fixture_path("restaurant.hkt"), "--max-states", "3"});
  CHECK(r.code == 3);
  CHECK(r.out.find("bound hit") != std::string::npos);
}

TEST_CASE("space and run emit DOT") {
  auto r = run({"space", fixture_path("restaurant.hkt"), "--max-states", "100", "--dot", "-"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph reachability") == 0);
  CHECK(r.out.find("enter[xc=alice, xt=1]") != std::string::npos);

  auto s = run({"simulate", fixture_path("restaurant.hkt"), "--steps", "2", "--dot", "-"});
  CHECK(s.code == 0);
  CHECK(s.out.find("digraph run") == 0);

  auto c = run({"run", fixture_path("restaurant.hkt"), "--steps", "2", "--causal", "--dot", "-"});
  CHECK(c.code == 0);
  CHECK(c.out.find("digraph run") == 0);
  CHECK(c.out.find("shape=ellipse") != std::string::npos);   // conditions
  CHECK(c.out.find("style=dashed") != std::string::npos);    // read adjacency
  CHECK(c.out.find("waiting: alice") != std::string::npos);

  auto j = run({"run", fixture_path("restaurant.hkt"), "--steps", "2", "--causal", "--json", "-"});
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["events"].size() == 2);
  CHECK(parsed["read"].size() == 1);  // select reads the menu condition
  CHECK(parsed["conditions"].size() == 6);
}

TEST_CASE("bindings lists occurrences deterministically, with marking override") {
  auto r = run({"bindings", fixture_path("restaurant.hkt")});
  CHECK(r.code == 0);
  CHECK(r.out == "enter[xc=alice, xt=1]\n");

  std::string marking = "/tmp/hkt_marking.hkt";
  std::ofstream(marking) << "marking { ready: {(alice, 1)}; menu: {{fish, meat, rice}}; }\n";
  auto r2 = run({"bindings", fixture_path("restaurant.hkt"), "--marking", marking});
  CHECK(r2.code == 0);
  // 7 nonempty subsets of the menu.
  CHECK(std::count(r2.out.begin(), r2.out.end(), '\n') == 7);
  CHECK(r2.out.find("select[d={fish}") == 0);
}

TEST_CASE("compose writes a parseable module") {
  auto r = run({"compose", fixture_path("front.hkt"), fixture_path("kitchen.hkt"), "-o", "-"});
  CHECK(r.code == 0);
  auto parsed = parse(r.out);
  REQUIRE(parsed.ok());
  CHECK(parsed.module->name == "front_kitchen");
  CHECK(parsed.module->net.places.count("orders") == 1);

  auto bad = run({"compose", fixture_path("front.hkt"), fixture_path("front.hkt"), "-o", "-"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("collision") != std::string::npos);
}

TEST_CASE("fmt prints canonical text and can rewrite in place") {
  auto r = run({"fmt", fixture_path("restaurant.hkt")});
  CHECK(r.code == 0);
  CHECK(r.out == heraklit::test::fixture_text("restaurant.hkt"));

  std::string messy = "/tmp/hkt_messy.hkt";
  std::ofstream(messy) << "sort S={b,a};place p:S;\nmarking{p:{b,a};}";
  auto w = run({"fmt", messy, "-i"});
  CHECK(w.code == 0);
  std::string after = heraklit::test::read_text_file(messy);
  CHECK(after.find("sort S = {a, b};") != std::string::npos);
  CHECK(after.find("p: {a, b};") != std::string::npos);
}

TEST_CASE("identical argv and seed give byte-identical output") {
  std::vector<std::vector<std::string>> invocations = {
      {"simulate", fixture_path("restaurant2.hkt"), "--steps", "6", "--policy", "random",
       "--seed", "99"},
      {"simulate", fixture_path("restaurant2.hkt"), "--steps", "6", "--policy", "random",
       "--seed", "99", "--json", "-"},
      {"space", fixture_path("restaurant2.hkt"), "--max-states", "500", "--json", "-"},
      {"space", fixture_path("restaurant2.hkt"), "--max-states", "500", "--dot", "-"},
      {"fmt", fixture_path("restaurant2.hkt")},
      {"bindings", fixture_path("restaurant2.hkt")},
  };
  for (const auto& argv : invocations) {
    auto a = run(argv);
    auto b = run(argv);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("the token game plays, undoes, and prints a replayable transcript") {
  auto r = run({"play", fixture_path("restaurant.hkt")}, "1\n1\nq\n");
  CHECK(r.code == 0);
  CHECK(r.out.find("enabled:") != std::string::npos);
  CHECK(r.out.find("1) enter[xc=alice, xt=1]") != std::string::npos);
  CHECK(r.out.find("trace:") != std::string::npos);
  // The final state has no enabled occurrence, so quitting there reports
  // the deadlock, not a user stop.
  CHECK(r.out.find("reason: deadlock") != std::string::npos);
  CHECK(r.out.find("orders: {(1, {fish})}") != std::string::npos);

  auto stopped = run({"play", fixture_path("restaurant.hkt")}, "1\nq\n");
  CHECK(stopped.out.find("reason: user-stop") != std::string::npos);
  CHECK(stopped.out.find("ready: {(alice, 1)}") != std::string::npos);

  // Same choices, same final marking.
  auto again = run({"play", fixture_path("restaurant.hkt")}, "1\n1\nq\n");
  CHECK(again.out == r.out);

  // Undo rewinds one step: selecting 2 afterwards picks a different dish.
  auto undone = run({"play", fixture_path("restaurant.hkt")}, "1\n1\nu\n2\nq\n");
  CHECK(undone.code == 0);
  CHECK(undone.out.find("orders: {(1, {fish, meat})}") != std::string::npos);

  // Deadlock is reported when no occurrence is enabled; EOF quits.
  auto dead = run({"play", fixture_path("restaurant.hkt")}, "1\n3\n");
  CHECK(dead.code == 0);
  CHECK(dead.out.find("reason: deadlock") != std::string::npos);

  // Bad input is tolerated.
  auto noisy = run({"play", fixture_path("restaurant.hkt")}, "zz\n0\n99\nu\n1\nq\n");
  CHECK(noisy.code == 0);
  CHECK(noisy.out.find("unrecognized input 'zz'") != std::string::npos);
  CHECK(noisy.out.find("nothing to undo") != std::string::npos);
}

TEST_CASE("idempotent-produce flag relaxes contact at the CLI") {
  std::string model = "/tmp/hkt_idem.hkt";
  std::ofstream(model) << R"(
sort S = {a};
place p : S;
place q : S;
transition move { consume p : x; produce q : x; }
marking { p: {a}; q: {a}; }
)";
  auto strict = run({"bindings", model});
  CHECK(strict.out.empty());
  auto relaxed = run({"bindings", model, "--idempotent-produce"});
  CHECK(relaxed.out == "move[x=a]\n");
}
