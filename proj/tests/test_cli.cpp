#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  int code;
  std::string out;
};

// Runs the tool from the tests directory so relative data paths (and the
// invocation echo inside the document) are stable.
RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string("cd ") + DUPCUT_TEST_DIR + " && exec " + DUPCUT_BIN + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string golden_path(const std::string& name) {
  return std::string(DUPCUT_TEST_DIR) + "/golden/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: ", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool update_mode() { return std::getenv("DUPCUT_UPDATE_GOLDEN") != nullptr; }

// Byte-compares a run against its golden file and against a rerun.
void check_golden(const std::string& name, const std::string& args, int expected_code = 0) {
  CAPTURE(name);
  CAPTURE(args);
  const RunResult first = run_cli(args);
  CHECK(first.code == expected_code);
  const RunResult again = run_cli(args);
  CHECK(first.out == again.out);
  if (update_mode()) {
    std::ofstream out(golden_path(name), std::ios::binary);
    out << first.out;
    return;
  }
  CHECK(first.out == slurp(golden_path(name)));
}

}  // namespace

TEST_CASE("golden: structured output is byte-stable for every command") {
  check_golden("approx_speciation.json", "approx -i data/speciation.nwk --json -");
  check_golden("approx_certify_twin.json",
               "approx -i data/twin_cherries.nwk --certify --json -", 1);
  check_golden("exact_all_apparent.json", "exact -i data/apparent.nwk --all --json -");
  check_golden("mdpp_apparent.json", "mdpp -i data/apparent.nwk --json -");
  check_golden("partition_triple.json", "partition -i data/triple.nwk --json -");
  check_golden("decide_edge_apparent.json",
               "decide -i data/apparent.nwk --edge a b 1 --json -");
  check_golden("decide_vertex_apparent.json",
               "decide -i data/apparent.nwk --vertex 2 --json -");
  check_golden("dupcost_apparent.json",
               "dupcost -i data/apparent.nwk -s data/species_abc.nwk --json -");
  check_golden("greedy_two_trees.json", "greedy -i data/two_trees.nwk --json -");
  check_golden("graph_h_speciation.json",
               "graph -i data/speciation.nwk --which H --dot /tmp/dupcut_h.dot --json -");
  check_golden("graph_i_speciation.json", "graph -i data/speciation.nwk --which I --json -");
  check_golden("gen_uniform.json",
               "gen --uniform -k 4 --trees 3 --leaves 5 --seed 21 -o /tmp/dupcut_gen.nwk --json -");
  check_golden("gen_simulate.json",
               "gen -k 5 --families 6 --p-dup 0.2 --p-loss 0.1 --seed 11 -o /tmp/dupcut_fam.nwk "
               "--species-out /tmp/dupcut_sp.nwk --json -");
  check_golden("check_random.json", "check --random 5 --seed 7 --json -");
  check_golden("bench.json", "bench --sizes 6 8 --seed 3 --json -");
}

TEST_CASE("golden: DOT export bytes") {
  const RunResult r =
      run_cli("graph -i data/speciation.nwk --which H --dot /tmp/dupcut_h.dot --json -");
  CHECK(r.code == 0);
  if (update_mode()) {
    std::ofstream out(golden_path("speciation_h.dot"), std::ios::binary);
    out << slurp("/tmp/dupcut_h.dot");
    return;
  }
  CHECK(slurp("/tmp/dupcut_h.dot") == slurp(golden_path("speciation_h.dot")));
}

TEST_CASE("text and structured renderings carry the same values") {
  const RunResult text = run_cli("exact -i data/apparent.nwk");
  const RunResult doc = run_cli("exact -i data/apparent.nwk --json -");
  REQUIRE(doc.code == 0);
  const nlohmann::json j = nlohmann::json::parse(doc.out);
  CHECK(text.out.find("cost: " + j["result"]["cost"].dump()) != std::string::npos);
  std::string left;
  for (const auto& name : j["result"]["left"]) {
    if (!left.empty()) left += " ";
    left += name.get<std::string>();
  }
  CHECK(text.out.find("left: " + left) != std::string::npos);

  const RunResult atext = run_cli("approx -i data/speciation.nwk");
  const RunResult adoc = run_cli("approx -i data/speciation.nwk --json -");
  const nlohmann::json aj = nlohmann::json::parse(adoc.out);
  CHECK(atext.out.find("relaxed_value: " + aj["result"]["relaxed_value"].dump()) !=
        std::string::npos);
  CHECK(atext.out.find("realized_cost: " + aj["result"]["realized_cost"].dump()) !=
        std::string::npos);
}

TEST_CASE("self-check passes on a random corpus") {
  CHECK(run_cli("check --random 50 --seed 7").code == 0);
}

TEST_CASE("exit codes follow the table") {
  CHECK(run_cli("exact -i data/malformed.nwk").code == 2);                       // parse
  CHECK(run_cli("partition -i data/triple.nwk").code == 0);                      // ok
  CHECK(run_cli("approx -i data/twin_cherries.nwk --certify").code == 1);        // property
  CHECK(run_cli("dupcost -i data/mismatch.nwk -s data/species_abc.nwk").code == 4);
  CHECK(run_cli("graph -i data/speciation.nwk --which H --dot /nonexistent/x.dot").code == 5);
  CHECK(run_cli("decide -i data/apparent.nwk").code == 6);                       // usage
  CHECK(run_cli("check").code == 6);
  CHECK(run_cli("gen --uniform -k 1 -o /tmp/x.nwk").code == 6);
  CHECK(run_cli("gen --uniform -k 4 --families 3 -o /tmp/x.nwk").code == 6);
  CHECK(run_cli("exact -i data/too_big.nwk").code == 3);                         // limits
  CHECK(run_cli("nosuchcommand").code == 6);
}

TEST_CASE("approximation runs above the exact limit; certification does not") {
  CHECK(run_cli("approx -i data/too_big.nwk").code == 0);
  CHECK(run_cli("approx -i data/too_big.nwk --certify").code == 3);
}

TEST_CASE("greedy accepts the exact method") {
  const RunResult r = run_cli("greedy -i data/two_trees.nwk --method exact --json -");
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  // The name-lex tie-break peels {a} off first among the zero-cost splits,
  // so the exact method builds a caterpillar here; the cost matches approx.
  CHECK(j["result"]["tree"] == "(a,(b,(c,d)));");
  CHECK(j["result"]["total_duplications"] == 0);
}

TEST_CASE("timing is opt-in and stays out of the default document") {
  const RunResult plain = run_cli("exact -i data/apparent.nwk --json -");
  CHECK(plain.out.find("timing_ms") == std::string::npos);
  const RunResult timed = run_cli("exact -i data/apparent.nwk --timing --json -");
  CHECK(timed.out.find("timing_ms") != std::string::npos);
  const RunResult timed_text = run_cli("exact -i data/apparent.nwk --timing");
  CHECK(timed_text.out.find("time_ms: ") != std::string::npos);
}

TEST_CASE("threads flag does not change results") {
  const RunResult one = run_cli("exact -i data/wide.nwk --json -");
  const RunResult four = run_cli("exact -i data/wide.nwk --threads 4 --json -");
  REQUIRE(one.code == 0);
  const nlohmann::json a = nlohmann::json::parse(one.out);
  const nlohmann::json b = nlohmann::json::parse(four.out);
  CHECK(a["result"] == b["result"]);
}

TEST_CASE("generated files parse back and reports match the documented cases") {
  const RunResult lossy = run_cli(
      "gen -k 4 --families 8 --p-dup 0 --p-loss 1 --seed 2 -o /tmp/dupcut_lossy.nwk --json -");
  REQUIRE(lossy.code == 0);
  const nlohmann::json j = nlohmann::json::parse(lossy.out);
  CHECK(j["result"]["surviving_families"] == 0);
  CHECK(slurp("/tmp/dupcut_lossy.nwk").empty());

  const RunResult clean = run_cli(
      "gen -k 5 --families 4 --p-dup 0 --p-loss 0 --seed 3 -o /tmp/dupcut_clean.nwk "
      "--species-out /tmp/dupcut_clean_sp.nwk --json -");
  REQUIRE(clean.code == 0);
  const nlohmann::json cj = nlohmann::json::parse(clean.out);
  CHECK(cj["result"]["surviving_families"] == 4);
  CHECK(cj["result"]["planted_root_duplications"] == 0);
  // Every family reproduces the species topology when nothing happens.
  std::istringstream forest(slurp("/tmp/dupcut_clean.nwk"));
  std::string species = slurp("/tmp/dupcut_clean_sp.nwk");
  species.erase(species.find_last_not_of('\n') + 1);
  std::string line;
  int families = 0;
  while (std::getline(forest, line)) {
    CHECK(line == species);
    ++families;
  }
  CHECK(families == 4);
}
