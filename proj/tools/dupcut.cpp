// Command-line surface: parse forests, solve the first-speciation problems,
// export the cut graphs, generate corpora, self-check the library's
// invariants, and benchmark approximate against exact solving.
//
// Exit codes: 0 ok, 1 property failure, 2 parse error, 3 limits exceeded,
// 4 genome mismatch, 5 I/O error, 6 usage error.

#include "CLI11.hpp"
#include "json.hpp"

#include "dupcut/cutgraph.hpp"
#include "dupcut/errors.hpp"
#include "dupcut/forest.hpp"
#include "dupcut/newick.hpp"
#include "dupcut/rng.hpp"
#include "dupcut/simgen.hpp"
#include "dupcut/solver.hpp"
#include "dupcut/version.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace dupcut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitParse = 2;
constexpr int kExitLimits = 3;
constexpr int kExitGenomes = 4;
constexpr int kExitIo = 5;
constexpr int kExitUsage = 6;

struct GlobalOpts {
  std::string json_target;  // empty = none, "-" = stdout, else file path
  bool timing = false;
  int threads = 1;
  int max_k = 0;  // 0 = library default
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed while writing '" + path + "'");
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::vector<std::string> sorted_names(const LabelSet& set, const GenomeTable& table) {
  std::vector<std::string> names;
  for (GenomeId g : set_members(set)) names.push_back(table.name(g));
  std::sort(names.begin(), names.end());
  return names;
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

json side_json(const LabelSet& set, const GenomeTable& table) { return sorted_names(set, table); }

// Parts sorted by their smallest member name.
std::vector<std::vector<std::string>> partition_names(const Partition& p,
                                                      const GenomeTable& table) {
  std::vector<std::vector<std::string>> parts;
  for (const LabelSet& part : p.parts) parts.push_back(sorted_names(part, table));
  std::sort(parts.begin(), parts.end());
  return parts;
}

std::string partition_text(const Partition& p, const GenomeTable& table) {
  std::vector<std::string> chunks;
  for (const auto& part : partition_names(p, table)) chunks.push_back(join(part));
  return join(chunks, " | ");
}

/// One run's payload: mirrored text lines and structured document.
struct OutputDoc {
  json doc;
  std::vector<std::string> text;

  void kv(const std::string& key, const std::string& value) { text.push_back(key + ": " + value); }
};

OutputDoc make_doc(const std::string& command, const std::vector<std::string>& argv_echo) {
  OutputDoc out;
  out.doc["tool"] = kToolName;
  out.doc["version"] = kVersion;
  out.doc["command"] = command;
  out.doc["invocation"] = join(argv_echo);
  out.kv("command", command);
  return out;
}

void attach_input(OutputDoc& out, const std::string& path, const GeneForest& f) {
  out.doc["input"] = {{"path", path},
                      {"trees", f.trees.size()},
                      {"genomes", f.genomes->size()},
                      {"internal_vertices", f.internal_count}};
  out.kv("input", path + " trees=" + std::to_string(f.trees.size()) +
                      " genomes=" + std::to_string(f.genomes->size()) +
                      " internal_vertices=" + std::to_string(f.internal_count));
}

int emit(OutputDoc& out, const GlobalOpts& g, double elapsed_ms, int code) {
  if (g.timing) {
    out.doc["timing_ms"] = format_ms(elapsed_ms);
    out.kv("time_ms", format_ms(elapsed_ms));
  }
  const std::string rendered = out.doc.dump(2) + "\n";
  if (g.json_target == "-") {
    std::fputs(rendered.c_str(), stdout);
    return code;
  }
  if (!g.json_target.empty()) write_file(g.json_target, rendered);
  for (const std::string& line : out.text) std::puts(line.c_str());
  return code;
}

GeneForest load_forest(const std::string& path) { return parse_newick_forest(read_file(path)); }

SolverLimits limits_from(const GlobalOpts& g) {
  SolverLimits limits;
  limits.threads = g.threads;
  if (g.max_k > 0) limits.exact_max_k = g.max_k;
  return limits;
}

int informative_tree_count(const GeneForest& f) {
  int count = 0;
  for (const GeneTree& t : f.trees) {
    bool any = false;
    for (const GeneNode& n : t.arena)
      if (!n.is_leaf() && n.labels.count() >= 2) any = true;
    count += any;
  }
  return count;
}

// --- commands -----------------------------------------------------------

int cmd_approx(const std::string& input, bool certify, const GlobalOpts& g, OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  ApproxResult r = approx_mdbp(f);
  int code = kExitOk;
  json result{{"left", side_json(r.bipartition.left(), *f.genomes)},
              {"right", side_json(r.bipartition.right(), *f.genomes)},
              {"relaxed_value", r.relaxed_value},
              {"realized_cost", r.realized_cost},
              {"oracle_evaluations", r.oracle_evaluations}};
  out.kv("left", join(sorted_names(r.bipartition.left(), *f.genomes)));
  out.kv("right", join(sorted_names(r.bipartition.right(), *f.genomes)));
  out.kv("relaxed_value", std::to_string(r.relaxed_value));
  out.kv("realized_cost", std::to_string(r.realized_cost));
  out.kv("oracle_evaluations", std::to_string(r.oracle_evaluations));
  if (certify) {
    const ExactResult exact = exact_mdbp(f, false, limits_from(g));
    r.bound_certificate = exact.cost;
    const bool ok = r.relaxed_value <= 2 * exact.cost + 1 &&
                    r.realized_cost <= 2 * exact.cost + 1 && exact.cost <= r.realized_cost;
    result["exact_cost"] = exact.cost;
    result["bound_ok"] = ok;
    out.kv("exact_cost", std::to_string(exact.cost));
    out.kv("bound_ok", ok ? "yes" : "no");
    if (!ok) code = kExitProperty;
  }
  out.doc["result"] = std::move(result);
  return code;
}

int cmd_exact(const std::string& input, bool all, const GlobalOpts& g, OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  ExactResult r = exact_mdbp(f, all, limits_from(g));
  json result{{"cost", r.cost},
              {"left", side_json(r.bipartition.left(), *f.genomes)},
              {"right", side_json(r.bipartition.right(), *f.genomes)}};
  out.kv("cost", std::to_string(r.cost));
  out.kv("left", join(sorted_names(r.bipartition.left(), *f.genomes)));
  out.kv("right", join(sorted_names(r.bipartition.right(), *f.genomes)));
  if (all) {
    json cuts = json::array();
    out.kv("optimal_count", std::to_string(r.optimal_cuts->size()));
    for (const Bipartition& b : *r.optimal_cuts) {
      cuts.push_back({{"left", side_json(b.left(), *f.genomes)},
                      {"right", side_json(b.right(), *f.genomes)}});
      out.kv("optimal", join(sorted_names(b.left(), *f.genomes)) + " | " +
                            join(sorted_names(b.right(), *f.genomes)));
    }
    result["optimal_cuts"] = std::move(cuts);
  }
  out.doc["result"] = std::move(result);
  return kExitOk;
}

int cmd_mdpp(const std::string& input, const GlobalOpts& g, OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  PrefixResult r = exact_mdpp(f, limits_from(g));
  std::vector<std::string> labels;
  for (int l : r.prefix.vertex_labels) labels.push_back(std::to_string(l));
  out.doc["result"] = {{"size", r.size},
                       {"prefix", r.prefix.vertex_labels},
                       {"partition", partition_names(r.induced_partition, *f.genomes)}};
  out.kv("size", std::to_string(r.size));
  out.kv("prefix", labels.empty() ? "(empty)" : join(labels));
  out.kv("partition", partition_text(r.induced_partition, *f.genomes));
  return kExitOk;
}

int cmd_partition(const std::string& input, const GlobalOpts& g, OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  const SolverLimits limits = limits_from(g);
  const Partition pb = all_optimal_bipartition_partition(f, limits);
  const Partition pp = all_optimal_prefix_partition(f, limits);
  const bool equal = pb == pp;
  out.doc["result"] = {{"pb", partition_names(pb, *f.genomes)},
                       {"pp", partition_names(pp, *f.genomes)},
                       {"equal", equal}};
  out.kv("pb", partition_text(pb, *f.genomes));
  out.kv("pp", partition_text(pp, *f.genomes));
  out.kv("equal", equal ? "yes" : "no");
  return equal ? kExitOk : kExitProperty;
}

int cmd_decide(const std::string& input, const std::vector<std::string>& edge, int vertex,
               const GlobalOpts& g, OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  const SolverLimits limits = limits_from(g);
  if (!edge.empty()) {
    const GenomeId u = f.genomes->find(edge[0]);
    const GenomeId v = f.genomes->find(edge[1]);
    if (u < 0 || v < 0) throw UsageError("unknown genome name in --edge");
    int label = 0;
    try {
      label = std::stoi(edge[2]);
    } catch (const std::exception&) {
      throw UsageError("--edge label must be an integer");
    }
    bool in;
    try {
      in = edge_in_some_min_cut(f, u, v, label, limits);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    out.doc["result"] = {{"edge", {edge[0], edge[1], label}}, {"in_some_min_cut", in}};
    out.kv("edge", edge[0] + " " + edge[1] + " " + std::to_string(label));
    out.kv("in_some_min_cut", in ? "yes" : "no");
  } else {
    bool in;
    try {
      in = vertex_in_some_min_prefix(f, vertex, limits);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    out.doc["result"] = {{"vertex", vertex}, {"in_some_min_prefix", in}};
    out.kv("vertex", std::to_string(vertex));
    out.kv("in_some_min_prefix", in ? "yes" : "no");
  }
  return kExitOk;
}

int cmd_dupcost(const std::string& input, const std::string& species_path, OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  SpeciesTree s = parse_newick_species(read_file(species_path));
  const std::vector<int> dups = duplication_vertices(f, s);
  std::vector<std::string> labels;
  for (int l : dups) labels.push_back(std::to_string(l));
  out.doc["result"] = {{"species", species_path},
                       {"duplication_cost", dups.size()},
                       {"duplication_vertices", dups}};
  out.kv("species", species_path);
  out.kv("duplication_cost", std::to_string(dups.size()));
  out.kv("duplication_vertices", labels.empty() ? "(none)" : join(labels));
  return kExitOk;
}

int cmd_greedy(const std::string& input, const std::string& method, const GlobalOpts& g,
               OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  const GreedyMethod m = method == "exact" ? GreedyMethod::kExact : GreedyMethod::kApprox;
  GreedyResult r = greedy_species_tree(f, m, limits_from(g));
  json steps = json::array();
  out.kv("method", method);
  out.kv("tree", to_newick(r.tree));
  out.kv("total_duplications", std::to_string(r.total_duplications));
  out.kv("steps", std::to_string(r.steps.size()));
  for (const GreedyStep& s : r.steps) {
    steps.push_back({{"genomes", side_json(s.genomes, *f.genomes)},
                     {"left", side_json(s.bipartition.left(), *f.genomes)},
                     {"right", side_json(s.bipartition.right(), *f.genomes)},
                     {"d1", s.d1},
                     {"unconstrained", s.unconstrained}});
    out.kv("step", "genomes=" + join(sorted_names(s.genomes, *f.genomes)) +
                       " | left=" + join(sorted_names(s.bipartition.left(), *f.genomes)) +
                       " | right=" + join(sorted_names(s.bipartition.right(), *f.genomes)) +
                       " | d1=" + std::to_string(s.d1) +
                       " | unconstrained=" + (s.unconstrained ? "yes" : "no"));
  }
  out.doc["result"] = {{"method", method},
                       {"tree", to_newick(r.tree)},
                       {"total_duplications", r.total_duplications},
                       {"steps", std::move(steps)}};
  return kExitOk;
}

int cmd_graph(const std::string& input, const std::string& which, const std::string& dot_path,
              OutputDoc& out) {
  GeneForest f = load_forest(input);
  attach_input(out, input, f);
  const EdgeLabeledMultigraph graph = which == "H" ? build_graph_h(f) : build_graph_i(f);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < graph.edges.size(); ++i)
    if (i == 0 || graph.edges[i].u != graph.edges[i - 1].u ||
        graph.edges[i].v != graph.edges[i - 1].v)
      ++pairs;
  json result{{"which", which},
              {"vertices", graph.vertices.count()},
              {"pairs", pairs},
              {"labeled_edges", graph.edges.size()},
              {"labels", graph.labels.size()}};
  out.kv("which", which);
  out.kv("vertices", std::to_string(graph.vertices.count()));
  out.kv("pairs", std::to_string(pairs));
  out.kv("labeled_edges", std::to_string(graph.edges.size()));
  out.kv("labels", std::to_string(graph.labels.size()));
  if (!dot_path.empty()) {
    write_file(dot_path, export_dot(graph, *f.genomes));
    result["dot"] = dot_path;
    out.kv("dot", dot_path);
  }
  out.doc["result"] = std::move(result);
  return kExitOk;
}

int cmd_gen(bool uniform, int k, int trees, int leaves, int families, double p_dup, double p_loss,
            std::uint64_t seed, const std::string& out_forest, const std::string& out_species,
            OutputDoc& out) {
  if (k < 2) throw UsageError("--genomes must be at least 2");
  json result;
  if (uniform) {
    if (families > 0) throw UsageError("--families only applies to simulate mode");
    if (!out_species.empty()) throw UsageError("--species-out only applies to simulate mode");
    GeneForest f = random_forest_uniform(k, trees, leaves, seed);
    const std::string text = f.trees.empty() ? "" : to_newick(f);
    write_file(out_forest, text);
    result = {{"mode", "uniform"},       {"genomes", k},
              {"trees", trees},          {"leaves_per_tree", leaves},
              {"seed", seed},            {"forest", out_forest},
              {"forest_digest", hex64(fnv1a(text))}};
    out.kv("mode", "uniform");
    out.kv("genomes", std::to_string(k));
    out.kv("trees", std::to_string(trees));
    out.kv("leaves_per_tree", std::to_string(leaves));
    out.kv("seed", std::to_string(seed));
    out.kv("forest", out_forest);
    out.kv("forest_digest", hex64(fnv1a(text)));
  } else {
    if (families < 1) throw UsageError("simulate mode needs --families >= 1");
    if (p_dup < 0 || p_dup > 1 || p_loss < 0 || p_loss > 1)
      throw UsageError("event probabilities must lie in [0, 1]");
    if (p_dup + p_loss >= 1)
      std::fprintf(stderr, "warning: p_dup + p_loss >= 1; most lineages will die out\n");
    SpeciesTree s = random_species_tree(k, seed);
    auto [f, report] =
        random_gene_forest(s, SimConfig{k, families, p_dup, p_loss, mix_seed(seed, 0x6a11ULL)});
    const std::string text = f.trees.empty() ? "" : to_newick(f);
    write_file(out_forest, text);
    if (!out_species.empty()) write_file(out_species, to_newick(s) + "\n");
    char pd[32], pl[32];
    std::snprintf(pd, sizeof pd, "%g", p_dup);
    std::snprintf(pl, sizeof pl, "%g", p_loss);
    result = {{"mode", "simulate"},
              {"genomes", k},
              {"families", families},
              {"p_dup", pd},
              {"p_loss", pl},
              {"seed", seed},
              {"forest", out_forest},
              {"forest_digest", hex64(fnv1a(text))},
              {"planted_root_duplications", report.planted_root_duplications},
              {"surviving_families", report.surviving_families}};
    out.kv("mode", "simulate");
    out.kv("genomes", std::to_string(k));
    out.kv("families", std::to_string(families));
    out.kv("p_dup", pd);
    out.kv("p_loss", pl);
    out.kv("seed", std::to_string(seed));
    if (!out_species.empty()) {
      result["species"] = out_species;
      out.kv("species", out_species);
    }
    out.kv("forest", out_forest);
    out.kv("forest_digest", hex64(fnv1a(text)));
    out.kv("planted_root_duplications", std::to_string(report.planted_root_duplications));
    out.kv("surviving_families", std::to_string(report.surviving_families));
  }
  out.doc["result"] = std::move(result);
  return kExitOk;
}

GeneForest check_instance(std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0xc0deULL));
  for (;;) {
    const int k = 2 + static_cast<int>(uniform_below(rng, 7));       // up to 8
    const int trees = 1 + static_cast<int>(uniform_below(rng, 4));   // up to 4
    const int leaves = 2 + static_cast<int>(uniform_below(rng, 5));  // up to 6
    GeneForest f = random_forest_uniform(k, trees, leaves, rng());
    if (f.ground.count() >= 2) return f;
  }
}

int cmd_check(const std::string& input, int random_count, std::uint64_t seed, int samples,
              const GlobalOpts& g, OutputDoc& out) {
  std::vector<GeneForest> instances;
  if (!input.empty()) {
    instances.push_back(load_forest(input));
    attach_input(out, input, instances.back());
  } else {
    for (int i = 0; i < random_count; ++i)
      instances.push_back(check_instance(seed + static_cast<std::uint64_t>(i)));
  }

  const SolverLimits limits = limits_from(g);
  json checks = json::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    checks.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
    out.kv("check", name + (ok ? " ok (" : " FAIL (") + detail + ")");
    all_ok = all_ok && ok;
  };

  // Label-cut value of H agrees with the duplication count on every
  // bipartition of every instance.
  {
    bool ok = true;
    long long bipartitions = 0;
    for (const GeneForest& f : instances) {
      const std::vector<GenomeId> members = set_members(f.ground);
      if (members.size() > 12) throw LimitError("equivalence check needs at most 12 genomes");
      const std::uint64_t total = (std::uint64_t{1} << (members.size() - 1)) - 1;
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        LabelSet left(f.universe());
        left.set(static_cast<std::size_t>(members[0]));
        for (std::size_t i = 1; i < members.size(); ++i)
          if ((mask >> (i - 1)) & 1u) left.set(static_cast<std::size_t>(members[i]));
        Bipartition b(left, f.ground - left);
        ++bipartitions;
        if (cut_value_h(f, left) != d1_cost(f, b)) ok = false;
      }
    }
    record("h_cut_equals_d1", ok,
           "instances=" + std::to_string(instances.size()) +
               " bipartitions=" + std::to_string(bipartitions));
  }

  // The I-graph cut function never violates submodularity.
  {
    std::size_t violations = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      ForestOracle fo = make_i_oracle(instances[i]);
      violations += check_submodular(fo.oracle, samples, seed + i).size();
    }
    record("fI_submodularity", violations == 0,
           "instances=" + std::to_string(instances.size()) + " samples=" +
               std::to_string(samples) + " violations=" + std::to_string(violations));
  }

  // The built-in H-graph witness: submodularity must fail with deficit 1.
  {
    GeneForest f = parse_newick_forest("((a,b),(c,d));");
    ForestOracle fh = make_h_oracle(f);
    LabelSet a(4), b(4);
    a.set(0);
    a.set(2);  // {a,c}
    b.set(0);
    b.set(1);  // {a,b}
    const std::int64_t fa = fh.oracle.evaluate(a);
    const std::int64_t fb = fh.oracle.evaluate(b);
    const std::int64_t fu = fh.oracle.evaluate(a | b);
    const std::int64_t fi = fh.oracle.evaluate(a & b);
    const std::int64_t deficit = fu + fi - fa - fb;
    record("fH_counterexample", fa == 1 && fb == 0 && fu == 1 && fi == 1 && deficit == 1,
           "fA=" + std::to_string(fa) + " fB=" + std::to_string(fb) + " fAuB=" +
               std::to_string(fu) + " fAnB=" + std::to_string(fi) +
               " deficit=" + std::to_string(deficit));
  }

  // Minimum prefix size equals minimum bipartition cost.
  {
    bool ok = true;
    for (const GeneForest& f : instances)
      if (exact_mdpp(f, limits).size != exact_mdbp(f, false, limits).cost) ok = false;
    record("cut_prefix_duality", ok, "instances=" + std::to_string(instances.size()));
  }

  // Provable approximation bounds; the per-tree 2d+1 bound is reported but
  // does not gate, since several trees can each contribute a crossing label.
  {
    bool ok = true;
    int paper_excess = 0;
    for (const GeneForest& f : instances) {
      const ApproxResult a = approx_mdbp(f);
      const ExactResult e = exact_mdbp(f, false, limits);
      if (!(e.cost <= a.realized_cost && a.realized_cost <= a.relaxed_value)) ok = false;
      if (a.relaxed_value > 2 * e.cost + std::max(1, informative_tree_count(f))) ok = false;
      if (a.relaxed_value > 2 * e.cost + 1) ++paper_excess;
    }
    record("approx_bound", ok,
           "instances=" + std::to_string(instances.size()) +
               " single_tree_bound_excesses=" + std::to_string(paper_excess));
  }

  out.doc["result"] = {{"checks", std::move(checks)}, {"passed", all_ok}};
  out.kv("passed", all_ok ? "yes" : "no");
  return all_ok ? kExitOk : kExitProperty;
}

int cmd_bench(const std::vector<int>& sizes, std::uint64_t seed, int trees, int leaves,
              const GlobalOpts& g, OutputDoc& out) {
  using clock = std::chrono::steady_clock;
  const SolverLimits limits = limits_from(g);
  json rows = json::array();
  bool properties_ok = true;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int k = sizes[i];
    GeneForest f = random_forest_uniform(k, trees, leaves, mix_seed(seed, i));
    if (f.ground.count() < 2) continue;
    const std::string digest = hex64(fnv1a(to_newick(f)));
    const int kk = static_cast<int>(f.ground.count());

    const auto t0 = clock::now();
    const ApproxResult a = approx_mdbp(f);
    const auto t1 = clock::now();
    SolverLimits serial = limits;
    serial.threads = 1;
    const ExactResult e = exact_mdbp(f, false, serial);
    const auto t2 = clock::now();
    double exact_mt_ms = 0.0;
    if (limits.threads > 1) {
      const auto t3 = clock::now();
      const ExactResult em = exact_mdbp(f, false, limits);
      exact_mt_ms = std::chrono::duration<double, std::milli>(clock::now() - t3).count();
      if (em.cost != e.cost) properties_ok = false;
    }
    const double approx_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double exact_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();

    const std::uint64_t budget = static_cast<std::uint64_t>(4 * kk * kk * kk + 4 * kk * kk);
    const bool budget_ok = a.oracle_evaluations <= budget;
    properties_ok = properties_ok && budget_ok;
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3f",
                  static_cast<double>(a.realized_cost) / std::max(1, e.cost));

    json row{{"k", k},
             {"genomes", kk},
             {"internal_vertices", f.internal_count},
             {"digest", digest},
             {"relaxed_value", a.relaxed_value},
             {"realized_cost", a.realized_cost},
             {"exact_cost", e.cost},
             {"ratio", ratio},
             {"oracle_evaluations", a.oracle_evaluations},
             {"budget", budget},
             {"budget_ok", budget_ok}};
    std::string line = "bench: k=" + std::to_string(k) + " genomes=" + std::to_string(kk) +
                       " m=" + std::to_string(f.internal_count) + " digest=" + digest +
                       " relaxed=" + std::to_string(a.relaxed_value) +
                       " realized=" + std::to_string(a.realized_cost) +
                       " exact=" + std::to_string(e.cost) + " ratio=" + ratio +
                       " evals=" + std::to_string(a.oracle_evaluations) +
                       " budget=" + std::to_string(budget) +
                       " budget_ok=" + (budget_ok ? "yes" : "no") +
                       " approx_ms=" + format_ms(approx_ms) + " exact_ms=" + format_ms(exact_ms);
    if (limits.threads > 1)
      line +=
          " exact_mt_ms=" + format_ms(exact_mt_ms) + " threads=" + std::to_string(limits.threads);
    if (g.timing) {
      row["approx_ms"] = format_ms(approx_ms);
      row["exact_ms"] = format_ms(exact_ms);
      if (limits.threads > 1) row["exact_mt_ms"] = format_ms(exact_mt_ms);
    }
    rows.push_back(std::move(row));
    out.text.push_back(line);
  }
  out.doc["result"] = {{"rows", std::move(rows)}, {"properties_ok", properties_ok}};
  out.kv("properties_ok", properties_ok ? "yes" : "no");
  return properties_ok ? kExitOk : kExitProperty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kVersion +
               " - parsimonious first speciations from gene-tree forests"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--json", g.json_target,
                 "write the structured document to FILE, or '-' for stdout");
  app.add_flag("--timing", g.timing, "include wall-clock timing in the output");
  app.add_option("--threads", g.threads, "worker threads for exact enumerations")
      ->check(CLI::Range(1, 256));
  app.add_option("--max-k", g.max_k, "raise the exact enumeration genome limit (hard cap 22)")
      ->check(CLI::Range(2, 22));

  std::string input, species_path, dot_path, method = "approx", which = "H", out_forest,
                                             out_species;
  bool certify = false, all = false, uniform = false;
  std::vector<std::string> edge;
  int vertex = 0, random_count = 0, samples = 1000, gen_k = 0, gen_trees = 8, gen_leaves = 8,
      families = 0, bench_trees = 8, bench_leaves = 8;
  double p_dup = 0.1, p_loss = 0.1;
  std::uint64_t seed = 0;
  std::vector<int> sizes;

  CLI::App* approx = app.add_subcommand("approx", "approximate minimum-duplication bipartition");
  approx->add_option("-i,--input", input, "forest file")->required();
  approx->add_flag("--certify", certify, "also solve exactly and verify the bound");

  CLI::App* exact = app.add_subcommand("exact", "exact minimum-duplication bipartition");
  exact->add_option("-i,--input", input, "forest file")->required();
  exact->add_flag("--all", all, "collect every optimal bipartition");

  CLI::App* mdpp = app.add_subcommand("mdpp", "minimum duplication prefix");
  mdpp->add_option("-i,--input", input, "forest file")->required();

  CLI::App* partition = app.add_subcommand("partition", "meet of all optimal solutions");
  partition->add_option("-i,--input", input, "forest file")->required();

  CLI::App* decide = app.add_subcommand("decide", "membership in some optimal cut/prefix");
  decide->add_option("-i,--input", input, "forest file")->required();
  decide->add_option("--edge", edge, "genome names and label: U V LABEL")->expected(3);
  decide->add_option("--vertex", vertex, "internal vertex label");

  CLI::App* dupcost = app.add_subcommand("dupcost", "duplication cost against a species tree");
  dupcost->add_option("-i,--input", input, "forest file")->required();
  dupcost->add_option("-s,--species", species_path, "species tree file")->required();

  CLI::App* greedy = app.add_subcommand("greedy", "recursive species-tree heuristic");
  greedy->add_option("-i,--input", input, "forest file")->required();
  greedy->add_option("--method", method, "bipartition solver per step")
      ->check(CLI::IsMember({"approx", "exact"}));

  CLI::App* graph = app.add_subcommand("graph", "export the label-cut graphs");
  graph->add_option("-i,--input", input, "forest file")->required();
  graph->add_option("--which", which, "H or I")->check(CLI::IsMember({"H", "I"}));
  graph->add_option("--dot", dot_path, "write DOT to this path");

  CLI::App* gen = app.add_subcommand("gen", "generate forests (simulate or uniform)");
  gen->add_flag("--uniform", uniform, "uniform random topologies instead of simulation");
  gen->add_option("-k,--genomes", gen_k, "genome count")->required();
  gen->add_option("--trees", gen_trees, "trees (uniform mode)");
  gen->add_option("--leaves", gen_leaves, "leaves per tree (uniform mode)");
  gen->add_option("--families", families, "gene families (simulate mode)");
  gen->add_option("--p-dup", p_dup, "per-branch duplication probability");
  gen->add_option("--p-loss", p_loss, "per-branch loss probability");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("-o,--out", out_forest, "forest output path")->required();
  gen->add_option("--species-out", out_species, "species tree output path (simulate mode)");

  CLI::App* check = app.add_subcommand("check", "run the invariant self-checks");
  check->add_option("-i,--input", input, "forest file");
  check->add_option("--random", random_count, "number of random instances");
  check->add_option("--seed", seed, "generator seed");
  check->add_option("--samples", samples, "submodularity samples per instance")
      ->check(CLI::PositiveNumber);

  CLI::App* bench = app.add_subcommand("bench", "time approximate vs exact solving");
  bench->add_option("--sizes", sizes, "genome counts, e.g. --sizes 6 8 10")->required();
  bench->add_option("--seed", seed, "generator seed");
  bench->add_option("--trees", bench_trees, "trees per instance");
  bench->add_option("--leaves", bench_leaves, "leaves per tree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::vector<std::string> argv_echo;
  for (int i = 1; i < argc; ++i) argv_echo.emplace_back(argv[i]);

  try {
    const auto start = std::chrono::steady_clock::now();
    OutputDoc out = make_doc(app.get_subcommands().front()->get_name(), argv_echo);
    int code = kExitOk;
    if (approx->parsed()) {
      code = cmd_approx(input, certify, g, out);
    } else if (exact->parsed()) {
      code = cmd_exact(input, all, g, out);
    } else if (mdpp->parsed()) {
      code = cmd_mdpp(input, g, out);
    } else if (partition->parsed()) {
      code = cmd_partition(input, g, out);
    } else if (decide->parsed()) {
      if (edge.empty() == (vertex == 0))
        throw UsageError("decide needs exactly one of --edge or --vertex");
      code = cmd_decide(input, edge, vertex, g, out);
    } else if (dupcost->parsed()) {
      code = cmd_dupcost(input, species_path, out);
    } else if (greedy->parsed()) {
      code = cmd_greedy(input, method, g, out);
    } else if (graph->parsed()) {
      code = cmd_graph(input, which, dot_path, out);
    } else if (gen->parsed()) {
      code = cmd_gen(uniform, gen_k, gen_trees, gen_leaves, families, p_dup, p_loss, seed,
                     out_forest, out_species, out);
    } else if (check->parsed()) {
      if (input.empty() && random_count <= 0)
        throw UsageError("check needs --input or --random N");
      code = cmd_check(input, random_count, seed, samples, g, out);
    } else if (bench->parsed()) {
      code = cmd_bench(sizes, seed, bench_trees, bench_leaves, g, out);
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return emit(out, g, elapsed, code);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const LimitError& e) {
    std::fprintf(stderr, "limit exceeded: %s\n", e.what());
    return kExitLimits;
  } catch (const GenomeMismatchError& e) {
    std::fprintf(stderr, "genome mismatch: %s\n", e.what());
    return kExitGenomes;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
