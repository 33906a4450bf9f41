// SPDX-License-Identifier: Apache-2.0
#include "edgemp/verify.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "edgemp/certificates.hpp"
#include "edgemp/counting.hpp"
#include "edgemp/disjointness.hpp"
#include "edgemp/errors.hpp"
#include "edgemp/gcn.hpp"
#include "edgemp/ising.hpp"
#include "edgemp/manifest.hpp"
#include "edgemp/map_inference.hpp"
#include "edgemp/rng.hpp"
#include "edgemp/simulation.hpp"

namespace edgemp {

nlohmann::json SuiteResult::to_json() const {
  return {{"name", name}, {"title", title}, {"passed", passed}, {"detail", detail}, {"seconds", seconds}};
}

namespace {

/// Collects pass/fail state and the notes that make up a suite's detail.
class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return failure_.empty(); }
  std::string detail() const {
    if (!ok()) return "FAILED: " + failure_;
    std::string out;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  std::string failure_;
  std::vector<std::string> notes_;
};

EdgeInput random_input(std::size_t edges, std::size_t alphabet, Rng& rng) {
  EdgeInput input(edges);
  for (auto& s : input) s = static_cast<Symbol>(rng.below(alphabet));
  return input;
}

std::string str(std::size_t v) { return std::to_string(v); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

std::vector<std::size_t> sizes(const VerifyOptions& o, std::vector<std::size_t> defaults) {
  if (o.m) return {*o.m};
  return defaults;
}

constexpr std::size_t kSamples = 200;

void suite_map_protocol(const VerifyOptions& o, Checker& c) {
  for (std::size_t m : sizes(o, {2, 3, 4})) {
    const Graph g = build_hub_path_graph(m);
    const EdgeProtocol p = build_map_edge_protocol(m);
    c.require(p.rounds == 3 && p.memory_bits == 4, "protocol shape is not 3 rounds / 4 bits");
    std::size_t checked = 0, max_bits = 0;
    auto one = [&](const EdgeInput& input) {
      const BitTrace trace = run_edge_protocol(p, g, input);
      max_bits = std::max(max_bits, trace.max_state_bits);
      c.require(trace.rounds() == 3, "trace does not have 3 rounds");
      c.require(trace.outputs == dp_map_hub_path(g, input),
                "protocol output differs from the DP at m=" + str(m));
      ++checked;
    };
    if (m == 2) {
      for_each_input(g.num_edges(), kPotentialCount, one);
      c.require(checked == 4096, "expected 4096 inputs at m=2");
    } else {
      Rng rng = Rng::stream(o.seed, 100 + m);
      for (std::size_t k = 0; k < kSamples; ++k) one(random_input(g.num_edges(), kPotentialCount, rng));
    }
    c.require(max_bits == 4, "max state bits " + str(max_bits) + " at m=" + str(m));
    c.note("m=" + str(m) + ": " + str(checked) + (m == 2 ? " exhaustive" : " sampled") +
           " inputs, max state " + str(max_bits) + " bits");
  }
}

void suite_map_dp(const VerifyOptions& o, Checker& c) {
  for (std::size_t m : sizes(o, {2, 3, 4})) {
    const Graph g = build_hub_path_graph(m);
    std::size_t checked = 0;
    auto one = [&](const EdgeInput& input) {
      const Assignment dp = dp_map_hub_path(g, input);
      const Assignment brute = brute_force_map(g, input);
      c.require(energy(g, input, dp) == energy(g, input, brute), "DP energy differs at m=" + str(m));
      c.require(dp == brute, "DP assignment differs from brute force at m=" + str(m));
      ++checked;
    };
    if (m == 2) {
      for_each_input(g.num_edges(), kPotentialCount, one);
    } else {
      Rng rng = Rng::stream(o.seed, 200 + m);
      for (std::size_t k = 0; k < kSamples; ++k) one(random_input(g.num_edges(), kPotentialCount, rng));
    }
    c.note("m=" + str(m) + ": " + str(checked) + (m == 2 ? " exhaustive" : " sampled"));
  }
}

void suite_certificate(const VerifyOptions& o, Checker& c) {
  CertificateOptions opts;
  opts.jobs = o.jobs;
  for (std::size_t m : sizes(o, {2, 3})) {
    const Graph g = build_hub_path_graph(m);
    const auto inst = map_lower_bound_instance(m, 1);
    const TaskEvaluator task = [&g](const EdgeInput& input) { return dp_map_hub_path(g, input); };
    const auto report =
        certified_lower_bound(g, task, inst.K, inst.S, 1, kPotentialCount, inst.fixed, opts);
    const std::uint64_t expected = std::uint64_t{1} << m;
    c.require(report.exhaustive, "enumeration was not exhaustive at m=" + str(m));
    c.require(report.distinct_outputs == expected,
              "M=" + std::to_string(report.distinct_outputs) + " at m=" + str(m));
    c.require(report.bound == static_cast<double>(m), "bound " + fmt(report.bound) + " at m=" + str(m));
    for (std::uint64_t code = 0; code < expected; ++code) {
      std::vector<bool> y(m);
      for (std::size_t j = 0; j < m; ++j) y[j] = (code >> j) & 1U;
      const Assignment x = dp_map_hub_path(g, map_lower_bound_input(inst, y));
      for (std::size_t j = 1; j <= m; ++j)
        c.require(x[hub_path_vertex(m, 1, j)] == y[j - 1], "constructed completion does not force y at m=" + str(m));
    }
    c.note("m=" + str(m) + ": M=" + std::to_string(report.distinct_outputs) + ", bound " + fmt(report.bound) +
           " over " + std::to_string(report.completions_enumerated) + " completions");
  }
}

void suite_counting(const VerifyOptions& o, Checker& c) {
  for (std::size_t m : sizes(o, {2, 4, 5})) {
    const Graph g = build_depth2_tree(m);
    const SymmetricEdgeProtocol p = build_counting_edge_protocol(m);
    std::size_t checked = 0;
    std::uint64_t max_value = 0;
    auto one = [&](const EdgeInput& input) {
      const ValueTrace trace = run_symmetric_edge_protocol(p, g, input);
      c.require(trace.outputs == counting_task_g(g, input), "counting protocol differs at m=" + str(m));
      const auto sums = input_summation(g, input);
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        c.require(trace.states[2][e].as_count() == sums[e], "round-2 state is not C(I)_e at m=" + str(m));
      for (const auto& layer : trace.states)
        for (const auto& s : layer) max_value = std::max(max_value, s.as_count());
      ++checked;
    };
    if (m == 2) {
      for_each_input(g.num_edges(), 2, one);
    } else {
      Rng rng = Rng::stream(o.seed, 300 + m);
      for (std::size_t k = 0; k < kSamples; ++k) one(random_input(g.num_edges(), 2, rng));
    }
    c.require(max_value <= 2 * m + 1, "state value " + std::to_string(max_value) + " exceeds 2m+1");
    c.note("m=" + str(m) + ": " + str(checked) + " inputs, max state value " + std::to_string(max_value));
  }
  CertificateOptions opts;
  opts.jobs = o.jobs;
  for (std::size_t m : sizes(o, {2, 4})) {
    if (m % 2 != 0) continue;
    const Graph g = build_depth2_tree(m);
    const auto inst = counting_lower_bound_instance(m);
    const TaskEvaluator task = [&g](const EdgeInput& input) { return counting_task_g(g, input); };
    const auto report = certified_lower_bound(g, task, inst.K, inst.S, 1, 2, inst.fixed, opts);
    const std::uint64_t expected = std::uint64_t{1} << (m / 2);
    c.require(report.exhaustive && report.distinct_outputs >= expected,
              "counting certificate M=" + std::to_string(report.distinct_outputs) + " at m=" + str(m));
    c.note("certificate m=" + str(m) + ": M=" + std::to_string(report.distinct_outputs));
  }
}

void suite_disjointness(const VerifyOptions& o, Checker& c) {
  for (std::size_t n : {4, 6}) {
    const Graph g = build_complete(n);
    const EdgeProtocol p = build_disjointness_edge_protocol(n);
    c.require(p.rounds == 6 && p.memory_bits == 1, "protocol shape is not 6 rounds / 1 bit");
    std::size_t checked = 0;
    auto one = [&](const EdgeInput& input) {
      const BitTrace trace = run_edge_protocol(p, g, input);
      const VertexOutputs expected = disjointness_task_g(g, input);
      c.require(trace.rounds() == 6 && trace.max_state_bits == 1, "trace shape wrong at n=" + str(n));
      c.require(trace.outputs == expected, "protocol differs from the task at n=" + str(n));
      for (const auto& s : trace.final_states()) c.require(s[0] == expected[0], "round-6 state is not g(I)");
      const auto [x, y] = disjointness_split(g, input);
      c.require(expected[0] == !disj(x, y), "g(I) != 1 - DISJ(X, Y) at n=" + str(n));
      ++checked;
    };
    if (n == 4) {
      for_each_input(g.num_edges(), 2, one);
    } else {
      Rng rng = Rng::stream(o.seed, 400 + n);
      for (std::size_t k = 0; k < kSamples; ++k) one(random_input(g.num_edges(), 2, rng));
    }
    c.note("n=" + str(n) + ": " + str(checked) + " inputs");
  }
}

void suite_edge_simulation(const VerifyOptions&, Checker& c) {
  struct Case {
    std::string label;
    Graph graph;
    EdgeProtocol protocol;
    std::size_t alphabet;
  };
  std::vector<Case> cases;
  cases.push_back({"map m=2", build_hub_path_graph(2), build_map_edge_protocol(2), kPotentialCount});
  cases.push_back({"copy star n=3", build_star(3), build_copy_edge_protocol(), 2});
  for (const auto& cs : cases) {
    const NodeProtocol sim = simulate_edge_with_node(cs.protocol, cs.graph);
    const SimulationLayout layout = simulation_layout(cs.protocol, cs.graph);
    c.require(sim.rounds == cs.protocol.rounds + 1, cs.label + ": simulation is not T+1 rounds");
    const std::size_t limit = layout.max_degree * cs.protocol.memory_bits + layout.overhead_bits();
    std::size_t checked = 0, max_bits = 0;
    for_each_input(cs.graph.num_edges(), cs.alphabet, [&](const EdgeInput& input) {
      const BitTrace trace = run_node_protocol(sim, cs.graph, input);
      max_bits = std::max(max_bits, trace.max_state_bits);
      c.require(trace.outputs == edge_outputs(cs.protocol, cs.graph, input), cs.label + ": outputs differ");
      ++checked;
    });
    c.require(max_bits <= limit, cs.label + ": node memory " + str(max_bits) + " > " + str(limit));
    c.note(cs.label + ": " + str(checked) + " inputs, node memory " + str(max_bits) + " bits (Delta*B=" +
           str(layout.max_degree * cs.protocol.memory_bits) + ", overhead " + str(layout.overhead_bits()) + ")");
  }
}

void suite_symmetric_simulation(const VerifyOptions&, Checker& c) {
  struct Case {
    std::string label;
    Graph graph;
    SymmetricEdgeProtocol protocol;
  };
  std::vector<Case> cases;
  cases.push_back({"counting m=2", build_depth2_tree(2), build_counting_edge_protocol(2)});
  cases.push_back({"copy star n=3", build_star(3), build_symmetric_copy_edge_protocol()});
  for (const auto& cs : cases) {
    const SymmetricNodeProtocol sim = symmetric_edge_to_node(cs.protocol);
    c.require(sim.rounds == cs.protocol.rounds + 1, cs.label + ": simulation is not T+1 rounds");
    std::size_t checked = 0;
    for_each_input(cs.graph.num_edges(), 2, [&](const EdgeInput& input) {
      c.require(symmetric_node_outputs(sim, cs.graph, input) ==
                    symmetric_edge_outputs(cs.protocol, cs.graph, input),
                cs.label + ": outputs differ");
      ++checked;
    });
    c.note(cs.label + ": " + str(checked) + " inputs, " + str(sim.rounds) + " rounds");
  }
}

void suite_bp(const VerifyOptions& o, Checker& c) {
  std::vector<Graph> graphs;
  Rng rng = Rng::stream(o.seed, 800);
  for (std::size_t k = 0; k < 100; ++k) graphs.push_back(random_tree(2 + rng.below(11), rng.next()));
  graphs.push_back(build_path(10));
  graphs.push_back(build_complete_binary_tree(3));
  double bp_err = 0.0, dp_err = 0.0, root_err = 0.0;
  for (const Graph& g : graphs) {
    IsingModel model{g, std::vector<double>(g.num_edges(), 1.0), std::vector<double>(g.num_vertices())};
    for (double& h : model.h) h = rng.normal();
    const auto exact = exact_marginals_bruteforce(model);
    const auto bp = bp_marginals(model);
    const auto dp0 = directed_node_dp(model, 0);
    for (std::size_t v = 0; v < exact.size(); ++v) {
      bp_err = std::max(bp_err, std::abs(bp[v] - exact[v]));
      dp_err = std::max(dp_err, std::abs(dp0[v] - bp[v]));
    }
    for (VertexId r = 1; r < g.num_vertices(); ++r) {
      const auto dpr = directed_node_dp(model, r);
      for (std::size_t v = 0; v < dpr.size(); ++v) root_err = std::max(root_err, std::abs(dpr[v] - dp0[v]));
    }
  }
  c.require(bp_err <= 1e-9, "BP error " + fmt(bp_err));
  c.require(dp_err <= 1e-12, "node DP differs from BP by " + fmt(dp_err));
  c.require(root_err <= 1e-12, "node DP root dependence " + fmt(root_err));
  c.note(str(graphs.size()) + " trees; max |BP-exact| " + fmt(bp_err) + ", |DP-BP| " + fmt(dp_err) +
         ", root spread " + fmt(root_err));
}

Graph random_graph(Rng& rng) {
  const std::size_t n = 2 + rng.below(9);
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (rng.uniform() < 0.4) edges.push_back({a, b});
  if (edges.empty()) edges.push_back({0, 1});
  return Graph(n, std::move(edges));
}

FeatureMap random_features(std::size_t count, std::size_t width, Rng& rng) {
  FeatureMap h(count, std::vector<double>(width));
  for (auto& row : h)
    for (double& v : row) v = rng.normal();
  return h;
}

void suite_gcn(const VerifyOptions& o, Checker& c) {
  Rng rng = Rng::stream(o.seed, 900);
  const std::size_t width = 4;
  for (std::size_t k = 0; k < 20; ++k) {
    const Graph g = random_graph(rng);
    const GcnStack stack = GcnStack::random(3, width, 0.5, rng);
    const FeatureMap h0 = random_features(g.num_edges(), width, rng);
    c.require(edge_gcn_forward(g, stack, h0) == node_gcn_forward(line_graph(g), stack, h0),
              "edge GCN differs from node GCN on the line graph (graph " + str(k) + ")");
  }
  const Graph g = random_graph(rng);
  for (std::size_t depth = 1; depth <= 10; ++depth) {
    const GcnStack zero = GcnStack::zeros(depth, width);
    const FeatureMap hv = random_features(g.num_vertices(), width, rng);
    const FeatureMap he = random_features(g.num_edges(), width, rng);
    c.require(node_gcn_forward(g, zero, hv) == hv, "node residual identity fails at depth " + str(depth));
    c.require(edge_gcn_forward(g, zero, he) == he, "edge residual identity fails at depth " + str(depth));
  }
  c.note("20 random graphs bit-identical; zero-weight identity at depths 1-10");
}

void suite_reproducibility(const VerifyOptions& o, Checker& c) {
  const std::vector<std::pair<std::string, std::function<nlohmann::json()>>> generators = {
      {"hub_path", [] { return to_json(build_hub_path_graph(4)); }},
      {"depth2_tree", [] { return to_json(build_depth2_tree(3)); }},
      {"star", [] { return to_json(build_star(5)); }},
      {"complete", [] { return to_json(build_complete(6)); }},
      {"path", [] { return to_json(build_path(30)); }},
      {"binary_tree", [] { return to_json(build_complete_binary_tree(4)); }},
      {"random_tree", [&] { return to_json(random_tree(25, o.seed)); }},
      {"line_graph", [] { return to_json(line_graph(build_hub_path_graph(3))); }},
      {"ising_binary_tree", [&] { return generate_ising_dataset({"binary_tree", 4, 0}, 5, o.seed, false); }},
      {"ising_path", [&] { return generate_ising_dataset({"path", 30, 0}, 5, o.seed, false); }},
      {"ising_random_tree", [&] { return generate_ising_dataset({"random_tree", 12, o.seed}, 5, o.seed); }},
      {"star_dataset", [&] {
         StarDatasetParams sp;
         sp.n_leaves = 16;
         sp.depth = 3;
         sp.n_samples = 5;
         sp.seed = o.seed;
         return generate_star_dataset(sp);
       }},
  };
  for (const auto& [name, make] : generators) {
    const std::string first = dump_artifact(make());
    const std::string second = dump_artifact(make());
    c.require(first == second, name + " is not byte-identical across runs");
    c.require(sha256_hex(first) == sha256_hex(second), name + " digest differs");
  }

  RunManifest manifest;
  manifest.command = "graph gen";
  manifest.argv = {"graph", "gen", "--family", "random_tree", "--n", "25", "--seed", std::to_string(o.seed)};
  manifest.params = {{"family", "random_tree"}, {"n", 25}};
  manifest.seeds = {{"seed", o.seed}};
  const std::string artifact = dump_artifact(to_json(random_tree(25, o.seed)));
  manifest.outputs["graph.json"] = sha256_hex(artifact);
  const RunManifest back = RunManifest::from_json(nlohmann::json::parse(manifest.to_json().dump()));
  c.require(back == manifest, "manifest does not round-trip through JSON");

  const auto dir = std::filesystem::temp_directory_path() / ("edgemp-verify-" + std::to_string(o.seed));
  std::filesystem::create_directories(dir);
  const auto out = dir / "graph.json";
  write_text_file(out, artifact);
  write_manifest(manifest, manifest_path_for(out));
  const RunManifest loaded = read_manifest(manifest_path_for(out));
  c.require(loaded == manifest, "manifest does not round-trip through a file");
  c.require(sha256_file(out) == loaded.outputs.at("graph.json"), "artifact digest does not match manifest");
  std::filesystem::remove_all(dir);
  c.note(str(generators.size()) + " generators byte-identical; manifest round-trips");
}

struct SuiteDef {
  const char* name;
  const char* title;
  void (*run)(const VerifyOptions&, Checker&);
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> defs = {
      {"map_protocol", "MAP edge protocol equals DP", suite_map_protocol},
      {"map_dp", "MAP DP equals brute force", suite_map_dp},
      {"certificate", "hub-path lower-bound certificate", suite_certificate},
      {"counting", "counting task protocol and certificate", suite_counting},
      {"disjointness", "disjointness protocol", suite_disjointness},
      {"edge_simulation", "edge protocol simulated by node protocol", suite_edge_simulation},
      {"symmetric_simulation", "symmetric edge protocol simulated by node protocol", suite_symmetric_simulation},
      {"bp", "belief propagation and node DP", suite_bp},
      {"gcn", "edge GCN equals node GCN on line graph", suite_gcn},
      {"reproducibility", "seeded generators and manifests", suite_reproducibility},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

std::vector<std::string> resolve_suites(const std::string& selector) {
  if (selector == "all") return suite_names();
  if (selector == "map") return {"map_protocol", "map_dp"};
  for (const auto& s : suite_names())
    if (s == selector) return {s};
  throw InvalidParameter("unknown suite '" + selector + "'");
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  for (const auto& def : suites()) {
    if (name != def.name) continue;
    SuiteResult result;
    result.name = def.name;
    result.title = def.title;
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      def.run(options, checker);
    } catch (const std::exception& e) {
      checker.require(false, std::string("exception: ") + e.what());
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.passed = checker.ok();
    result.detail = checker.detail();
    return result;
  }
  throw InvalidParameter("unknown suite '" + name + "'");
}

}  // namespace edgemp
