// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
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
#include "edgemp/verify.hpp"

namespace edgemp::cli {
namespace {

using nlohmann::json;

struct Globals {
  std::string output;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::string format = "text";
};

/// Per-invocation state shared by the command handlers.
class Session {
 public:
  Session(const std::vector<std::string>& args, std::ostream& out) : args_(args), out_(out) {}

  Globals globals;

  json load(const std::string& path) {
    const std::string text = read_text_file(path);
    inputs_[path] = sha256_hex(text);
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw InvalidParameter("cannot parse " + path + ": " + e.what());
    }
  }

  /// Writes the artifact to -o (plus its manifest) or prints it.
  void emit(const std::string& command, const CLI::App& sub, const json& artifact, json seeds = json::object()) {
    const std::string text = dump_artifact(artifact);
    if (globals.output.empty()) {
      out_ << text;
      return;
    }
    write_text_file(globals.output, text);
    RunManifest m;
    m.command = command;
    m.argv = args_;
    m.params = collect_params(sub);
    m.seeds = std::move(seeds);
    m.inputs = inputs_;
    m.outputs[globals.output] = sha256_hex(text);
    write_manifest(m, manifest_path_for(globals.output));
  }

  std::ostream& out() { return out_; }

 private:
  static json collect_params(const CLI::App& sub) {
    json params = json::object();
    for (const CLI::App* app = &sub; app != nullptr; app = app->get_parent())
      for (const CLI::Option* opt : app->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        const auto& results = opt->results();
        const std::string name = opt->get_lnames().empty() ? opt->get_snames().front() : opt->get_lnames().front();
        if (!params.contains(name))
          params[name] = results.size() == 1 ? json(results.front()) : json(results);
      }
    return params;
  }

  std::vector<std::string> args_;
  std::ostream& out_;
  std::map<std::string, std::string> inputs_;
};

std::size_t graph_param(const Graph& g, const char* family, const char* key) {
  if (g.family() != family)
    throw InvalidParameter(std::string("expected a ") + family + " graph, got " + g.family());
  if (!g.params().contains(key)) throw InvalidParameter(std::string("graph is missing parameter ") + key);
  return g.params().at(key).get<std::size_t>();
}

std::pair<Graph, EdgeInput> edge_input_from_json(const json& j) {
  try {
    Graph g = graph_from_json(j.at("graph"));
    auto symbols = j.at("symbols").get<EdgeInput>();
    check_input_shape(g, symbols);
    return {std::move(g), std::move(symbols)};
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("bad edge input JSON: ") + e.what());
  }
}

json bits_json(const std::vector<bool>& bits) {
  json a = json::array();
  for (bool b : bits) a.push_back(b ? 1 : 0);
  return a;
}

// ---------------------------------------------------------------- graph

Graph make_graph(const std::string& family, std::optional<std::size_t> m, std::optional<std::size_t> n,
                 std::optional<std::size_t> depth, std::uint64_t seed) {
  auto need = [&](const std::optional<std::size_t>& v, const char* flag) {
    if (!v) throw InvalidParameter("family " + family + " requires --" + flag);
    return *v;
  };
  if (family == "hub_path") return build_hub_path_graph(need(m, "m"));
  if (family == "depth2_tree") return build_depth2_tree(need(m, "m"));
  if (family == "star") return build_star(need(n, "n"));
  if (family == "complete") return build_complete(need(n, "n"));
  if (family == "path") return build_path(need(n, "n"));
  if (family == "binary_tree") return build_complete_binary_tree(need(depth, "depth"));
  if (family == "random_tree") return random_tree(need(n, "n"), seed);
  throw InvalidParameter("unknown graph family " + family);
}

// ------------------------------------------------------------- protocols

const std::vector<std::pair<std::string, std::string>>& protocol_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = {
      {"copy", "edge, any graph: 1 round, 1 bit, vertex outputs OR of incident inputs"},
      {"symmetric-copy", "symmetric edge, any graph: same as copy"},
      {"map", "edge, hub_path: 3 rounds, 4 bits, MAP assignment"},
      {"counting", "symmetric edge, depth2_tree: 3 rounds, input-summation counting task"},
      {"large-alphabet", "symmetric edge, star: 2 rounds, duplicate detection over symbols 1..n"},
      {"histogram", "node, star: 2 rounds, root histogram of leaf symbols"},
      {"disjointness", "edge, complete graph: 6 rounds, 1 bit"},
  };
  return catalog;
}

json protocol_header(const std::string& name, std::size_t rounds, std::size_t bits, const std::string& sim) {
  return {{"protocol", name}, {"rounds", rounds}, {"memory_bits", bits}, {"simulation", sim}};
}

json run_named_protocol(const std::string& name, const std::string& simulate, const Graph& g,
                        const EdgeInput& input) {
  std::optional<EdgeProtocol> plain;
  std::optional<SymmetricEdgeProtocol> symmetric;
  if (name == "copy") plain = build_copy_edge_protocol();
  else if (name == "symmetric-copy") symmetric = build_symmetric_copy_edge_protocol();
  else if (name == "map") plain = build_map_edge_protocol(graph_param(g, "hub_path", "m"));
  else if (name == "counting") symmetric = build_counting_edge_protocol(graph_param(g, "depth2_tree", "m"));
  else if (name == "large-alphabet")
    symmetric = build_large_alphabet_edge_protocol(graph_param(g, "star", "n"));
  else if (name == "disjointness") plain = build_disjointness_edge_protocol(graph_param(g, "complete", "n"));
  else if (name == "histogram") {
    if (simulate != "none") throw InvalidParameter("histogram is already a node protocol");
    const NodeProtocol p = build_histogram_node_protocol(graph_param(g, "star", "n"));
    json j = protocol_header(p.name, p.rounds, p.memory_bits, simulate);
    j["trace"] = to_json(run_node_protocol(p, g, input));
    return j;
  } else {
    throw InvalidParameter("unknown protocol " + name);
  }

  if (symmetric && simulate == "node") {
    plain = to_plain(*symmetric);
    symmetric.reset();
  }
  if (plain) {
    if (simulate == "symmetric-node") throw InvalidParameter(name + " is not a symmetric protocol");
    if (simulate == "node") {
      const NodeProtocol sim = simulate_edge_with_node(*plain, g);
      json j = protocol_header(sim.name, sim.rounds, sim.memory_bits, simulate);
      const SimulationLayout layout = simulation_layout(*plain, g);
      j["layout"] = {{"edge_bits", layout.edge_bits},
                     {"max_degree", layout.max_degree},
                     {"header_bits", layout.header_bits},
                     {"overhead_bits", layout.overhead_bits()},
                     {"total_bits", layout.total_bits()}};
      j["trace"] = to_json(run_node_protocol(sim, g, input));
      return j;
    }
    json j = protocol_header(plain->name, plain->rounds, plain->memory_bits, simulate);
    j["trace"] = to_json(run_edge_protocol(*plain, g, input));
    return j;
  }
  if (simulate == "symmetric-node") {
    const SymmetricNodeProtocol sim = symmetric_edge_to_node(*symmetric);
    json j = protocol_header(sim.name, sim.rounds, sim.memory_bits, simulate);
    j["trace"] = to_json(run_symmetric_node_protocol(sim, g, input));
    return j;
  }
  json j = protocol_header(symmetric->name, symmetric->rounds, symmetric->memory_bits, simulate);
  j["trace"] = to_json(run_symmetric_edge_protocol(*symmetric, g, input));
  return j;
}

// ------------------------------------------------------------------ tasks

json eval_task(const std::string& task, const Graph& g, const EdgeInput& input) {
  json j = {{"task", task}};
  if (task == "counting") {
    graph_param(g, "depth2_tree", "m");
    j["input_summation"] = input_summation(g, input);
    j["outputs"] = bits_json(counting_task_g(g, input));
  } else if (task == "large-alphabet") {
    graph_param(g, "star", "n");
    j["outputs"] = bits_json(large_alphabet_task_g(g, input));
  } else if (task == "disjointness") {
    graph_param(g, "complete", "n");
    const auto outputs = disjointness_task_g(g, input);
    const auto [x, y] = disjointness_split(g, input);
    j["outputs"] = bits_json(outputs);
    j["X"] = bits_json(x);
    j["Y"] = bits_json(y);
    j["disj"] = disj(x, y) ? 1 : 0;
  } else {
    throw InvalidParameter("unknown task " + task);
  }
  return j;
}

// ------------------------------------------------------------------ ising

IsingModel ising_from_json(const json& j) {
  try {
    IsingModel model;
    model.graph = graph_from_json(j.at("graph"));
    if (!j.contains("J") || j["J"].is_number())
      model.J.assign(model.graph.num_edges(), j.value("J", 1.0));
    else
      model.J = j["J"].get<std::vector<double>>();
    model.h = j.at("h").get<std::vector<double>>();
    model.validate();
    return model;
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("bad Ising model JSON: ") + e.what());
  }
}

// -------------------------------------------------------------------- gcn

FeatureMap features_from_json(const json& j) {
  try {
    return j.get<FeatureMap>();
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("features must be an array of vectors: ") + e.what());
  }
}

FeatureMap random_feature_map(std::size_t rows, std::size_t width, Rng& rng) {
  FeatureMap h(rows, std::vector<double>(width));
  for (auto& row : h)
    for (double& v : row) v = rng.normal();
  return h;
}

// ----------------------------------------------------------------- verify

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

/// Re-executes the command recorded in a manifest with its output
/// redirected to a scratch file and compares the output digest.
SuiteResult replay_manifest(const std::string& path, std::ostream& err) {
  SuiteResult result;
  result.name = "manifest";
  result.title = "replay " + path;
  const RunManifest m = read_manifest(path);
  if (m.outputs.size() != 1) throw InvalidParameter("manifest must record exactly one output");
  const auto& [recorded_path, recorded_digest] = *m.outputs.begin();

  const auto dir = std::filesystem::temp_directory_path() /
                   ("edgemp-replay-" + sha256_hex(path + recorded_digest).substr(0, 16));
  std::filesystem::create_directories(dir);
  const auto scratch = (dir / "artifact.json").string();
  std::vector<std::string> args = m.argv;
  bool redirected = false;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "-o" || args[i] == "--output") {
      args[i + 1] = scratch;
      redirected = true;
    }
  for (auto& a : args)
    if (a.rfind("--output=", 0) == 0) {
      a = "--output=" + scratch;
      redirected = true;
    }
  if (!redirected) throw InvalidParameter("manifest command has no output flag");

  std::ostringstream sink;
  const int code = run(args, sink, err);
  const std::string digest = code == kExitOk ? sha256_file(scratch) : std::string();
  std::filesystem::remove_all(dir);
  result.passed = code == kExitOk && digest == recorded_digest;
  result.detail = result.passed ? "output digest matches " + recorded_digest.substr(0, 16)
                                : "replay of '" + m.command + "' produced a different artifact";
  return result;
}

int print_verify(Session& s, const std::vector<SuiteResult>& results, const CLI::App& sub) {
  bool all = true;
  json report = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    report.push_back(r.to_json());
  }
  if (s.globals.format == "json") {
    s.out() << dump_artifact({{"passed", all}, {"suites", report}});
  } else {
    for (const auto& r : results) {
      std::ostringstream secs;
      secs << std::fixed << std::setprecision(2) << r.seconds << "s";
      s.out() << (r.passed ? "PASS  " : "FAIL  ") << pad(r.name, 22) << pad(secs.str(), 9) << r.detail << "\n";
    }
    s.out() << (all ? "all suites passed" : "verification FAILED") << "\n";
  }
  if (!s.globals.output.empty()) {
    s.emit("verify", sub, {{"passed", all}, {"suites", report}}, {{"seed", s.globals.seed}});
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session(args, out);
  Globals& G = session.globals;

  CLI::App app{"Edge and node message-passing protocols, MAP inference, lower-bound certificates, "
               "belief propagation and GCN forward passes.",
               "edgemp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", G.output, "Write the JSON artifact here (plus <output>.manifest.json)");
  app.add_option("--seed", G.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", G.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--budget", G.budget, "Evaluation budget for certificate search")->capture_default_str();
  app.add_option("--format", G.format, "Report format for verify")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // graph
  auto* graph = app.add_subcommand("graph", "Construct graphs");
  graph->require_subcommand(1);
  auto* graph_gen = graph->add_subcommand("gen", "Build a graph from a named family");
  std::string family;
  std::optional<std::size_t> opt_m, opt_n, opt_depth;
  graph_gen->add_option("--family", family, "hub_path, depth2_tree, star, complete, path, binary_tree, random_tree")
      ->required();
  graph_gen->add_option("--m", opt_m, "Size parameter of hub_path and depth2_tree");
  graph_gen->add_option("--n", opt_n, "Vertex count of star (leaves), complete, path, random_tree");
  graph_gen->add_option("--depth", opt_depth, "Depth of binary_tree");
  auto* graph_line = graph->add_subcommand("line", "Line graph of a graph file");
  std::string input_path;
  graph_line->add_option("--input", input_path, "Graph JSON")->required();

  // protocol
  auto* protocol = app.add_subcommand("protocol", "Run the built-in protocols");
  protocol->require_subcommand(1);
  auto* protocol_list = protocol->add_subcommand("list", "List built-in protocols");
  auto* protocol_run = protocol->add_subcommand("run", "Run a protocol and dump its trace");
  std::string protocol_name, simulate = "none";
  protocol_run->add_option("--name", protocol_name, "Protocol name (see protocol list)")->required();
  protocol_run->add_option("--input", input_path, "Edge input JSON {graph, symbols}")->required();
  protocol_run->add_option("--simulate", simulate, "Run through a node-protocol simulation")
      ->check(CLI::IsMember({"none", "node", "symmetric-node"}))
      ->capture_default_str();

  // map
  auto* map = app.add_subcommand("map", "MAP inference on hub-path graphs");
  map->require_subcommand(1);
  auto* map_solve = map->add_subcommand("solve", "Compute a MAP assignment");
  std::string method = "dp";
  map_solve->add_option("--method", method)->check(CLI::IsMember({"dp", "brute", "edge-protocol"}))->capture_default_str();
  map_solve->add_option("--m", opt_m, "Expected hub-path size (checked against the input graph)");
  map_solve->add_option("--input", input_path, "Potential assignment JSON {graph, symbols}")->required();

  // certify
  auto* certify = app.add_subcommand("certify", "Light-cone lower-bound certificate");
  std::string task;
  std::size_t cert_m = 0, cert_T = 1;
  bool search_if = false;
  certify->add_option("--task", task)->check(CLI::IsMember({"map", "counting"}))->required();
  certify->add_option("--m", cert_m)->required();
  certify->add_option("--T", cert_T, "Rounds")->capture_default_str();
  certify->add_flag("--search-if", search_if, "Search over I_F within the budget instead of using the built-in one");

  // task
  auto* task_cmd = app.add_subcommand("task", "Evaluate target functions");
  task_cmd->require_subcommand(1);
  auto* task_eval = task_cmd->add_subcommand("eval", "Evaluate a task on an edge input");
  task_eval->add_option("--task", task)->check(CLI::IsMember({"counting", "large-alphabet", "disjointness"}))->required();
  task_eval->add_option("--input", input_path, "Edge input JSON {graph, symbols}")->required();

  // ising
  auto* ising = app.add_subcommand("ising", "Ising marginals on trees");
  ising->require_subcommand(1);
  auto* ising_marg = ising->add_subcommand("marginals", "Marginals E[x_v]");
  std::optional<std::size_t> root;
  std::optional<std::size_t> iterations;
  ising_marg->add_option("--method", method)->check(CLI::IsMember({"bp", "brute", "node-dp"}))->required();
  ising_marg->add_option("--input", input_path, "Model JSON {graph, J, h}")->required();
  ising_marg->add_option("--root", root, "Root for node-dp (default 0)");
  ising_marg->add_option("--iterations", iterations, "BP iterations (default twice the diameter)");
  auto* ising_data = ising->add_subcommand("dataset", "Generate a BP-labelled dataset");
  std::string topology;
  std::size_t topo_size = 0, samples = 0;
  std::uint64_t graph_seed = 0;
  bool no_cross_check = false;
  ising_data->add_option("--topology", topology)->check(CLI::IsMember({"binary_tree", "path", "random_tree"}))->required();
  ising_data->add_option("--size", topo_size, "Depth (binary_tree) or vertex count")->required();
  ising_data->add_option("--samples", samples)->required();
  ising_data->add_option("--graph-seed", graph_seed, "Seed of the random_tree topology")->capture_default_str();
  ising_data->add_flag("--no-cross-check", no_cross_check, "Skip the brute-force check on small graphs");

  // star-dataset
  auto* star = app.add_subcommand("star-dataset", "Planted edge-GCN regression data on a star");
  star->require_subcommand(1);
  auto* star_gen = star->add_subcommand("gen", "Generate the dataset");
  StarDatasetParams sp;
  star_gen->add_option("--n-leaves", sp.n_leaves)->capture_default_str();
  star_gen->add_option("--depth", sp.depth)->capture_default_str();
  star_gen->add_option("--width", sp.width)->capture_default_str();
  star_gen->add_option("--samples", sp.n_samples)->capture_default_str();
  star_gen->add_option("--weight-std", sp.weight_std, "Negative means 1/sqrt(width)")->capture_default_str();

  // gcn
  auto* gcn = app.add_subcommand("gcn", "GCN forward passes");
  gcn->require_subcommand(1);
  auto* gcn_fwd = gcn->add_subcommand("forward", "Forward pass of a residual mean-aggregation GCN");
  std::string mode, weights_path, features_path;
  std::size_t gcn_depth = 1, gcn_width = 4;
  bool from_nodes = false;
  gcn_fwd->add_option("--mode", mode)->check(CLI::IsMember({"node", "edge"}))->required();
  gcn_fwd->add_option("--graph", input_path, "Graph JSON")->required();
  gcn_fwd->add_option("--weights", weights_path, "Weight stack JSON (default: random from --seed)");
  gcn_fwd->add_option("--features", features_path, "Initial features (default: random from --seed)");
  gcn_fwd->add_flag("--from-nodes", from_nodes, "Edge mode: features are per vertex; each edge gets (x_u, x_v), u < v");
  gcn_fwd->add_option("--depth", gcn_depth, "Depth of random weights")->capture_default_str();
  gcn_fwd->add_option("--width", gcn_width, "Width of random weights")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  std::string suite = "all", manifest_path;
  verify->add_option("--suite", suite, "Suite name, 'map', or 'all'")->capture_default_str();
  verify->add_option("--m", opt_m, "Restrict size-parameterized suites to this size");
  verify->add_option("--manifest", manifest_path, "Replay a run manifest and check its output digest");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const json seed_json = {{"seed", G.seed}};
    if (graph_gen->parsed()) {
      session.emit("graph gen", *graph_gen, to_json(make_graph(family, opt_m, opt_n, opt_depth, G.seed)),
                   family == "random_tree" ? seed_json : json::object());
    } else if (graph_line->parsed()) {
      session.emit("graph line", *graph_line, to_json(line_graph(graph_from_json(session.load(input_path)))));
    } else if (protocol_list->parsed()) {
      json list = json::array();
      for (const auto& [name, about] : protocol_catalog()) list.push_back({{"name", name}, {"description", about}});
      session.emit("protocol list", *protocol_list, list);
    } else if (protocol_run->parsed()) {
      const auto [g, input] = edge_input_from_json(session.load(input_path));
      session.emit("protocol run", *protocol_run, run_named_protocol(protocol_name, simulate, g, input));
    } else if (map_solve->parsed()) {
      const auto [g, potentials] = potentials_from_json(session.load(input_path));
      if (opt_m && graph_param(g, "hub_path", "m") != *opt_m)
        throw InvalidParameter("--m does not match the input graph");
      Assignment x;
      if (method == "dp") x = dp_map_hub_path(g, potentials);
      else if (method == "brute") x = brute_force_map(g, potentials);
      else x = edge_outputs(build_map_edge_protocol(graph_param(g, "hub_path", "m")), g, potentials);
      session.emit("map solve", *map_solve,
                   {{"method", method}, {"assignment", bits_json(x)}, {"energy", energy(g, potentials, x)}});
    } else if (certify->parsed()) {
      CertificateOptions opts{G.budget, G.jobs};
      CertificateReport report;
      if (task == "map") {
        const Graph g = build_hub_path_graph(cert_m);
        const auto inst = map_lower_bound_instance(cert_m, cert_T);
        report = certified_lower_bound(
            g, [&g](const EdgeInput& in) { return dp_map_hub_path(g, in); }, inst.K, inst.S, cert_T,
            kPotentialCount, search_if ? std::nullopt : std::optional(inst.fixed), opts);
      } else {
        const Graph g = build_depth2_tree(cert_m);
        const auto inst = counting_lower_bound_instance(cert_m, cert_T);
        report = certified_lower_bound(
            g, [&g](const EdgeInput& in) { return counting_task_g(g, in); }, inst.K, inst.S, cert_T, 2,
            search_if ? std::nullopt : std::optional(inst.fixed), opts);
      }
      session.emit("certify", *certify, report.to_json());
    } else if (task_eval->parsed()) {
      const auto [g, input] = edge_input_from_json(session.load(input_path));
      session.emit("task eval", *task_eval, eval_task(task, g, input));
    } else if (ising_marg->parsed()) {
      const IsingModel model = ising_from_json(session.load(input_path));
      std::vector<double> marg;
      if (method == "bp")
        marg = iterations ? marginals_from_messages(model, bp_run(model, *iterations)) : bp_marginals(model);
      else if (method == "brute")
        marg = exact_marginals_bruteforce(model);
      else
        marg = directed_node_dp(model, static_cast<VertexId>(root.value_or(0)));
      session.emit("ising marginals", *ising_marg, {{"method", method}, {"marginals", marg}});
    } else if (ising_data->parsed()) {
      const IsingTopology topo{topology, topo_size, graph_seed};
      session.emit("ising dataset", *ising_data,
                   generate_ising_dataset(topo, samples, G.seed, !no_cross_check, G.jobs),
                   {{"seed", G.seed}, {"graph_seed", graph_seed}});
    } else if (star_gen->parsed()) {
      sp.seed = G.seed;
      session.emit("star-dataset gen", *star_gen, generate_star_dataset(sp), seed_json);
    } else if (gcn_fwd->parsed()) {
      const Graph g = graph_from_json(session.load(input_path));
      Rng weight_rng = Rng::stream(G.seed, 0);
      Rng feature_rng = Rng::stream(G.seed, 1);
      const GcnStack stack = weights_path.empty()
                                 ? GcnStack::random(gcn_depth, gcn_width, 1.0 / std::sqrt(double(gcn_width)), weight_rng)
                                 : GcnStack::from_json(session.load(weights_path));
      FeatureMap h0;
      const bool edge_mode = mode == "edge";
      const std::size_t rows = edge_mode && !from_nodes ? g.num_edges() : g.num_vertices();
      if (edge_mode && from_nodes && stack.width % 2 != 0)
        throw InvalidParameter("--from-nodes needs an even stack width");
      const std::size_t cols = edge_mode && from_nodes ? stack.width / 2 : stack.width;
      h0 = features_path.empty() ? random_feature_map(rows, cols, feature_rng)
                                 : features_from_json(session.load(features_path));
      if (edge_mode && from_nodes) h0 = init_edge_features_from_nodes(g, h0);
      const FeatureMap h = edge_mode ? edge_gcn_forward(g, stack, h0) : node_gcn_forward(g, stack, h0);
      session.emit("gcn forward", *gcn_fwd, {{"mode", mode}, {"features", h}},
                   weights_path.empty() || features_path.empty() ? seed_json : json::object());
    } else if (verify->parsed()) {
      std::vector<SuiteResult> results;
      if (!manifest_path.empty()) {
        results.push_back(replay_manifest(manifest_path, err));
      } else {
        VerifyOptions vo;
        vo.jobs = G.jobs;
        vo.m = opt_m;
        if (app.get_option("--seed")->count() > 0) vo.seed = G.seed;
        for (const auto& name : resolve_suites(suite)) results.push_back(run_suite(name, vo));
      }
      return print_verify(session, results, *verify);
    }
    return kExitOk;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace edgemp::cli
