// SPDX-License-Identifier: Apache-2.0
#include "edgemp/ising.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <thread>

#include "edgemp/errors.hpp"
#include "edgemp/rng.hpp"

namespace edgemp {

void IsingModel::validate() const {
  if (J.size() != graph.num_edges()) throw ShapeMismatch("J needs one coupling per edge");
  if (h.size() != graph.num_vertices()) throw ShapeMismatch("h needs one field per vertex");
  for (double v : J)
    if (!std::isfinite(v)) throw InvalidParameter("non-finite coupling");
  for (double v : h)
    if (!std::isfinite(v)) throw InvalidParameter("non-finite field");
}

double coupled_field(double J, double nu) {
  const double arg = std::clamp(std::tanh(J) * nu, -kAtanhClamp, kAtanhClamp);
  return std::atanh(arg);
}

std::vector<double> exact_marginals_bruteforce(const IsingModel& model, std::size_t cap) {
  model.validate();
  const Graph& g = model.graph;
  const std::size_t n = g.num_vertices();
  if (n > cap || n >= 63)
    throw CapExceeded("brute-force marginals over " + std::to_string(n) + " vertices exceed cap " +
                      std::to_string(cap));
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> log_weight(total);
  double max_lw = -std::numeric_limits<double>::infinity();
  std::vector<int> x(n);
  for (std::uint64_t word = 0; word < total; ++word) {
    for (std::size_t v = 0; v < n; ++v) x[v] = (word >> v) & 1U ? 1 : -1;
    double lw = 0.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      lw += model.J[e] * x[ed.u] * x[ed.v];
    }
    for (std::size_t v = 0; v < n; ++v) lw += model.h[v] * x[v];
    log_weight[word] = lw;
    max_lw = std::max(max_lw, lw);
  }
  double z = 0.0;
  std::vector<double> plus(n, 0.0);
  for (std::uint64_t word = 0; word < total; ++word) {
    const double w = std::exp(log_weight[word] - max_lw);
    z += w;
    for (std::size_t v = 0; v < n; ++v)
      if ((word >> v) & 1U) plus[v] += w;
  }
  std::vector<double> marginals(n);
  // E[x_v] = P(+1) - P(-1) = (2 * plus - z) / z
  for (std::size_t v = 0; v < n; ++v) marginals[v] = (2.0 * plus[v] - z) / z;
  return marginals;
}

namespace {

// h_from + sum of coupled fields from every neighbor k of `from` except
// `skip`, in ascending neighbor order.
double cavity_field(const IsingModel& model, const BPMessages& nu, VertexId from, VertexId skip,
                    bool use_skip) {
  const Graph& g = model.graph;
  double field = model.h[from];
  auto nbrs = g.neighbors(from);
  for (VertexId k : nbrs) {
    if (use_skip && k == skip) continue;
    const EdgeId e = g.edge_id(from, k);
    field += coupled_field(model.J[e], nu[message_index(g, k, from)]);
  }
  return field;
}

}  // namespace

BPMessages bp_run(const IsingModel& model, std::size_t num_iters) {
  model.validate();
  if (num_iters == 0) throw InvalidParameter("BP needs at least one iteration");
  const Graph& g = model.graph;
  BPMessages nu(2 * g.num_edges(), 0.0);
  for (std::size_t it = 0; it < num_iters; ++it) {
    BPMessages next(nu.size());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      next[2 * e] = std::tanh(cavity_field(model, nu, ed.u, ed.v, true));
      next[2 * e + 1] = std::tanh(cavity_field(model, nu, ed.v, ed.u, true));
    }
    nu = std::move(next);
  }
  return nu;
}

std::vector<double> marginals_from_messages(const IsingModel& model, const BPMessages& messages) {
  model.validate();
  if (messages.size() != 2 * model.graph.num_edges()) throw ShapeMismatch("wrong number of messages");
  std::vector<double> out(model.graph.num_vertices());
  for (VertexId v = 0; v < out.size(); ++v) out[v] = std::tanh(cavity_field(model, messages, v, 0, false));
  return out;
}

std::size_t tree_diameter(const Graph& g) {
  if (!g.is_tree()) throw InvalidParameter("graph is not a tree");
  if (g.num_vertices() <= 1) return 0;
  auto farthest = [&](VertexId start) {
    std::vector<std::size_t> dist(g.num_vertices(), std::numeric_limits<std::size_t>::max());
    std::deque<VertexId> queue{start};
    dist[start] = 0;
    VertexId last = start;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      last = v;
      for (VertexId w : g.neighbors(v))
        if (dist[w] == std::numeric_limits<std::size_t>::max()) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    return std::pair{last, dist[last]};
  };
  return farthest(farthest(0).first).second;
}

std::size_t default_bp_iterations(const Graph& g) {
  return std::max<std::size_t>(1, 2 * tree_diameter(g));
}

std::vector<double> bp_marginals(const IsingModel& model) {
  return marginals_from_messages(model, bp_run(model, default_bp_iterations(model.graph)));
}

std::vector<double> directed_node_dp(const IsingModel& model, VertexId root) {
  model.validate();
  const Graph& g = model.graph;
  if (!g.is_tree()) throw InvalidParameter("directed node DP needs a tree");
  if (root >= g.num_vertices()) throw InvalidParameter("root out of range");
  const std::size_t n = g.num_vertices();

  // BFS order from the root; parents precede children.
  constexpr VertexId kNone = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> parent(n, kNone), order;
  order.reserve(n);
  order.push_back(root);
  std::vector<bool> seen(n, false);
  seen[root] = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (VertexId w : g.neighbors(order[k]))
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = order[k];
        order.push_back(w);
      }

  // The DP values are exactly the tree's BP fixed-point messages; store
  // them in a message array so fields are summed in the same order as BP.
  BPMessages nu(2 * g.num_edges(), 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (v == root) continue;
    nu[message_index(g, v, parent[v])] = std::tanh(cavity_field(model, nu, v, parent[v], true));
  }
  for (VertexId v : order) {
    if (v == root) continue;
    const VertexId p = parent[v];
    nu[message_index(g, p, v)] = std::tanh(cavity_field(model, nu, p, v, true));
  }
  return marginals_from_messages(model, nu);
}

nlohmann::json IsingTopology::to_json() const {
  nlohmann::json j = {{"kind", kind}, {"size", size}};
  if (kind == "random_tree") j["graph_seed"] = graph_seed;
  return j;
}

Graph build_topology(const IsingTopology& topology) {
  if (topology.kind == "binary_tree") return build_complete_binary_tree(topology.size);
  if (topology.kind == "path") return build_path(topology.size);
  if (topology.kind == "random_tree") return random_tree(topology.size, topology.graph_seed);
  throw InvalidParameter("unknown topology '" + topology.kind + "'");
}

nlohmann::json generate_ising_dataset(const IsingTopology& topology, std::size_t n_samples,
                                      std::uint64_t seed, bool cross_check, std::size_t jobs) {
  const Graph g = build_topology(topology);
  const bool check = cross_check && g.num_vertices() <= 20;
  std::vector<nlohmann::json> samples(n_samples);

  auto make_sample = [&](std::size_t k) {
    Rng rng = Rng::stream(seed, k);
    IsingModel model{g, std::vector<double>(g.num_edges(), 1.0), std::vector<double>(g.num_vertices())};
    for (double& h : model.h) h = rng.normal();
    const auto marginals = bp_marginals(model);
    if (check) {
      const auto exact = exact_marginals_bruteforce(model);
      for (std::size_t v = 0; v < exact.size(); ++v)
        if (std::abs(exact[v] - marginals[v]) > 1e-9)
          throw Error("BP label disagrees with brute force on sample " + std::to_string(k));
    }
    samples[k] = {{"h", model.h}, {"marginals", marginals}};
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, n_samples));
  if (jobs == 1) {
    for (std::size_t k = 0; k < n_samples; ++k) make_sample(k);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < n_samples; k += jobs) make_sample(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  nlohmann::json topo = topology.to_json();
  topo["graph"] = to_json(g);
  return {{"topology", std::move(topo)},
          {"seed", seed},
          {"J", 1.0},
          {"bp_iterations", default_bp_iterations(g)},
          {"samples", std::move(samples)}};
}

}  // namespace edgemp
