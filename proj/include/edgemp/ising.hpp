// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgemp/graph.hpp"

namespace edgemp {

/// p(x) proportional to exp(sum_e J_e x_u x_v + sum_v h_v x_v), x in {-1,+1}^V.
struct IsingModel {
  Graph graph;
  std::vector<double> J;  // per edge id
  std::vector<double> h;  // per vertex

  /// Throws ShapeMismatch or InvalidParameter on bad sizes or non-finite values.
  void validate() const;
};

/// BP messages: index 2e is the message from edge(e).u to edge(e).v,
/// index 2e+1 the reverse direction.
using BPMessages = std::vector<double>;

inline std::size_t message_index(const Graph& g, VertexId from, VertexId to) {
  const EdgeId e = g.edge_id(from, to);
  return 2 * static_cast<std::size_t>(e) + (g.edge(e).u == from ? 0 : 1);
}

/// atanh arguments are clamped to this magnitude.
inline constexpr double kAtanhClamp = 1.0 - 1e-12;

/// Field contributed to a vertex by a neighbor's message across coupling J:
/// atanh(tanh(J) * nu), with the argument clamped.
double coupled_field(double J, double nu);

/// E[x_v] by exhaustive summation with log-sum-exp normalization. Throws
/// CapExceeded above `cap` vertices.
std::vector<double> exact_marginals_bruteforce(const IsingModel& model, std::size_t cap = 20);

/// Synchronous BP from all-zero messages for num_iters iterations.
BPMessages bp_run(const IsingModel& model, std::size_t num_iters);

std::vector<double> marginals_from_messages(const IsingModel& model, const BPMessages& messages);

/// Longest shortest path (in edges) of a tree. Throws InvalidParameter if
/// the graph is not a tree.
std::size_t tree_diameter(const Graph& g);

/// 2 * diameter iterations, at least one.
std::size_t default_bp_iterations(const Graph& g);

/// bp_run with default_bp_iterations followed by marginals_from_messages.
std::vector<double> bp_marginals(const IsingModel& model);

/// One upward and one downward pass from `root`:
///   up(v)   = message from v to its parent,
///   down(v) = message from the parent to v, built from the parent's own
///             down value and its other children's up values.
/// Marginals are assembled from these with the BP marginal formula.
/// Throws InvalidParameter on graphs that are not trees.
std::vector<double> directed_node_dp(const IsingModel& model, VertexId root);

/// Dataset topology: kind is "binary_tree" (size = depth), "path"
/// (size = vertices) or "random_tree" (size = vertices, tree drawn from
/// graph_seed).
struct IsingTopology {
  std::string kind;
  std::size_t size = 0;
  std::uint64_t graph_seed = 0;

  nlohmann::json to_json() const;
};

Graph build_topology(const IsingTopology& topology);

/// Samples h ~ N(0,1) per vertex from per-sample streams of `seed`, J = 1,
/// and labels each sample with BP marginals. When the graph has at most
/// 20 vertices and cross_check is set, each label vector is also compared
/// against brute force and a mismatch above 1e-9 throws.
nlohmann::json generate_ising_dataset(const IsingTopology& topology, std::size_t n_samples,
                                      std::uint64_t seed, bool cross_check = true,
                                      std::size_t jobs = 1);

}  // namespace edgemp
