// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace edgemp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Sorted, deduplicated id lists.
using VertexSet = std::vector<VertexId>;
using EdgeSet = std::vector<EdgeId>;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with canonical edge ids.
///
/// Edges are stored as (u, v) with u < v, sorted lexicographically; an edge's
/// id is its position in that order, so ids do not depend on the order in
/// which edges were supplied. Self-loops are never stored. Adjacency is
/// reflexive by convention: closed_neighborhood(v) contains v and
/// edge_neighborhood(e) contains e.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t num_vertices, std::vector<Edge> edges,
        std::string family = "custom", nlohmann::json params = nlohmann::json::object(),
        std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const;

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  /// Like find_edge but throws InvalidParameter when the edge is absent.
  EdgeId edge_id(VertexId a, VertexId b) const;

  /// Open neighborhood (sorted, excludes v).
  std::span<const VertexId> neighbors(VertexId v) const;
  /// Edges incident to v, sorted by id. This is M_G(v).
  std::span<const EdgeId> incident_edges(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }
  std::size_t max_degree() const;

  /// N_G(v): v together with its neighbors, sorted.
  VertexSet closed_neighborhood(VertexId v) const;
  /// N_G(e): the two endpoints of e.
  VertexSet endpoints(EdgeId e) const;
  /// M_G(e): every edge sharing an endpoint with e, including e itself.
  EdgeSet edge_neighborhood(EdgeId e) const;
  bool edges_adjacent(EdgeId a, EdgeId b) const;
  /// The endpoint of e that is not v.
  VertexId other_endpoint(EdgeId e, VertexId v) const;

  bool is_connected() const;
  bool is_tree() const;

  const std::string& family() const { return family_; }
  const nlohmann::json& params() const { return params_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(VertexId v) const;
  void check_edge(EdgeId e) const;

  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<std::vector<EdgeId>> incident_;
  std::string family_ = "custom";
  nlohmann::json params_ = nlohmann::json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> labels_;
};

// Graph families. Vertex numbering is fixed so constructions that refer to
// named vertices such as (i, j) are reproducible.

/// Hub vertex 0 joined to every vertex of m disjoint paths of m vertices.
/// Path vertex (i, j) -- position i on path j, both 1-based -- has id
/// hub_path_vertex(m, i, j) = 1 + (j-1)m + (i-1).
Graph build_hub_path_graph(std::size_t m);
VertexId hub_path_vertex(std::size_t m, std::size_t i, std::size_t j);

/// Perfect m-ary tree of depth two: root 0, middle vertices u = 1..m, and
/// leaves (u, j) with id depth2_leaf(m, u, j) = m + (u-1)m + j.
Graph build_depth2_tree(std::size_t m);
VertexId depth2_leaf(std::size_t m, std::size_t u, std::size_t j);

/// Center 0 with leaves 1..n; edge {0,i} has id i-1.
Graph build_star(std::size_t n);
Graph build_complete(std::size_t n);
Graph build_path(std::size_t n);
/// Complete binary tree with 2^(depth+1) - 1 vertices; parent(i) = (i-1)/2.
Graph build_complete_binary_tree(std::size_t depth);

/// Uniformly random labeled tree on n vertices via Pruefer decoding.
Graph random_tree(std::size_t n, std::uint64_t seed);
/// Decodes a Pruefer sequence of length n-2 over [0, n).
std::vector<Edge> pruefer_decode(std::span<const VertexId> sequence, std::size_t n);

/// Line graph: one vertex per edge id of g, adjacent iff the edges share an endpoint.
Graph line_graph(const Graph& g);

/// Vertices within r hops of S in H = G minus K.
VertexSet restricted_ball(const Graph& g, const VertexSet& removed, const VertexSet& sources,
                          std::size_t radius);
/// M_G of the restricted ball: the edge set F whose inputs can reach S
/// without routing through K.
EdgeSet light_cone_edges(const Graph& g, const VertexSet& removed, const VertexSet& sources,
                         std::size_t radius);

/// Sorts, deduplicates and range-checks an id list.
VertexSet normalize_set(std::vector<VertexId> ids, std::size_t bound, const char* what);

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace edgemp
