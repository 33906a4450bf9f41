// SPDX-License-Identifier: Apache-2.0
#include "edgemp/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>

#include "edgemp/errors.hpp"
#include "edgemp/rng.hpp"

namespace edgemp {

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges, std::string family,
             nlohmann::json params, std::optional<std::uint64_t> seed)
    : num_vertices_(num_vertices),
      edges_(std::move(edges)),
      family_(std::move(family)),
      params_(std::move(params)),
      seed_(seed) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw InvalidParameter("self-loops are not stored; reflexivity is implicit");
    if (e.u >= num_vertices_ || e.v >= num_vertices_)
      throw InvalidParameter("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InvalidParameter("duplicate edge");

  neighbors_.assign(num_vertices_, {});
  incident_.assign(num_vertices_, {});
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const auto [u, v] = edges_[id];
    neighbors_[u].push_back(v);
    neighbors_[v].push_back(u);
    incident_[u].push_back(id);
    incident_[v].push_back(id);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

void Graph::check_vertex(VertexId v) const {
  if (v >= num_vertices_) throw InvalidParameter("vertex id out of range");
}

void Graph::check_edge(EdgeId e) const {
  if (e >= edges_.size()) throw InvalidParameter("edge id out of range");
}

const Edge& Graph::edge(EdgeId e) const {
  check_edge(e);
  return edges_[e];
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const {
  if (a > b) std::swap(a, b);
  const Edge key{a, b};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

EdgeId Graph::edge_id(VertexId a, VertexId b) const {
  auto e = find_edge(a, b);
  if (!e) throw InvalidParameter("no edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  return *e;
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  check_vertex(v);
  return neighbors_[v];
}

std::span<const EdgeId> Graph::incident_edges(VertexId v) const {
  check_vertex(v);
  return incident_[v];
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& n : neighbors_) best = std::max(best, n.size());
  return best;
}

VertexSet Graph::closed_neighborhood(VertexId v) const {
  check_vertex(v);
  VertexSet out(neighbors_[v].begin(), neighbors_[v].end());
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

VertexSet Graph::endpoints(EdgeId e) const {
  const auto& ed = edge(e);
  return {ed.u, ed.v};
}

EdgeSet Graph::edge_neighborhood(EdgeId e) const {
  const auto& ed = edge(e);
  EdgeSet out;
  const auto& a = incident_[ed.u];
  const auto& b = incident_[ed.v];
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool Graph::edges_adjacent(EdgeId a, EdgeId b) const {
  const auto& x = edge(a);
  const auto& y = edge(b);
  return x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v;
}

VertexId Graph::other_endpoint(EdgeId e, VertexId v) const {
  const auto& ed = edge(e);
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  throw InvalidParameter("vertex is not an endpoint of the edge");
}

bool Graph::is_connected() const {
  if (num_vertices_ == 0) return true;
  std::vector<char> seen(num_vertices_, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : neighbors_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_vertices_;
}

bool Graph::is_tree() const {
  return num_vertices_ >= 1 && edges_.size() + 1 == num_vertices_ && is_connected();
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != num_vertices_)
    throw ShapeMismatch("one label per vertex required");
  labels_ = std::move(labels);
}

VertexId hub_path_vertex(std::size_t m, std::size_t i, std::size_t j) {
  if (i < 1 || i > m || j < 1 || j > m) throw InvalidParameter("hub-path coordinate out of range");
  return static_cast<VertexId>(1 + (j - 1) * m + (i - 1));
}

Graph build_hub_path_graph(std::size_t m) {
  if (m == 0) throw InvalidParameter("hub-path graph needs m >= 1");
  std::vector<Edge> edges;
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t i = 1; i <= m; ++i) {
      edges.push_back({0, hub_path_vertex(m, i, j)});
      if (i < m) edges.push_back({hub_path_vertex(m, i, j), hub_path_vertex(m, i + 1, j)});
    }
  }
  std::vector<std::string> labels{"0"};
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= m; ++i)
      labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  Graph g(m * m + 1, std::move(edges), "hub_path", {{"m", m}});
  g.set_labels(std::move(labels));
  return g;
}

VertexId depth2_leaf(std::size_t m, std::size_t u, std::size_t j) {
  if (u < 1 || u > m || j < 1 || j > m) throw InvalidParameter("depth-2 tree coordinate out of range");
  return static_cast<VertexId>(m + (u - 1) * m + j);
}

Graph build_depth2_tree(std::size_t m) {
  if (m == 0) throw InvalidParameter("depth-2 tree needs m >= 1");
  std::vector<Edge> edges;
  for (std::size_t u = 1; u <= m; ++u) {
    edges.push_back({0, static_cast<VertexId>(u)});
    for (std::size_t j = 1; j <= m; ++j) edges.push_back({static_cast<VertexId>(u), depth2_leaf(m, u, j)});
  }
  return Graph(1 + m + m * m, std::move(edges), "depth2_tree", {{"m", m}});
}

Graph build_star(std::size_t n) {
  if (n == 0) throw InvalidParameter("star needs at least one leaf");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= n; ++i) edges.push_back({0, static_cast<VertexId>(i)});
  return Graph(n + 1, std::move(edges), "star", {{"n", n}});
}

Graph build_complete(std::size_t n) {
  if (n == 0) throw InvalidParameter("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) edges.push_back({a, b});
  return Graph(n, std::move(edges), "complete", {{"n", n}});
}

Graph build_path(std::size_t n) {
  if (n == 0) throw InvalidParameter("path needs n >= 1");
  std::vector<Edge> edges;
  for (VertexId a = 0; a + 1 < n; ++a) edges.push_back({a, a + 1});
  return Graph(n, std::move(edges), "path", {{"n", n}});
}

Graph build_complete_binary_tree(std::size_t depth) {
  if (depth > 24) throw InvalidParameter("binary tree depth too large");
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<Edge> edges;
  for (VertexId v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v});
  return Graph(n, std::move(edges), "binary_tree", {{"depth", depth}});
}

std::vector<Edge> pruefer_decode(std::span<const VertexId> sequence, std::size_t n) {
  if (n < 2) throw InvalidParameter("Pruefer decoding needs n >= 2");
  if (sequence.size() != n - 2) throw ShapeMismatch("Pruefer sequence must have length n-2");
  std::vector<std::size_t> degree(n, 1);
  for (VertexId s : sequence) {
    if (s >= n) throw InvalidParameter("Pruefer symbol out of range");
    ++degree[s];
  }
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> leaves;
  for (VertexId v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (VertexId s : sequence) {
    const VertexId leaf = leaves.top();
    leaves.pop();
    edges.push_back({leaf, s});
    if (--degree[s] == 1) leaves.push(s);
  }
  const VertexId a = leaves.top();
  leaves.pop();
  const VertexId b = leaves.top();
  edges.push_back({a, b});
  return edges;
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidParameter("random tree needs n >= 2");
  Rng rng(seed);
  std::vector<VertexId> sequence(n - 2);
  for (auto& s : sequence) s = static_cast<VertexId>(rng.below(n));
  return Graph(n, pruefer_decode(sequence, n), "random_tree", {{"n", n}}, seed);
}

Graph line_graph(const Graph& g) {
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (EdgeId f : g.edge_neighborhood(e))
      if (f > e) edges.push_back({e, f});
  return Graph(g.num_edges(), std::move(edges), "line_graph",
               {{"base_family", g.family()}, {"base_params", g.params()}});
}

VertexSet normalize_set(std::vector<VertexId> ids, std::size_t bound, const char* what) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && ids.back() >= bound)
    throw InvalidParameter(std::string(what) + ": id out of range");
  return ids;
}

VertexSet restricted_ball(const Graph& g, const VertexSet& removed, const VertexSet& sources,
                          std::size_t radius) {
  const auto k = normalize_set(removed, g.num_vertices(), "K");
  const auto s = normalize_set(sources, g.num_vertices(), "S");
  std::vector<char> blocked(g.num_vertices(), 0);
  for (VertexId v : k) blocked[v] = 1;
  std::vector<std::size_t> dist(g.num_vertices(), SIZE_MAX);
  std::deque<VertexId> queue;
  for (VertexId v : s) {
    if (blocked[v]) throw InvalidParameter("K and S must be disjoint");
    dist[v] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (dist[v] == radius) continue;
    for (VertexId w : g.neighbors(v)) {
      if (blocked[w] || dist[w] != SIZE_MAX) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  VertexSet out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (dist[v] != SIZE_MAX) out.push_back(v);
  return out;
}

EdgeSet light_cone_edges(const Graph& g, const VertexSet& removed, const VertexSet& sources,
                         std::size_t radius) {
  EdgeSet out;
  for (VertexId v : restricted_ball(g, removed, sources, radius))
    for (EdgeId e : g.incident_edges(v)) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  nlohmann::json j{{"num_vertices", g.num_vertices()},
                   {"edges", std::move(edges)},
                   {"family", g.family()},
                   {"params", g.params()}};
  if (g.seed()) j["seed"] = *g.seed();
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidParameter("edge must be a pair");
      edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>()});
    }
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j["seed"].is_null()) seed = j["seed"].get<std::uint64_t>();
    Graph g(j.at("num_vertices").get<std::size_t>(), std::move(edges),
            j.value("family", std::string("custom")),
            j.value("params", nlohmann::json::object()), seed);
    if (j.contains("labels")) g.set_labels(j["labels"].get<std::vector<std::string>>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace edgemp
