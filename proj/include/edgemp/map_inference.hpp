// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "edgemp/graph.hpp"
#include "edgemp/protocol.hpp"

namespace edgemp {

/// The four pairwise potentials, by 2-bit code:
///   0 differ    1[x_a != x_b]
///   1 pin_one   1[x_a != 1 or x_b != 1]
///   2 pin_zero  1[x_a != 0 or x_b != 0]
///   3 zero      0
enum class Potential : Symbol { differ = 0, pin_one = 1, pin_zero = 2, zero = 3 };

inline constexpr std::size_t kPotentialCount = 4;

inline constexpr Symbol code(Potential p) { return static_cast<Symbol>(p); }

/// Value of potential `symbol` at (a, b). Every potential is symmetric.
unsigned potential_value(Symbol symbol, bool a, bool b);

/// One bit per vertex.
using Assignment = std::vector<bool>;

/// Sum of edge potentials at x.
std::uint64_t energy(const Graph& g, const EdgeInput& potentials, const Assignment& x);

/// Lexicographically smallest energy minimizer, comparing (x_0, x_1, ...)
/// with vertex 0 most significant. Exhaustive; throws CapExceeded above
/// `cap` vertices.
Assignment brute_force_map(const Graph& g, const EdgeInput& potentials, std::size_t cap = 24);

/// Linear-time exact MAP on build_hub_path_graph(m). Returns the same
/// minimizer as brute_force_map. Throws InvalidParameter if g is not a
/// hub-path graph.
Assignment dp_map_hub_path(const Graph& g, const EdgeInput& potentials);

/// Edge ids of a hub-path graph by (i, j) position, 1-based.
class HubPathIndex {
 public:
  explicit HubPathIndex(std::size_t m);
  std::size_t m() const { return m_; }
  /// Edge {0, (i, j)}.
  EdgeId hub_edge(std::size_t i, std::size_t j) const { return hub_[(j - 1) * m_ + (i - 1)]; }
  /// Edge {(i, j), (i+1, j)}, i < m.
  EdgeId path_edge(std::size_t i, std::size_t j) const { return path_[(j - 1) * (m_ - 1) + (i - 1)]; }

 private:
  std::size_t m_;
  std::vector<EdgeId> hub_;
  std::vector<EdgeId> path_;
};

/// Hub-path MAP from per-position symbols: hub[(j-1)m + i-1] is the
/// potential on {0,(i,j)} and path[(j-1)(m-1) + i-1] the potential on
/// {(i,j),(i+1,j)}.
Assignment hub_path_dp(std::size_t m, const std::vector<Symbol>& hub, const std::vector<Symbol>& path);

/// Three-round edge protocol with 4-bit states whose vertex outputs are
/// dp_map_hub_path(g, I) on g = build_hub_path_graph(m). Requires m >= 2.
///
/// Round 1: each edge stores its own symbol in bits 0-1.
/// Round 2: hub edge {0,(i,j)} stores the symbol of {(i,j),(i+1,j)} in
///          bits 0-1 (0 when i = m) and its own symbol in bits 2-3; path
///          edges store 0.
/// Round 3: hub edges see every other hub edge, rebuild the whole input,
///          run the DP and store x_0 in bit 0 and x_(i,j) in bit 1; path
///          edges store 0.
/// Vertex 0 reads bit 0 of {0,(1,1)}; vertex (i,j) reads bit 1 of {0,(i,j)}.
EdgeProtocol build_map_edge_protocol(std::size_t m);

/// Bottleneck instance on the hub-path graph: K = {0}, S = {(1,j)}, and a
/// fixed input on F = M_G(N_H^{T-1}(S)) that is the zero potential on hub
/// edges and `differ` on path edges.
struct MapLowerBoundInstance {
  std::size_t m = 0;
  std::size_t rounds = 1;
  VertexSet K;
  VertexSet S;
  EdgeSet F;
  /// Symbol for each edge of F, aligned with F.
  std::vector<Symbol> fixed;
};

MapLowerBoundInstance map_lower_bound_instance(std::size_t m, std::size_t rounds = 1);

/// Full input that agrees with the instance on F and forces the MAP value
/// on path j to y[j-1]. Off F, path edges are `differ` and hub edges are
/// zero, except for the pins: the last path edge of each path gets
/// pin_one/pin_zero when it lies outside F; otherwise hub edge {0,(m,j)}
/// carries pin_one where y_j = 1 and stays zero where y_j = 0, relying on
/// the lexicographic tie-break for the unpinned paths.
EdgeInput map_lower_bound_input(const MapLowerBoundInstance& inst, const std::vector<bool>& y);

nlohmann::json potentials_to_json(const Graph& g, const EdgeInput& potentials);
/// Reads {"graph": ..., "symbols": [...]}; returns the graph and symbols.
std::pair<Graph, EdgeInput> potentials_from_json(const nlohmann::json& j);

}  // namespace edgemp
