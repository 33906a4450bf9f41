// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "edgemp/protocol.hpp"
#include "edgemp/symmetric.hpp"

namespace edgemp {

/// State layout of the node protocol produced by simulate_edge_with_node.
///
///   bit 0                     output bit (set in the last round only)
///   bits 1 .. H               number of occupied slots, H = bits_for(max degree)
///   then max_degree slots     B bits each, slot k holds the state of the
///                             k-th incident edge in edge-id order
struct SimulationLayout {
  std::size_t edge_bits = 0;
  std::size_t max_degree = 0;
  std::size_t header_bits = 0;

  std::size_t overhead_bits() const { return 1 + header_bits; }
  std::size_t total_bits() const { return overhead_bits() + max_degree * edge_bits; }
  std::size_t slot_offset(std::size_t k) const { return overhead_bits() + k * edge_bits; }
};

SimulationLayout simulation_layout(const EdgeProtocol& p, const Graph& g);

/// Node protocol with T+1 rounds that reproduces the vertex outputs of the
/// edge protocol p on g. After round t+1 vertex v holds the round-t states
/// of its incident edges. The returned protocol is bound to g.
NodeProtocol simulate_edge_with_node(const EdgeProtocol& p, const Graph& g);

/// The universal symmetric node protocol with T+1 rounds. Its round-(t+1)
/// state at v is multiset{ P_t(e) : e incident to v } where
///   P_0(e) = 0,
///   P_t(e) = tuple(I(e), P_{t-1}(e), multiset{Q_{t-1}(u), Q_{t-1}(w)})
/// for e = {u, w} and Q_t(x) = multiset{ P_t(f) : f incident to x }. It
/// has no readout.
SymmetricNodeProtocol universal_symmetric_node_protocol(std::size_t edge_rounds);

/// Symmetric node protocol with T+1 rounds and the same vertex outputs as
/// p: the universal protocol followed by a readout that decodes each
/// P_T(e) through p's rules and applies p's aggregation. Only unbounded
/// state mode is available; asking for bounded mode throws Unsupported.
SymmetricNodeProtocol symmetric_edge_to_node(const SymmetricEdgeProtocol& p,
                                             StateMode mode = StateMode::unbounded);

}  // namespace edgemp
