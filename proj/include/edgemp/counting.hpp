// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgemp/graph.hpp"
#include "edgemp/protocol.hpp"
#include "edgemp/symmetric.hpp"

namespace edgemp {

// Counting task on the depth-two tree build_depth2_tree(m), binary inputs.

/// C(I)_e: sum of inputs over M_G(e), e included.
std::vector<std::uint64_t> input_summation(const Graph& g, const EdgeInput& input);

/// Leaves output 0; middle vertex u outputs 1 when more than m+1 edges of
/// M_G({0,u}) share the input summation of {0,u}; the root outputs the OR
/// over middle vertices.
VertexOutputs counting_task_g(const Graph& g, const EdgeInput& input);

/// Symmetric bounded edge protocol, three rounds:
///   1. store own input;
///   2. store the input summation (sum over both sides minus own value);
///   3. store 1 if more than m+1 edges of M_G(e) hold the same value.
/// Aggregation is the OR of incident bit 0. States take
/// bits_for(2m+1) bits.
SymmetricEdgeProtocol build_counting_edge_protocol(std::size_t m);

/// Bottleneck instance: K = {0}, S = {1..m/2}, I_F zero on {0,u} and
/// 1[j <= u] on {u,(u,j)} for u in S. Requires even m >= 2.
struct CountingLowerBoundInstance {
  std::size_t m = 0;
  VertexSet K;
  VertexSet S;
  EdgeSet F;
  std::vector<Symbol> fixed;
};

CountingLowerBoundInstance counting_lower_bound_instance(std::size_t m, std::size_t rounds = 1);

/// Completion for x in {0,1}^{m/2}: zero on {0,v} for v > m/2, and
/// x_{v-m/2} * 1[j <= v-m/2] on {v,(v,j)}. Returns the full input.
EdgeInput counting_lower_bound_input(const CountingLowerBoundInstance& inst, const std::vector<bool>& x);

// Duplicate detection on the star build_star(n).

/// Leaf v outputs 1 when another edge carries the same symbol as {0,v};
/// the root outputs the OR over leaves. Symbols are arbitrary.
VertexOutputs star_duplicate_g(const Graph& g, const EdgeInput& input);

/// star_duplicate_g with symbols restricted to 1..n.
VertexOutputs large_alphabet_task_g(const Graph& g, const EdgeInput& input);

/// Two-round symmetric edge protocol for the large-alphabet task with
/// bits_for(n) bits: round 1 stores the input, round 2 flags edges that
/// see another edge with the same value. Aggregation is the OR.
SymmetricEdgeProtocol build_large_alphabet_edge_protocol(std::size_t n);

/// Two-round node protocol for the binary star task with bits_for(n)
/// bits: the hub counts 1-inputs in round 1; in round 2 each leaf checks
/// whether its own value occurs at least twice and the hub whether some
/// value does.
NodeProtocol build_histogram_node_protocol(std::size_t n);

}  // namespace edgemp
