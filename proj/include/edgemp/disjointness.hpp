// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "edgemp/graph.hpp"
#include "edgemp/protocol.hpp"

namespace edgemp {

// Mirrored-pair intersection on the complete graph build_complete(n), n
// even. Vertices are named 1..n in the task definition; name k is vertex
// id k-1. The mirror of {i, j} is {n+1-i, n+1-j}.

/// Every vertex outputs 1 iff some {i, j} with i, j <= n/2 has
/// I({i,j}) = I(mirror) = 1.
VertexOutputs disjointness_task_g(const Graph& g, const EdgeInput& input);

/// Six-round edge protocol with one bit of memory. For edge {a, b}, a < b
/// in 1-based names:
///   1. own input;
///   2. state of {n+1-a, b} (0 if that is not an edge);
///   3. state of {a, n+1-b} (0 if that is not an edge), which is now
///      I(mirror) when a, b <= n/2;
///   4. own input AND own state when a, b <= n/2, else 0;
///   5, 6. OR over M_G(e). Two rounds reach every edge of K_n.
/// Vertex k reads the state of {k, 1} ({1, 2} for k = 1).
EdgeProtocol build_disjointness_edge_protocol(std::size_t n);

/// DISJ_m(A, B) = 1 iff A_i B_i = 0 for every i.
bool disj(const std::vector<bool>& a, const std::vector<bool>& b);

/// Alice's and Bob's vectors for an input: pairs {i, j} with i < j <= n/2
/// in lexicographic order, X from the pair itself and Y from its mirror.
/// Length (n/2 choose 2).
std::pair<std::vector<bool>, std::vector<bool>> disjointness_split(const Graph& g, const EdgeInput& input);

}  // namespace edgemp
