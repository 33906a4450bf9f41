// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgemp/protocol.hpp"
#include "edgemp/value.hpp"

namespace edgemp {

/// Bounded: every state is a bit-string atom of exactly `memory_bits` bits
/// and round 0 is all zeros. Unbounded: states are arbitrary values and
/// round 0 is integer 0.
enum class StateMode { bounded, unbounded };

/// Symmetric node protocol. At round t vertex v computes
///   rule(t, own, multiset{ tuple(state(w), integer(I({v,w}))) : w neighbor of v })
/// so the rule can only see its neighbors through the multiset.
struct SymmetricNodeProtocol {
  std::string name;
  std::size_t rounds = 0;
  StateMode mode = StateMode::bounded;
  std::size_t memory_bits = 0;
  std::function<Value(std::size_t round, const Value& own, const Value& neighborhood)> rule;
  /// Output of a vertex from its final state. If empty, bit 0 of a bounded
  /// state is used.
  std::function<bool(const Value& final_state)> readout;
};

/// Symmetric edge protocol. At round t edge e = {u,v} computes
///   rule(t, integer(I(e)), own, multiset{ multiset{state(f) : f in M_G(u)},
///                                         multiset{state(f) : f in M_G(v)} })
/// where both inner multisets contain e itself. Vertex v outputs
/// aggregate(multiset{ final state(f) : f in M_G(v) }).
struct SymmetricEdgeProtocol {
  std::string name;
  std::size_t rounds = 0;
  StateMode mode = StateMode::bounded;
  std::size_t memory_bits = 0;
  std::function<Value(std::size_t round, const Value& input, const Value& own, const Value& sides)> rule;
  std::function<bool(const Value& incident)> aggregate;
};

using ValueTrace = ExecutionTrace<Value>;

ValueTrace run_symmetric_node_protocol(const SymmetricNodeProtocol& p, const Graph& g,
                                       const EdgeInput& input);
ValueTrace run_symmetric_edge_protocol(const SymmetricEdgeProtocol& p, const Graph& g,
                                       const EdgeInput& input);

VertexOutputs symmetric_node_outputs(const SymmetricNodeProtocol& p, const Graph& g,
                                     const EdgeInput& input);
VertexOutputs symmetric_edge_outputs(const SymmetricEdgeProtocol& p, const Graph& g,
                                     const EdgeInput& input);

/// Neighborhood multiset fed to an edge rule, exposed so simulations can
/// rebuild exactly what the engine would pass.
Value edge_sides(const Graph& g, EdgeId e, std::span<const Value> states);

/// Packs a bounded-mode state.
Value bits_value(std::uint64_t value, std::size_t width);

/// The same protocol as a plain edge protocol over bit states. Requires
/// bounded mode.
EdgeProtocol to_plain(const SymmetricEdgeProtocol& p);

nlohmann::json to_json(const ValueTrace& trace);

/// Symmetric form of build_copy_edge_protocol: one round, one bit, OR
/// aggregation.
SymmetricEdgeProtocol build_symmetric_copy_edge_protocol();

/// Result of an empirical equivariance check.
struct EquivarianceReport {
  bool equivariant = true;
  std::size_t trials = 0;
  std::size_t permutations = 0;
  /// Set when a counterexample was found: the permutation, the input, and
  /// both output vectors.
  std::optional<nlohmann::json> counterexample;

  nlohmann::json to_json() const;
};

/// Runs a protocol (any kind) on an input and returns vertex outputs.
using OutputRunner = std::function<VertexOutputs(const EdgeInput&)>;

/// For each permutation pi (a vertex map that must be an automorphism of
/// g) and each of `trials` random inputs I, checks
/// outputs(pi . I)[pi(v)] == outputs(I)[v] for every v, where
/// (pi . I)({pi(a), pi(b)}) = I({a, b}).
EquivarianceReport check_equivariance(const Graph& g, const OutputRunner& run,
                                      std::span<const std::vector<VertexId>> permutations,
                                      std::size_t trials, std::size_t alphabet_size,
                                      std::uint64_t seed);

/// Throws InvalidParameter unless pi is an automorphism of g.
void check_automorphism(const Graph& g, std::span<const VertexId> pi);

/// Input relabelled by a vertex automorphism.
EdgeInput permute_input(const Graph& g, std::span<const VertexId> pi, const EdgeInput& input);

/// Random automorphisms for the built-in families (star, complete,
/// hub_path, depth2_tree). For hub_path, odd-indexed samples also reverse
/// every path.
std::vector<std::vector<VertexId>> sample_automorphisms(const Graph& g, std::size_t count,
                                                        std::uint64_t seed);

/// Hub-path automorphism exchanging paths a and b (1-based).
std::vector<VertexId> hub_path_swap(std::size_t m, std::size_t a, std::size_t b);
/// Hub-path automorphism reversing every path: (i, j) -> (m+1-i, j).
std::vector<VertexId> hub_path_reversal(std::size_t m);

}  // namespace edgemp
