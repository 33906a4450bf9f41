// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgemp/bit_state.hpp"
#include "edgemp/graph.hpp"

namespace edgemp {

/// Alphabet symbol carried by an edge. Its meaning belongs to the task.
using Symbol = std::uint32_t;
/// One symbol per edge id.
using EdgeInput = std::vector<Symbol>;
/// One output bit per vertex.
using VertexOutputs = std::vector<bool>;

/// What a node processor may read while computing its round-t state:
/// previous states of N_G(v) (itself included) and the inputs on M_G(v).
class NodeView {
 public:
  NodeView(const Graph& g, std::size_t round, VertexId v, std::span<const BitState> previous,
           const EdgeInput& input)
      : graph_(g), round_(round), vertex_(v), previous_(previous), input_(input) {}

  const Graph& graph() const { return graph_; }
  std::size_t round() const { return round_; }
  VertexId vertex() const { return vertex_; }
  const BitState& own_state() const { return previous_[vertex_]; }
  /// Previous state of w; w must be v or a neighbor of v.
  const BitState& state(VertexId w) const;
  /// Input on edge e; e must be incident to v.
  Symbol input(EdgeId e) const;

 private:
  const Graph& graph_;
  std::size_t round_;
  VertexId vertex_;
  std::span<const BitState> previous_;
  const EdgeInput& input_;
};

/// What an edge processor may read: previous states of M_G(e) (itself
/// included) and only its own input.
class EdgeView {
 public:
  EdgeView(const Graph& g, std::size_t round, EdgeId e, std::span<const BitState> previous,
           Symbol input)
      : graph_(g), round_(round), edge_(e), previous_(previous), input_(input) {}

  const Graph& graph() const { return graph_; }
  std::size_t round() const { return round_; }
  EdgeId edge() const { return edge_; }
  const BitState& own_state() const { return previous_[edge_]; }
  /// Previous state of f; f must share an endpoint with e.
  const BitState& state(EdgeId f) const;
  Symbol input() const { return input_; }

 private:
  const Graph& graph_;
  std::size_t round_;
  EdgeId edge_;
  std::span<const BitState> previous_;
  Symbol input_;
};

/// Final edge states visible to vertex v when it computes its output: those
/// of M_G(v).
class AggregateView {
 public:
  AggregateView(const Graph& g, VertexId v, std::span<const BitState> final_states)
      : graph_(g), vertex_(v), final_(final_states) {}

  const Graph& graph() const { return graph_; }
  VertexId vertex() const { return vertex_; }
  const BitState& state(EdgeId e) const;

 private:
  const Graph& graph_;
  VertexId vertex_;
  std::span<const BitState> final_;
};

/// Memory-bounded node protocol. The rule is called once per (round, vertex)
/// and may branch on both, so per-processor rules are expressed in one
/// function. Output of v is bit 0 of its final state.
struct NodeProtocol {
  std::string name;
  std::size_t rounds = 0;
  std::size_t memory_bits = 0;
  std::function<BitState(const NodeView&)> rule;
};

struct EdgeProtocol {
  std::string name;
  std::size_t rounds = 0;
  std::size_t memory_bits = 0;
  std::function<BitState(const EdgeView&)> rule;
  std::function<bool(const AggregateView&)> aggregate;
};

/// Full record of a run: states[t][p] for t = 0..T and every processor p
/// (vertices for node protocols, edge ids for edge protocols).
template <class State>
struct ExecutionTrace {
  std::vector<std::vector<State>> states;
  VertexOutputs outputs;
  std::size_t max_state_bits = 0;

  std::size_t rounds() const { return states.empty() ? 0 : states.size() - 1; }
  const std::vector<State>& final_states() const { return states.back(); }
};

using BitTrace = ExecutionTrace<BitState>;

BitTrace run_node_protocol(const NodeProtocol& p, const Graph& g, const EdgeInput& input);
BitTrace run_edge_protocol(const EdgeProtocol& p, const Graph& g, const EdgeInput& input);

/// Outputs only, for callers that sweep many inputs.
VertexOutputs node_outputs(const NodeProtocol& p, const Graph& g, const EdgeInput& input);
VertexOutputs edge_outputs(const EdgeProtocol& p, const Graph& g, const EdgeInput& input);

/// Throws ShapeMismatch unless the input has one symbol per edge.
void check_input_shape(const Graph& g, const EdgeInput& input);
/// Throws InvalidParameter if any symbol is >= alphabet_size.
void check_alphabet(const EdgeInput& input, std::size_t alphabet_size);

/// Checks a freshly computed state against the budget: wider than B is a
/// memory-budget violation, narrower is a malformed protocol.
void check_state_width(const BitState& s, std::size_t memory_bits, const std::string& where);

nlohmann::json to_json(const BitTrace& trace);

/// One-round edge protocol over binary inputs with one bit of memory: each
/// edge stores its input, and a vertex outputs the OR over its incident
/// edges.
EdgeProtocol build_copy_edge_protocol();

/// Every input over an alphabet of size k on |E| edges, in odometer order
/// with edge 0 varying fastest. Calls visit(input) for each.
void for_each_input(std::size_t num_edges, std::size_t alphabet_size,
                    const std::function<void(const EdgeInput&)>& visit);

}  // namespace edgemp
