// SPDX-License-Identifier: Apache-2.0
#include "edgemp/protocol.hpp"

#include <algorithm>

#include "edgemp/errors.hpp"

namespace edgemp {

const BitState& NodeView::state(VertexId w) const {
  if (w != vertex_ && !graph_.find_edge(vertex_, w))
    throw InvalidProtocol("node " + std::to_string(vertex_) + " read state of non-neighbor " +
                          std::to_string(w));
  return previous_[w];
}

Symbol NodeView::input(EdgeId e) const {
  const Edge& ed = graph_.edge(e);
  if (ed.u != vertex_ && ed.v != vertex_)
    throw InvalidProtocol("node " + std::to_string(vertex_) + " read input of non-incident edge " +
                          std::to_string(e));
  return input_[e];
}

const BitState& EdgeView::state(EdgeId f) const {
  if (!graph_.edges_adjacent(edge_, f))
    throw InvalidProtocol("edge " + std::to_string(edge_) + " read state of non-adjacent edge " +
                          std::to_string(f));
  return previous_[f];
}

const BitState& AggregateView::state(EdgeId e) const {
  const Edge& ed = graph_.edge(e);
  if (ed.u != vertex_ && ed.v != vertex_)
    throw InvalidProtocol("vertex " + std::to_string(vertex_) + " aggregated non-incident edge " +
                          std::to_string(e));
  return final_[e];
}

void check_input_shape(const Graph& g, const EdgeInput& input) {
  if (input.size() != g.num_edges())
    throw ShapeMismatch("input has " + std::to_string(input.size()) + " symbols, graph has " +
                        std::to_string(g.num_edges()) + " edges");
}

void check_alphabet(const EdgeInput& input, std::size_t alphabet_size) {
  for (Symbol s : input)
    if (s >= alphabet_size)
      throw InvalidParameter("symbol " + std::to_string(s) + " outside alphabet of size " +
                             std::to_string(alphabet_size));
}

void check_state_width(const BitState& s, std::size_t memory_bits, const std::string& where) {
  if (s.size() > memory_bits)
    throw MemoryBudgetViolation(where + " produced " + std::to_string(s.size()) +
                                " bits with budget " + std::to_string(memory_bits));
  if (s.size() < memory_bits)
    throw InvalidProtocol(where + " produced " + std::to_string(s.size()) +
                          " bits, expected exactly " + std::to_string(memory_bits));
}

namespace {

void check_protocol(std::size_t rounds, std::size_t memory_bits, bool has_rule) {
  if (rounds == 0) throw InvalidProtocol("protocol needs at least one round");
  if (memory_bits == 0) throw InvalidProtocol("memory budget must be at least one bit");
  if (!has_rule) throw InvalidProtocol("protocol has no update rule");
}

std::string where(const char* kind, std::size_t round, std::size_t id) {
  return std::string(kind) + " " + std::to_string(id) + " in round " + std::to_string(round);
}

template <class Step>
BitTrace run_rounds(std::size_t rounds, std::size_t memory_bits, std::size_t processors,
                    bool keep_all, Step step) {
  BitTrace trace;
  std::vector<BitState> current(processors, BitState(memory_bits));
  if (keep_all) trace.states.push_back(current);
  for (std::size_t t = 1; t <= rounds; ++t) {
    std::vector<BitState> next;
    next.reserve(processors);
    for (std::size_t p = 0; p < processors; ++p) {
      next.push_back(step(t, p, std::span<const BitState>(current)));
      trace.max_state_bits = std::max(trace.max_state_bits, next.back().size());
    }
    current = std::move(next);
    if (keep_all) trace.states.push_back(current);
  }
  if (!keep_all) trace.states.push_back(std::move(current));
  return trace;
}

BitTrace node_run(const NodeProtocol& p, const Graph& g, const EdgeInput& input, bool keep_all) {
  check_protocol(p.rounds, p.memory_bits, static_cast<bool>(p.rule));
  check_input_shape(g, input);
  BitTrace trace = run_rounds(p.rounds, p.memory_bits, g.num_vertices(), keep_all,
                              [&](std::size_t t, std::size_t v, std::span<const BitState> prev) {
                                BitState s = p.rule(NodeView(g, t, static_cast<VertexId>(v), prev, input));
                                check_state_width(s, p.memory_bits, where("vertex", t, v));
                                return s;
                              });
  trace.outputs.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) trace.outputs[v] = trace.final_states()[v][0];
  return trace;
}

BitTrace edge_run(const EdgeProtocol& p, const Graph& g, const EdgeInput& input, bool keep_all) {
  check_protocol(p.rounds, p.memory_bits, static_cast<bool>(p.rule));
  if (!p.aggregate) throw InvalidProtocol("edge protocol has no aggregation rule");
  check_input_shape(g, input);
  BitTrace trace = run_rounds(p.rounds, p.memory_bits, g.num_edges(), keep_all,
                              [&](std::size_t t, std::size_t e, std::span<const BitState> prev) {
                                BitState s = p.rule(EdgeView(g, t, static_cast<EdgeId>(e), prev, input[e]));
                                check_state_width(s, p.memory_bits, where("edge", t, e));
                                return s;
                              });
  trace.outputs.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    trace.outputs[v] = p.aggregate(AggregateView(g, static_cast<VertexId>(v), trace.final_states()));
  return trace;
}

}  // namespace

BitTrace run_node_protocol(const NodeProtocol& p, const Graph& g, const EdgeInput& input) {
  return node_run(p, g, input, true);
}

BitTrace run_edge_protocol(const EdgeProtocol& p, const Graph& g, const EdgeInput& input) {
  return edge_run(p, g, input, true);
}

VertexOutputs node_outputs(const NodeProtocol& p, const Graph& g, const EdgeInput& input) {
  return node_run(p, g, input, false).outputs;
}

VertexOutputs edge_outputs(const EdgeProtocol& p, const Graph& g, const EdgeInput& input) {
  return edge_run(p, g, input, false).outputs;
}

nlohmann::json to_json(const BitTrace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& layer : trace.states) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& s : layer) row.push_back(s.to_hex());
    rounds.push_back(std::move(row));
  }
  nlohmann::json outputs = nlohmann::json::array();
  for (bool b : trace.outputs) outputs.push_back(b ? 1 : 0);
  return {{"states", std::move(rounds)},
          {"outputs", std::move(outputs)},
          {"max_state_bits", trace.max_state_bits}};
}

EdgeProtocol build_copy_edge_protocol() {
  EdgeProtocol p;
  p.name = "copy";
  p.rounds = 1;
  p.memory_bits = 1;
  p.rule = [](const EdgeView& view) { return BitState::from_uint(view.input(), 1); };
  p.aggregate = [](const AggregateView& view) {
    for (EdgeId e : view.graph().incident_edges(view.vertex()))
      if (view.state(e)[0]) return true;
    return false;
  };
  return p;
}

void for_each_input(std::size_t num_edges, std::size_t alphabet_size,
                    const std::function<void(const EdgeInput&)>& visit) {
  if (alphabet_size == 0) throw InvalidParameter("alphabet must be non-empty");
  EdgeInput input(num_edges, 0);
  while (true) {
    visit(input);
    std::size_t i = 0;
    while (i < num_edges && ++input[i] == alphabet_size) input[i++] = 0;
    if (i == num_edges) return;
  }
}

}  // namespace edgemp
