// SPDX-License-Identifier: Apache-2.0
#include "edgemp/simulation.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "edgemp/errors.hpp"

namespace edgemp {

SimulationLayout simulation_layout(const EdgeProtocol& p, const Graph& g) {
  SimulationLayout layout;
  layout.edge_bits = p.memory_bits;
  layout.max_degree = g.max_degree();
  layout.header_bits = bits_for(layout.max_degree);
  return layout;
}

namespace {

BitState read_slot(const SimulationLayout& layout, const BitState& s, std::size_t k) {
  return s.slice(layout.slot_offset(k), layout.edge_bits);
}

}  // namespace

NodeProtocol simulate_edge_with_node(const EdgeProtocol& p, const Graph& g) {
  if (!p.rule || !p.aggregate) throw InvalidProtocol("edge protocol is incomplete");
  const SimulationLayout layout = simulation_layout(p, g);
  auto graph = std::make_shared<const Graph>(g);

  NodeProtocol out;
  out.name = p.name + "/node-simulation";
  out.rounds = p.rounds + 1;
  out.memory_bits = layout.total_bits();
  out.rule = [p, layout, graph](const NodeView& view) {
    const Graph& gg = *graph;
    const VertexId v = view.vertex();
    const std::size_t t = view.round();
    auto incident = gg.incident_edges(v);

    BitState next(layout.total_bits());
    next.write_uint(1, layout.header_bits, incident.size());
    if (t == 1) return next;  // every edge state is still zero

    // Previous edge states visible to the edges at v: the slots held by v
    // and by each neighbor. Indexed by edge id for EdgeView.
    std::vector<BitState> edge_states(gg.num_edges(), BitState(layout.edge_bits));
    auto load = [&](VertexId x) {
      const BitState& sx = view.state(x);
      auto inc = gg.incident_edges(x);
      for (std::size_t k = 0; k < inc.size(); ++k) edge_states[inc[k]] = read_slot(layout, sx, k);
    };
    load(v);
    for (VertexId w : gg.neighbors(v)) load(w);

    for (std::size_t k = 0; k < incident.size(); ++k) {
      const EdgeId e = incident[k];
      BitState s = p.rule(EdgeView(gg, t - 1, e, edge_states, view.input(e)));
      check_state_width(s, p.memory_bits, "simulated edge " + std::to_string(e));
      next.write(layout.slot_offset(k), s);
    }
    if (t == p.rounds + 1) {
      std::vector<BitState> final_states(gg.num_edges(), BitState(layout.edge_bits));
      for (std::size_t k = 0; k < incident.size(); ++k)
        final_states[incident[k]] = read_slot(layout, next, k);
      next.set(0, p.aggregate(AggregateView(gg, v, final_states)));
    }
    return next;
  };
  return out;
}

namespace {

// Q_{s-1}(x) from Q_s(x): take the second component of every tuple.
Value project(const Value& q) {
  std::vector<Value> items;
  for (const Value& p : q.elements()) items.push_back(p.at(1));
  return Value::multiset(std::move(items));
}

// history[s] = Q_s for s = 0..t-1, given Q_{t-1}.
std::vector<Value> history(const Value& latest, std::size_t t) {
  std::vector<Value> h(t);
  h[t - 1] = latest;
  for (std::size_t s = t - 1; s > 0; --s) h[s - 1] = project(h[s]);
  return h;
}

}  // namespace

SymmetricNodeProtocol universal_symmetric_node_protocol(std::size_t edge_rounds) {
  if (edge_rounds == 0) throw InvalidProtocol("protocol needs at least one round");
  SymmetricNodeProtocol out;
  out.name = "universal";
  out.rounds = edge_rounds + 1;
  out.mode = StateMode::unbounded;
  out.rule = [](std::size_t round, const Value& own, const Value& neighborhood) {
    const std::size_t t = round - 1;  // edge round whose states this round collects
    std::vector<Value> items;
    if (t == 0) {
      items.assign(neighborhood.size(), Value::integer(0));
      return Value::multiset(std::move(items));
    }
    const std::vector<Value> mine = history(own, t);
    for (const Value& entry : neighborhood.elements()) {
      const std::vector<Value> theirs = history(entry.at(0), t);
      const Value& input = entry.at(1);
      Value p = Value::integer(0);
      for (std::size_t s = 1; s <= t; ++s)
        p = Value::tuple({input, p, Value::multiset({mine[s - 1], theirs[s - 1]})});
      items.push_back(std::move(p));
    }
    return Value::multiset(std::move(items));
  };
  return out;
}

SymmetricNodeProtocol symmetric_edge_to_node(const SymmetricEdgeProtocol& p, StateMode mode) {
  if (mode == StateMode::bounded)
    throw Unsupported("the symmetric edge-to-node simulation needs unbounded state");
  if (!p.rule || !p.aggregate) throw InvalidProtocol("edge protocol is incomplete");
  SymmetricNodeProtocol out = universal_symmetric_node_protocol(p.rounds);
  out.name = p.name + "/symmetric-node-simulation";
  const Value initial = p.mode == StateMode::bounded ? Value::bits(BitState(p.memory_bits)) : Value::integer(0);
  out.readout = [p, initial](const Value& final_state) {
    // decode(P°_t(e)) = P_t(e), memoized by encoding within one readout.
    std::unordered_map<std::string, Value> memo;
    std::function<Value(const Value&, std::size_t)> decode = [&](const Value& node, std::size_t t) -> Value {
      if (t == 0) return initial;
      auto it = memo.find(node.encoding());
      if (it != memo.end()) return it->second;
      const Value& input = node.at(0);
      const Value own = decode(node.at(1), t - 1);
      std::vector<Value> sides;
      for (const Value& q : node.at(2).elements()) {
        std::vector<Value> states;
        for (const Value& f : q.elements()) states.push_back(decode(f, t - 1));
        sides.push_back(Value::multiset(std::move(states)));
      }
      Value result = p.rule(t, input, own, Value::multiset(std::move(sides)));
      memo.emplace(node.encoding(), result);
      return result;
    };
    std::vector<Value> incident;
    for (const Value& e : final_state.elements()) incident.push_back(decode(e, p.rounds));
    return p.aggregate(Value::multiset(std::move(incident)));
  };
  return out;
}

}  // namespace edgemp
