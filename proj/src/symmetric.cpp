// SPDX-License-Identifier: Apache-2.0
#include "edgemp/symmetric.hpp"

#include <algorithm>
#include <numeric>

#include "edgemp/errors.hpp"
#include "edgemp/rng.hpp"

namespace edgemp {

namespace {

void check_symmetric(std::size_t rounds, StateMode mode, std::size_t memory_bits, bool has_rule) {
  if (rounds == 0) throw InvalidProtocol("protocol needs at least one round");
  if (mode == StateMode::bounded && memory_bits == 0)
    throw InvalidProtocol("bounded protocol needs a positive memory budget");
  if (!has_rule) throw InvalidProtocol("protocol has no update rule");
}

Value initial_state(StateMode mode, std::size_t memory_bits) {
  return mode == StateMode::bounded ? Value::bits(BitState(memory_bits)) : Value::integer(0);
}

void check_value(const Value& s, StateMode mode, std::size_t memory_bits, const std::string& where) {
  if (mode == StateMode::unbounded) return;
  if (!s.is_bits()) throw InvalidProtocol(where + " produced a non-bit-string state in bounded mode");
  check_state_width(s.as_bits(), memory_bits, where);
}

Value incident_multiset(const Graph& g, VertexId v, std::span<const Value> states) {
  std::vector<Value> items;
  for (EdgeId f : g.incident_edges(v)) items.push_back(states[f]);
  return Value::multiset(std::move(items));
}

Value node_neighborhood(const Graph& g, VertexId v, std::span<const Value> states,
                        const EdgeInput& input) {
  std::vector<Value> items;
  for (EdgeId e : g.incident_edges(v)) {
    const VertexId w = g.other_endpoint(e, v);
    items.push_back(Value::tuple({states[w], Value::integer(input[e])}));
  }
  return Value::multiset(std::move(items));
}

template <class Step>
ValueTrace run_value_rounds(std::size_t rounds, const Value& init, std::size_t processors,
                            bool keep_all, Step step) {
  ValueTrace trace;
  std::vector<Value> current(processors, init);
  trace.max_state_bits = processors ? init.size_bits() : 0;
  if (keep_all) trace.states.push_back(current);
  for (std::size_t t = 1; t <= rounds; ++t) {
    std::vector<Value> next;
    next.reserve(processors);
    for (std::size_t p = 0; p < processors; ++p) {
      next.push_back(step(t, p, std::span<const Value>(current)));
      trace.max_state_bits = std::max(trace.max_state_bits, next.back().size_bits());
    }
    current = std::move(next);
    if (keep_all) trace.states.push_back(current);
  }
  if (!keep_all) trace.states.push_back(std::move(current));
  return trace;
}

std::string where(const char* kind, std::size_t round, std::size_t id) {
  return std::string(kind) + " " + std::to_string(id) + " in round " + std::to_string(round);
}

ValueTrace sym_node_run(const SymmetricNodeProtocol& p, const Graph& g, const EdgeInput& input,
                        bool keep_all) {
  check_symmetric(p.rounds, p.mode, p.memory_bits, static_cast<bool>(p.rule));
  if (p.mode == StateMode::unbounded && !p.readout)
    throw InvalidProtocol("unbounded node protocol needs a readout");
  check_input_shape(g, input);
  ValueTrace trace = run_value_rounds(
      p.rounds, initial_state(p.mode, p.memory_bits), g.num_vertices(), keep_all,
      [&](std::size_t t, std::size_t v, std::span<const Value> prev) {
        const auto vid = static_cast<VertexId>(v);
        Value s = p.rule(t, prev[v], node_neighborhood(g, vid, prev, input));
        check_value(s, p.mode, p.memory_bits, where("vertex", t, v));
        return s;
      });
  trace.outputs.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const Value& s = trace.final_states()[v];
    trace.outputs[v] = p.readout ? p.readout(s) : s.as_bits()[0];
  }
  return trace;
}

ValueTrace sym_edge_run(const SymmetricEdgeProtocol& p, const Graph& g, const EdgeInput& input,
                        bool keep_all) {
  check_symmetric(p.rounds, p.mode, p.memory_bits, static_cast<bool>(p.rule));
  if (!p.aggregate) throw InvalidProtocol("edge protocol has no aggregation rule");
  check_input_shape(g, input);
  ValueTrace trace = run_value_rounds(
      p.rounds, initial_state(p.mode, p.memory_bits), g.num_edges(), keep_all,
      [&](std::size_t t, std::size_t e, std::span<const Value> prev) {
        const auto eid = static_cast<EdgeId>(e);
        Value s = p.rule(t, Value::integer(input[e]), prev[e], edge_sides(g, eid, prev));
        check_value(s, p.mode, p.memory_bits, where("edge", t, e));
        return s;
      });
  trace.outputs.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    trace.outputs[v] =
        p.aggregate(incident_multiset(g, static_cast<VertexId>(v), trace.final_states()));
  return trace;
}

}  // namespace

Value edge_sides(const Graph& g, EdgeId e, std::span<const Value> states) {
  const Edge& ed = g.edge(e);
  return Value::multiset({incident_multiset(g, ed.u, states), incident_multiset(g, ed.v, states)});
}

Value bits_value(std::uint64_t value, std::size_t width) {
  return Value::bits(BitState::from_uint(value, width));
}

ValueTrace run_symmetric_node_protocol(const SymmetricNodeProtocol& p, const Graph& g,
                                       const EdgeInput& input) {
  return sym_node_run(p, g, input, true);
}

ValueTrace run_symmetric_edge_protocol(const SymmetricEdgeProtocol& p, const Graph& g,
                                       const EdgeInput& input) {
  return sym_edge_run(p, g, input, true);
}

VertexOutputs symmetric_node_outputs(const SymmetricNodeProtocol& p, const Graph& g,
                                     const EdgeInput& input) {
  return sym_node_run(p, g, input, false).outputs;
}

VertexOutputs symmetric_edge_outputs(const SymmetricEdgeProtocol& p, const Graph& g,
                                     const EdgeInput& input) {
  return sym_edge_run(p, g, input, false).outputs;
}

EdgeProtocol to_plain(const SymmetricEdgeProtocol& p) {
  if (p.mode != StateMode::bounded) throw Unsupported("only bounded symmetric protocols have a plain form");
  EdgeProtocol out;
  out.name = p.name;
  out.rounds = p.rounds;
  out.memory_bits = p.memory_bits;
  out.rule = [p](const EdgeView& view) {
    const Graph& g = view.graph();
    const Edge& ed = g.edge(view.edge());
    auto side = [&](VertexId x) {
      std::vector<Value> items;
      for (EdgeId f : g.incident_edges(x)) items.push_back(Value::bits(view.state(f)));
      return Value::multiset(std::move(items));
    };
    Value s = p.rule(view.round(), Value::integer(view.input()), Value::bits(view.own_state()),
                     Value::multiset({side(ed.u), side(ed.v)}));
    if (!s.is_bits()) throw InvalidProtocol("bounded rule produced a non-bit-string state");
    return s.as_bits();
  };
  out.aggregate = [p](const AggregateView& view) {
    std::vector<Value> items;
    for (EdgeId f : view.graph().incident_edges(view.vertex()))
      items.push_back(Value::bits(view.state(f)));
    return p.aggregate(Value::multiset(std::move(items)));
  };
  return out;
}

nlohmann::json to_json(const ValueTrace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& layer : trace.states) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& s : layer) row.push_back(s.to_json());
    rounds.push_back(std::move(row));
  }
  nlohmann::json outputs = nlohmann::json::array();
  for (bool b : trace.outputs) outputs.push_back(b ? 1 : 0);
  return {{"states", std::move(rounds)},
          {"outputs", std::move(outputs)},
          {"max_state_bits", trace.max_state_bits}};
}

SymmetricEdgeProtocol build_symmetric_copy_edge_protocol() {
  SymmetricEdgeProtocol p;
  p.name = "copy";
  p.rounds = 1;
  p.mode = StateMode::bounded;
  p.memory_bits = 1;
  p.rule = [](std::size_t, const Value& input, const Value&, const Value&) {
    return bits_value(input.as_count(), 1);
  };
  p.aggregate = [](const Value& incident) {
    for (const Value& s : incident.elements())
      if (s.as_bits()[0]) return true;
    return false;
  };
  return p;
}

nlohmann::json EquivarianceReport::to_json() const {
  nlohmann::json j = {{"equivariant", equivariant}, {"trials", trials}, {"permutations", permutations}};
  if (counterexample) j["counterexample"] = *counterexample;
  return j;
}

void check_automorphism(const Graph& g, std::span<const VertexId> pi) {
  if (pi.size() != g.num_vertices()) throw InvalidParameter("permutation has wrong length");
  std::vector<bool> seen(pi.size(), false);
  for (VertexId x : pi) {
    if (x >= pi.size() || seen[x]) throw InvalidParameter("vertex map is not a permutation");
    seen[x] = true;
  }
  for (const Edge& e : g.edges())
    if (!g.find_edge(pi[e.u], pi[e.v])) throw InvalidParameter("permutation is not an automorphism");
}

EdgeInput permute_input(const Graph& g, std::span<const VertexId> pi, const EdgeInput& input) {
  check_input_shape(g, input);
  EdgeInput out(input.size());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    out[g.edge_id(pi[ed.u], pi[ed.v])] = input[e];
  }
  return out;
}

EquivarianceReport check_equivariance(const Graph& g, const OutputRunner& run,
                                      std::span<const std::vector<VertexId>> permutations,
                                      std::size_t trials, std::size_t alphabet_size,
                                      std::uint64_t seed) {
  if (alphabet_size == 0) throw InvalidParameter("alphabet must be non-empty");
  for (const auto& pi : permutations) check_automorphism(g, pi);
  EquivarianceReport report;
  report.permutations = permutations.size();
  Rng rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    EdgeInput input(g.num_edges());
    for (auto& s : input) s = static_cast<Symbol>(rng.below(alphabet_size));
    const VertexOutputs base = run(input);
    for (const auto& pi : permutations) {
      const VertexOutputs moved = run(permute_input(g, pi, input));
      bool ok = true;
      for (VertexId v = 0; v < g.num_vertices() && ok; ++v) ok = moved[pi[v]] == base[v];
      if (!ok) {
        report.equivariant = false;
        report.trials = trial + 1;
        report.counterexample = nlohmann::json{
            {"permutation", pi}, {"input", input}, {"outputs", base}, {"permuted_outputs", moved}};
        return report;
      }
    }
  }
  report.trials = trials;
  return report;
}

namespace {

std::vector<std::size_t> shuffled(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return order;
}

}  // namespace

std::vector<VertexId> hub_path_swap(std::size_t m, std::size_t a, std::size_t b) {
  if (a < 1 || b < 1 || a > m || b > m) throw InvalidParameter("path index out of range");
  std::vector<VertexId> pi(m * m + 1);
  std::iota(pi.begin(), pi.end(), 0);
  for (std::size_t i = 1; i <= m; ++i) {
    pi[hub_path_vertex(m, i, a)] = hub_path_vertex(m, i, b);
    pi[hub_path_vertex(m, i, b)] = hub_path_vertex(m, i, a);
  }
  return pi;
}

std::vector<VertexId> hub_path_reversal(std::size_t m) {
  std::vector<VertexId> pi(m * m + 1);
  pi[0] = 0;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= m; ++i) pi[hub_path_vertex(m, i, j)] = hub_path_vertex(m, m + 1 - i, j);
  return pi;
}

std::vector<std::vector<VertexId>> sample_automorphisms(const Graph& g, std::size_t count,
                                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<VertexId>> out;
  const std::string& family = g.family();
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<VertexId> pi(g.num_vertices());
    if (family == "star") {
      const std::size_t n = g.num_vertices() - 1;
      auto order = shuffled(n, rng);
      pi[0] = 0;
      for (std::size_t i = 0; i < n; ++i) pi[i + 1] = static_cast<VertexId>(order[i] + 1);
    } else if (family == "complete") {
      auto order = shuffled(g.num_vertices(), rng);
      for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = static_cast<VertexId>(order[i]);
    } else if (family == "hub_path") {
      const std::size_t m = g.params().at("m").get<std::size_t>();
      auto order = shuffled(m, rng);
      const bool reverse = k % 2 == 1;
      pi[0] = 0;
      for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t i = 1; i <= m; ++i)
          pi[hub_path_vertex(m, i, j)] = hub_path_vertex(m, reverse ? m + 1 - i : i, order[j - 1] + 1);
    } else if (family == "depth2_tree") {
      const std::size_t m = g.params().at("m").get<std::size_t>();
      auto middle = shuffled(m, rng);
      pi[0] = 0;
      for (std::size_t u = 1; u <= m; ++u) {
        const std::size_t image = middle[u - 1] + 1;
        pi[u] = static_cast<VertexId>(image);
        auto leaves = shuffled(m, rng);
        for (std::size_t j = 1; j <= m; ++j) pi[depth2_leaf(m, u, j)] = depth2_leaf(m, image, leaves[j - 1] + 1);
      }
    } else {
      throw Unsupported("no automorphism sampler for family '" + family + "'");
    }
    check_automorphism(g, pi);
    out.push_back(std::move(pi));
  }
  return out;
}

}  // namespace edgemp
