// SPDX-License-Identifier: Apache-2.0
#include "edgemp/counting.hpp"

#include <algorithm>
#include <map>

#include "edgemp/errors.hpp"

namespace edgemp {

namespace {

std::size_t family_param(const Graph& g, const char* family, const char* key) {
  if (g.family() != family || !g.params().contains(key))
    throw InvalidParameter(std::string("graph is not a ") + family + " graph");
  return g.params().at(key).get<std::size_t>();
}

std::size_t depth2_m(const Graph& g) {
  const std::size_t m = family_param(g, "depth2_tree", "m");
  if (g.num_vertices() != 1 + m + m * m) throw InvalidParameter("graph does not match depth2_tree parameters");
  return m;
}

std::size_t star_n(const Graph& g) {
  const std::size_t n = family_param(g, "star", "n");
  if (g.num_vertices() != n + 1) throw InvalidParameter("graph does not match star parameters");
  return n;
}

std::uint64_t count_equal(const Value& ms, const Value& target) {
  return static_cast<std::uint64_t>(std::count(ms.elements().begin(), ms.elements().end(), target));
}

std::uint64_t sum_counts(const Value& ms) {
  std::uint64_t total = 0;
  for (const Value& v : ms.elements()) total += v.as_count();
  return total;
}

bool any_bit0(const Value& incident) {
  for (const Value& s : incident.elements())
    if (s.as_bits()[0]) return true;
  return false;
}

}  // namespace

std::vector<std::uint64_t> input_summation(const Graph& g, const EdgeInput& input) {
  check_input_shape(g, input);
  std::vector<std::uint64_t> c(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (EdgeId f : g.edge_neighborhood(e)) c[e] += input[f];
  return c;
}

VertexOutputs counting_task_g(const Graph& g, const EdgeInput& input) {
  const std::size_t m = depth2_m(g);
  check_input_shape(g, input);
  check_alphabet(input, 2);
  const auto c = input_summation(g, input);
  VertexOutputs out(g.num_vertices(), false);
  for (VertexId u = 1; u <= m; ++u) {
    const EdgeId hub = g.edge_id(0, u);
    std::size_t same = 0;
    for (EdgeId f : g.edge_neighborhood(hub)) same += c[f] == c[hub];
    out[u] = same > m + 1;
    out[0] = out[0] || out[u];
  }
  return out;
}

SymmetricEdgeProtocol build_counting_edge_protocol(std::size_t m) {
  if (m == 0) throw InvalidParameter("counting protocol needs m >= 1");
  const std::size_t width = bits_for(2 * m + 1);
  SymmetricEdgeProtocol p;
  p.name = "counting";
  p.rounds = 3;
  p.mode = StateMode::bounded;
  p.memory_bits = width;
  p.rule = [m, width](std::size_t round, const Value& input, const Value& own, const Value& sides) {
    switch (round) {
      case 1:
        return bits_value(input.as_count(), width);
      case 2: {
        // Each side contains e itself, so e's value is counted twice.
        const std::uint64_t total = sum_counts(sides.at(0)) + sum_counts(sides.at(1)) - own.as_count();
        return bits_value(total, width);
      }
      case 3: {
        const std::uint64_t same = count_equal(sides.at(0), own) + count_equal(sides.at(1), own) - 1;
        return bits_value(same > m + 1 ? 1 : 0, width);
      }
      default:
        throw InvalidProtocol("counting protocol has three rounds");
    }
  };
  p.aggregate = any_bit0;
  return p;
}

CountingLowerBoundInstance counting_lower_bound_instance(std::size_t m, std::size_t rounds) {
  if (m < 2 || m % 2 != 0) throw InvalidParameter("the counting lower-bound instance needs even m >= 2");
  if (rounds == 0) throw InvalidParameter("rounds must be at least 1");
  const Graph g = build_depth2_tree(m);
  CountingLowerBoundInstance inst;
  inst.m = m;
  inst.K = {0};
  for (VertexId u = 1; u <= m / 2; ++u) inst.S.push_back(u);
  inst.F = light_cone_edges(g, inst.K, inst.S, rounds - 1);
  for (EdgeId e : inst.F) {
    const Edge& ed = g.edge(e);
    if (ed.u == 0) {
      inst.fixed.push_back(0);
    } else {
      const std::size_t u = ed.u;
      const std::size_t j = ed.v - depth2_leaf(m, u, 1) + 1;
      inst.fixed.push_back(j <= u ? 1 : 0);
    }
  }
  return inst;
}

EdgeInput counting_lower_bound_input(const CountingLowerBoundInstance& inst, const std::vector<bool>& x) {
  const std::size_t m = inst.m;
  const std::size_t half = m / 2;
  if (x.size() != half) throw ShapeMismatch("x must have m/2 bits");
  const Graph g = build_depth2_tree(m);
  EdgeInput input(g.num_edges(), 0);
  for (std::size_t v = half + 1; v <= m; ++v)
    for (std::size_t j = 1; j <= m; ++j)
      input[g.edge_id(static_cast<VertexId>(v), depth2_leaf(m, v, j))] = x[v - half - 1] && j <= v - half;
  for (std::size_t k = 0; k < inst.F.size(); ++k) input[inst.F[k]] = inst.fixed[k];
  return input;
}

VertexOutputs star_duplicate_g(const Graph& g, const EdgeInput& input) {
  const std::size_t n = star_n(g);
  check_input_shape(g, input);
  std::map<Symbol, std::size_t> histogram;
  for (Symbol s : input) ++histogram[s];
  VertexOutputs out(n + 1, false);
  for (VertexId v = 1; v <= n; ++v) {
    out[v] = histogram[input[g.edge_id(0, v)]] >= 2;
    out[0] = out[0] || out[v];
  }
  return out;
}

VertexOutputs large_alphabet_task_g(const Graph& g, const EdgeInput& input) {
  const std::size_t n = star_n(g);
  check_input_shape(g, input);
  for (Symbol s : input)
    if (s < 1 || s > n) throw InvalidParameter("large-alphabet symbols must lie in 1..n");
  return star_duplicate_g(g, input);
}

SymmetricEdgeProtocol build_large_alphabet_edge_protocol(std::size_t n) {
  if (n == 0) throw InvalidParameter("star needs at least one leaf");
  const std::size_t width = bits_for(n);
  SymmetricEdgeProtocol p;
  p.name = "large_alphabet";
  p.rounds = 2;
  p.mode = StateMode::bounded;
  p.memory_bits = width;
  p.rule = [width](std::size_t round, const Value& input, const Value& own, const Value& sides) {
    if (round == 1) return bits_value(input.as_count(), width);
    if (round != 2) throw InvalidProtocol("large-alphabet protocol has two rounds");
    // Occurrences in M_G(e) other than e itself; e appears on both sides.
    const std::uint64_t others = count_equal(sides.at(0), own) + count_equal(sides.at(1), own) - 2;
    return bits_value(others >= 1 ? 1 : 0, width);
  };
  p.aggregate = any_bit0;
  return p;
}

NodeProtocol build_histogram_node_protocol(std::size_t n) {
  if (n == 0) throw InvalidParameter("star needs at least one leaf");
  const std::size_t width = bits_for(n);
  NodeProtocol p;
  p.name = "histogram";
  p.rounds = 2;
  p.memory_bits = width;
  p.rule = [n, width](const NodeView& view) {
    const Graph& g = view.graph();
    if (g.num_vertices() != n + 1) throw InvalidProtocol("histogram protocol built for a different star");
    const VertexId v = view.vertex();
    if (view.round() == 1) {
      if (v != 0) return BitState(width);
      std::uint64_t ones = 0;
      for (EdgeId e : g.incident_edges(0)) ones += view.input(e) != 0;
      return BitState::from_uint(ones, width);
    }
    const std::uint64_t ones = view.state(0).to_uint();
    const std::uint64_t zeros = n - ones;
    bool duplicate = false;
    if (v == 0) {
      duplicate = ones >= 2 || zeros >= 2;
    } else {
      const bool mine = view.input(g.edge_id(0, v)) != 0;
      duplicate = (mine ? ones : zeros) >= 2;
    }
    return BitState::from_uint(duplicate ? 1 : 0, width);
  };
  return p;
}

}  // namespace edgemp
