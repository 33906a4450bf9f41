// SPDX-License-Identifier: Apache-2.0
#include "edgemp/disjointness.hpp"

#include "edgemp/errors.hpp"

namespace edgemp {

namespace {

std::size_t complete_n(const Graph& g) {
  if (g.family() != "complete" || !g.params().contains("n"))
    throw InvalidParameter("graph is not a complete graph");
  const auto n = g.params().at("n").get<std::size_t>();
  if (g.num_vertices() != n) throw InvalidParameter("graph does not match complete parameters");
  if (n % 2 != 0) throw InvalidParameter("disjointness task needs an even number of vertices");
  return n;
}

// Edge between 1-based names a and b, or nothing when a == b.
std::optional<EdgeId> named_edge(const Graph& g, std::size_t a, std::size_t b) {
  if (a == b) return std::nullopt;
  return g.edge_id(static_cast<VertexId>(a - 1), static_cast<VertexId>(b - 1));
}

}  // namespace

std::pair<std::vector<bool>, std::vector<bool>> disjointness_split(const Graph& g, const EdgeInput& input) {
  const std::size_t n = complete_n(g);
  check_input_shape(g, input);
  check_alphabet(input, 2);
  std::vector<bool> x, y;
  for (std::size_t i = 1; i <= n / 2; ++i)
    for (std::size_t j = i + 1; j <= n / 2; ++j) {
      x.push_back(input[*named_edge(g, i, j)] != 0);
      y.push_back(input[*named_edge(g, n + 1 - i, n + 1 - j)] != 0);
    }
  return {std::move(x), std::move(y)};
}

bool disj(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw ShapeMismatch("DISJ inputs differ in length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

VertexOutputs disjointness_task_g(const Graph& g, const EdgeInput& input) {
  const std::size_t n = complete_n(g);
  check_input_shape(g, input);
  check_alphabet(input, 2);
  bool hit = false;
  for (std::size_t i = 1; i <= n / 2 && !hit; ++i)
    for (std::size_t j = i + 1; j <= n / 2 && !hit; ++j)
      hit = input[*named_edge(g, i, j)] && input[*named_edge(g, n + 1 - i, n + 1 - j)];
  return VertexOutputs(n, hit);
}

EdgeProtocol build_disjointness_edge_protocol(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw InvalidParameter("disjointness protocol needs even n >= 2");
  EdgeProtocol p;
  p.name = "disjointness";
  p.rounds = 6;
  p.memory_bits = 1;
  p.rule = [n](const EdgeView& view) {
    const Graph& g = view.graph();
    if (g.num_vertices() != n) throw InvalidProtocol("disjointness protocol built for a different graph");
    const Edge& ed = g.edge(view.edge());
    const std::size_t a = ed.u + 1, b = ed.v + 1;
    auto read = [&](std::optional<EdgeId> f) { return f ? view.state(*f)[0] : false; };
    bool bit = false;
    switch (view.round()) {
      case 1:
        bit = view.input() != 0;
        break;
      case 2:
        bit = read(named_edge(g, n + 1 - a, b));
        break;
      case 3:
        bit = read(named_edge(g, a, n + 1 - b));
        break;
      case 4:
        bit = a <= n / 2 && b <= n / 2 && view.input() != 0 && view.own_state()[0];
        break;
      case 5:
      case 6:
        for (EdgeId f : g.edge_neighborhood(view.edge())) bit = bit || view.state(f)[0];
        break;
      default:
        throw InvalidProtocol("disjointness protocol has six rounds");
    }
    BitState s(1);
    s.set(0, bit);
    return s;
  };
  p.aggregate = [](const AggregateView& view) {
    const VertexId v = view.vertex();
    const Graph& g = view.graph();
    return view.state(g.edge_id(v, v == 0 ? 1 : 0))[0];
  };
  return p;
}

}  // namespace edgemp
