// SPDX-License-Identifier: Apache-2.0
#include "edgemp/map_inference.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "edgemp/errors.hpp"

namespace edgemp {

unsigned potential_value(Symbol symbol, bool a, bool b) {
  switch (static_cast<Potential>(symbol)) {
    case Potential::differ:
      return a != b;
    case Potential::pin_one:
      return !(a && b);
    case Potential::pin_zero:
      return a || b;
    case Potential::zero:
      return 0;
  }
  throw InvalidParameter("potential code " + std::to_string(symbol) + " is not in 0..3");
}

std::uint64_t energy(const Graph& g, const EdgeInput& potentials, const Assignment& x) {
  check_input_shape(g, potentials);
  if (x.size() != g.num_vertices())
    throw ShapeMismatch("assignment has " + std::to_string(x.size()) + " entries, graph has " +
                        std::to_string(g.num_vertices()) + " vertices");
  std::uint64_t total = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    total += potential_value(potentials[e], x[ed.u], x[ed.v]);
  }
  return total;
}

Assignment brute_force_map(const Graph& g, const EdgeInput& potentials, std::size_t cap) {
  check_input_shape(g, potentials);
  check_alphabet(potentials, kPotentialCount);
  const std::size_t n = g.num_vertices();
  if (n > cap || n >= 63)
    throw CapExceeded("brute-force MAP over " + std::to_string(n) + " vertices exceeds cap " +
                      std::to_string(cap));
  // Bit (n-1-v) of `code` is x_v, so counting upward visits assignments in
  // lexicographic order and the first minimum found is the smallest.
  Assignment x(n, false), best(n, false);
  std::uint64_t best_energy = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t word = 0; word < total; ++word) {
    for (std::size_t v = 0; v < n; ++v) x[v] = (word >> (n - 1 - v)) & 1U;
    std::uint64_t en = 0;
    for (EdgeId e = 0; e < g.num_edges() && en < best_energy; ++e) {
      const Edge& ed = g.edge(e);
      en += potential_value(potentials[e], x[ed.u], x[ed.v]);
    }
    if (en < best_energy) {
      best_energy = en;
      best = x;
    }
  }
  return best;
}

HubPathIndex::HubPathIndex(std::size_t m) : m_(m) {
  if (m == 0) throw InvalidParameter("hub-path graph needs m >= 1");
  const Graph g = build_hub_path_graph(m);
  hub_.resize(m * m);
  path_.resize(m * (m - 1));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= m; ++i) {
      hub_[(j - 1) * m + (i - 1)] = g.edge_id(0, hub_path_vertex(m, i, j));
      if (i < m)
        path_[(j - 1) * (m - 1) + (i - 1)] =
            g.edge_id(hub_path_vertex(m, i, j), hub_path_vertex(m, i + 1, j));
    }
}

Assignment hub_path_dp(std::size_t m, const std::vector<Symbol>& hub, const std::vector<Symbol>& path) {
  if (hub.size() != m * m || path.size() != m * (m - 1))
    throw ShapeMismatch("hub-path symbol arrays have the wrong size");
  using Costs = std::array<std::uint64_t, 2>;
  // suffix[i-1][c]: least cost of positions i..m on one path given x_i = c
  // and the hub value, counting hub edges i..m and path edges i..m-1.
  std::vector<Costs> suffix(m);
  std::array<std::vector<bool>, 2> paths_for_hub;
  std::array<std::uint64_t, 2> total{0, 0};

  for (int c0 = 0; c0 <= 1; ++c0) {
    auto& xs = paths_for_hub[c0];
    xs.assign(m * m, false);
    for (std::size_t j = 1; j <= m; ++j) {
      const Symbol* h = &hub[(j - 1) * m];
      const Symbol* p = m > 1 ? &path[(j - 1) * (m - 1)] : nullptr;
      for (std::size_t i = m; i >= 1; --i) {
        for (int c = 0; c <= 1; ++c) {
          std::uint64_t cost = potential_value(h[i - 1], c0, c);
          if (i < m) {
            const std::uint64_t a = potential_value(p[i - 1], c, false) + suffix[i][0];
            const std::uint64_t b = potential_value(p[i - 1], c, true) + suffix[i][1];
            cost += std::min(a, b);
          }
          suffix[i - 1][c] = cost;
        }
      }
      // Forward recovery, preferring 0 on ties.
      bool prev = suffix[0][1] < suffix[0][0];
      total[c0] += suffix[0][prev];
      xs[(j - 1) * m] = prev;
      for (std::size_t i = 2; i <= m; ++i) {
        const std::uint64_t a = potential_value(p[i - 2], prev, false) + suffix[i - 1][0];
        const std::uint64_t b = potential_value(p[i - 2], prev, true) + suffix[i - 1][1];
        prev = b < a;
        xs[(j - 1) * m + (i - 1)] = prev;
      }
    }
  }
  const int c0 = total[1] < total[0] ? 1 : 0;
  Assignment x(m * m + 1, false);
  x[0] = c0;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= m; ++i)
      x[hub_path_vertex(m, i, j)] = paths_for_hub[c0][(j - 1) * m + (i - 1)];
  return x;
}

namespace {

std::size_t hub_path_m(const Graph& g) {
  if (g.family() != "hub_path" || !g.params().contains("m"))
    throw InvalidParameter("graph is not a hub-path graph");
  const auto m = g.params().at("m").get<std::size_t>();
  if (g.num_vertices() != m * m + 1 || g.num_edges() != m * m + m * (m - 1))
    throw InvalidParameter("graph does not match hub-path parameters");
  return m;
}

}  // namespace

Assignment dp_map_hub_path(const Graph& g, const EdgeInput& potentials) {
  const std::size_t m = hub_path_m(g);
  check_input_shape(g, potentials);
  check_alphabet(potentials, kPotentialCount);
  const HubPathIndex index(m);
  std::vector<Symbol> hub(m * m), path(m * (m - 1));
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= m; ++i) {
      hub[(j - 1) * m + (i - 1)] = potentials[index.hub_edge(i, j)];
      if (i < m) path[(j - 1) * (m - 1) + (i - 1)] = potentials[index.path_edge(i, j)];
    }
  return hub_path_dp(m, hub, path);
}

EdgeProtocol build_map_edge_protocol(std::size_t m) {
  if (m < 2) throw InvalidParameter("the MAP edge protocol needs m >= 2");
  const HubPathIndex index(m);
  const Graph shape = build_hub_path_graph(m);
  // Position (i, j) of each hub edge, and whether an edge is a hub edge.
  struct HubSlot {
    bool is_hub = false;
    std::size_t i = 0, j = 0;
  };
  std::vector<HubSlot> slots(shape.num_edges());
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t i = 1; i <= m; ++i) slots[index.hub_edge(i, j)] = {true, i, j};

  EdgeProtocol p;
  p.name = "map_hub_path";
  p.rounds = 3;
  p.memory_bits = 4;
  p.rule = [m, index, slots](const EdgeView& view) {
    if (view.graph().num_edges() != slots.size())
      throw InvalidProtocol("MAP protocol built for a different graph");
    const HubSlot& slot = slots[view.edge()];
    BitState next(4);
    switch (view.round()) {
      case 1:
        next.write_uint(0, 2, view.input());
        break;
      case 2:
        if (slot.is_hub) {
          if (slot.i < m) next.write_uint(0, 2, view.state(index.path_edge(slot.i, slot.j)).read_uint(0, 2));
          next.write_uint(2, 2, view.own_state().read_uint(0, 2));
        }
        break;
      case 3:
        if (slot.is_hub) {
          std::vector<Symbol> hub(m * m), path(m * (m - 1));
          for (std::size_t j = 1; j <= m; ++j)
            for (std::size_t i = 1; i <= m; ++i) {
              const BitState& s = view.state(index.hub_edge(i, j));
              hub[(j - 1) * m + (i - 1)] = static_cast<Symbol>(s.read_uint(2, 2));
              if (i < m) path[(j - 1) * (m - 1) + (i - 1)] = static_cast<Symbol>(s.read_uint(0, 2));
            }
          const Assignment x = hub_path_dp(m, hub, path);
          next.set(0, x[0]);
          next.set(1, x[hub_path_vertex(m, slot.i, slot.j)]);
        }
        break;
      default:
        throw InvalidProtocol("MAP protocol has three rounds");
    }
    return next;
  };
  p.aggregate = [m, index](const AggregateView& view) {
    const VertexId v = view.vertex();
    if (v == 0) return view.state(index.hub_edge(1, 1))[0];
    const std::size_t j = (v - 1) / m + 1;
    const std::size_t i = (v - 1) % m + 1;
    return view.state(index.hub_edge(i, j))[1];
  };
  return p;
}

MapLowerBoundInstance map_lower_bound_instance(std::size_t m, std::size_t rounds) {
  if (m < 2) throw InvalidParameter("the lower-bound instance needs m >= 2");
  if (rounds == 0) throw InvalidParameter("rounds must be at least 1");
  if (rounds > m - 1)
    throw InvalidParameter("rounds must be at most m-1 so the far end of each path stays outside F");
  const Graph g = build_hub_path_graph(m);
  MapLowerBoundInstance inst;
  inst.m = m;
  inst.rounds = rounds;
  inst.K = {0};
  for (std::size_t j = 1; j <= m; ++j) inst.S.push_back(hub_path_vertex(m, 1, j));
  inst.F = light_cone_edges(g, inst.K, inst.S, rounds - 1);
  for (EdgeId e : inst.F)
    inst.fixed.push_back(g.edge(e).u == 0 ? code(Potential::zero) : code(Potential::differ));
  return inst;
}

EdgeInput map_lower_bound_input(const MapLowerBoundInstance& inst, const std::vector<bool>& y) {
  const std::size_t m = inst.m;
  if (y.size() != m) throw ShapeMismatch("y must have one bit per path");
  const Graph g = build_hub_path_graph(m);
  const HubPathIndex index(m);
  EdgeInput input(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    input[e] = g.edge(e).u == 0 ? code(Potential::zero) : code(Potential::differ);
  auto in_f = [&](EdgeId e) { return std::binary_search(inst.F.begin(), inst.F.end(), e); };
  for (std::size_t j = 1; j <= m; ++j) {
    const EdgeId last = index.path_edge(m - 1, j);
    const EdgeId far_hub = index.hub_edge(m, j);
    if (!in_f(last)) {
      input[last] = code(y[j - 1] ? Potential::pin_one : Potential::pin_zero);
    } else if (!in_f(far_hub)) {
      // Any pin_one forces x_0 = 1; unpinned paths then tie and the
      // tie-break sets them to 0.
      input[far_hub] = code(y[j - 1] ? Potential::pin_one : Potential::zero);
    } else {
      throw InvalidParameter("no edge outside F can pin path " + std::to_string(j));
    }
  }
  for (std::size_t k = 0; k < inst.F.size(); ++k) input[inst.F[k]] = inst.fixed[k];
  return input;
}

nlohmann::json potentials_to_json(const Graph& g, const EdgeInput& potentials) {
  check_input_shape(g, potentials);
  return {{"graph", to_json(g)}, {"symbols", potentials}};
}

std::pair<Graph, EdgeInput> potentials_from_json(const nlohmann::json& j) {
  try {
    Graph g = graph_from_json(j.at("graph"));
    auto symbols = j.at("symbols").get<EdgeInput>();
    check_input_shape(g, symbols);
    check_alphabet(symbols, kPotentialCount);
    return {std::move(g), std::move(symbols)};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad potential assignment JSON: ") + e.what());
  }
}

}  // namespace edgemp
