// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "edgemp/counting.hpp"
#include "edgemp/disjointness.hpp"
#include "edgemp/errors.hpp"
#include "edgemp/map_inference.hpp"
#include "edgemp/protocol.hpp"
#include "edgemp/rng.hpp"
#include "edgemp/simulation.hpp"
#include "edgemp/symmetric.hpp"

using namespace edgemp;

namespace {

// Two rounds of OR: round 1 reads incident inputs, round 2 reads neighbors.
NodeProtocol two_hop_or() {
  NodeProtocol p;
  p.name = "two_hop_or";
  p.rounds = 2;
  p.memory_bits = 1;
  p.rule = [](const NodeView& view) {
    bool bit = false;
    if (view.round() == 1) {
      for (EdgeId e : view.graph().incident_edges(view.vertex())) bit = bit || view.input(e) != 0;
    } else {
      bit = view.own_state()[0];
      for (VertexId w : view.graph().neighbors(view.vertex())) bit = bit || view.state(w)[0];
    }
    return BitState::from_uint(bit, 1);
  };
  return p;
}

// Oracle for two_hop_or: some edge with input 1 has an endpoint at distance <= 1.
VertexOutputs two_hop_or_oracle(const Graph& g, const EdgeInput& input) {
  VertexOutputs out(g.num_vertices(), false);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!input[e]) continue;
      const Edge& ed = g.edge(e);
      for (VertexId w : g.closed_neighborhood(v))
        if (ed.u == w || ed.v == w) out[v] = true;
    }
  return out;
}

}  // namespace

TEST_SUITE("protocol") {
  TEST_CASE("node protocol matches a direct oracle") {
    const Graph g = build_path(5);
    const NodeProtocol p = two_hop_or();
    std::size_t count = 0;
    for_each_input(g.num_edges(), 2, [&](const EdgeInput& in) {
      const BitTrace trace = run_node_protocol(p, g, in);
      CHECK(trace.rounds() == 2);
      CHECK(trace.states.size() == 3);
      CHECK(trace.max_state_bits == 1);
      CHECK(trace.outputs == two_hop_or_oracle(g, in));
      CHECK(node_outputs(p, g, in) == trace.outputs);
      ++count;
    });
    CHECK(count == 16);
  }

  TEST_CASE("round zero is all zeros") {
    const BitTrace trace = run_edge_protocol(build_copy_edge_protocol(), build_star(3), {1, 0, 1});
    for (const auto& s : trace.states[0]) CHECK_FALSE(s.any());
    CHECK(trace.outputs == VertexOutputs{true, true, false, true});
  }

  TEST_CASE("locality is enforced") {
    const Graph g = build_path(4);
    NodeProtocol far;
    far.name = "far";
    far.rounds = 1;
    far.memory_bits = 1;
    far.rule = [](const NodeView& view) { return view.state((view.vertex() + 2) % 4); };
    CHECK_THROWS_AS(run_node_protocol(far, g, {0, 0, 0}), InvalidProtocol);

    NodeProtocol far_input = far;
    far_input.rule = [](const NodeView& view) {
      return BitState::from_uint(view.input(view.vertex() == 0 ? 2 : 0) & 1, 1);
    };
    CHECK_THROWS_AS(run_node_protocol(far_input, g, {0, 0, 0}), InvalidProtocol);

    EdgeProtocol e = build_copy_edge_protocol();
    e.rule = [](const EdgeView& view) { return view.state(view.edge() == 0 ? 2 : 0); };
    CHECK_THROWS_AS(run_edge_protocol(e, g, {0, 0, 0}), InvalidProtocol);

    EdgeProtocol agg = build_copy_edge_protocol();
    agg.aggregate = [](const AggregateView& view) { return view.state(2)[0]; };
    CHECK_THROWS_AS(run_edge_protocol(agg, g, {0, 0, 0}), InvalidProtocol);
  }

  TEST_CASE("memory budget is enforced") {
    EdgeProtocol wide = build_copy_edge_protocol();
    wide.rule = [](const EdgeView&) { return BitState(2); };
    CHECK_THROWS_AS(run_edge_protocol(wide, build_path(3), {0, 0}), MemoryBudgetViolation);
    EdgeProtocol narrow = build_copy_edge_protocol();
    narrow.memory_bits = 3;
    CHECK_THROWS_AS(run_edge_protocol(narrow, build_path(3), {0, 0}), InvalidProtocol);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(run_edge_protocol(build_copy_edge_protocol(), build_path(3), {0}), ShapeMismatch);
    EdgeProtocol none = build_copy_edge_protocol();
    none.rounds = 0;
    CHECK_THROWS_AS(run_edge_protocol(none, build_path(3), {0, 0}), InvalidProtocol);
    CHECK_THROWS_AS(check_alphabet({0, 4}, 4), InvalidParameter);
  }

  TEST_CASE("for_each_input enumerates every input once") {
    std::set<EdgeInput> seen;
    for_each_input(3, 3, [&](const EdgeInput& in) { seen.insert(in); });
    CHECK(seen.size() == 27);
    EdgeInput first;
    for_each_input(2, 2, [&](const EdgeInput& in) {
      if (first.empty()) first = in;
    });
    CHECK(first == EdgeInput{0, 0});
  }

  TEST_CASE("trace json") {
    const auto j = to_json(run_edge_protocol(build_map_edge_protocol(2), build_hub_path_graph(2),
                                             {0, 1, 2, 3, 0, 1}));
    CHECK(j["states"].size() == 4);
    CHECK(j["max_state_bits"] == 4);
    CHECK(j["outputs"].size() == 5);
  }
}

TEST_SUITE("symmetric") {
  TEST_CASE("symmetric node protocol sees a multiset of (state, input) pairs") {
    // Unbounded: round 1 counts neighbors joined by an input-1 edge.
    SymmetricNodeProtocol p;
    p.name = "count";
    p.rounds = 1;
    p.mode = StateMode::unbounded;
    p.rule = [](std::size_t, const Value&, const Value& nbhd) {
      std::int64_t c = 0;
      for (const Value& pair : nbhd.elements()) c += pair.at(1).as_integer();
      return Value::integer(c);
    };
    p.readout = [](const Value& s) { return s.as_integer() >= 2; };
    const Graph g = build_star(4);
    for_each_input(g.num_edges(), 2, [&](const EdgeInput& in) {
      const auto out = symmetric_node_outputs(p, g, in);
      CHECK(out[0] == (in[0] + in[1] + in[2] + in[3] >= 2));
      for (VertexId v = 1; v <= 4; ++v) CHECK_FALSE(out[v]);
    });
  }

  TEST_CASE("edge sides hold both endpoint multisets including the edge") {
    const Graph g = build_path(4);
    std::vector<Value> states{Value::integer(10), Value::integer(20), Value::integer(30)};
    const Value sides = edge_sides(g, 1, states);
    const Value left = Value::multiset({Value::integer(10), Value::integer(20)});
    const Value right = Value::multiset({Value::integer(20), Value::integer(30)});
    CHECK(sides == Value::multiset({right, left}));
  }

  TEST_CASE("bounded symmetric protocols agree with their plain form") {
    const Graph g = build_depth2_tree(2);
    const SymmetricEdgeProtocol p = build_counting_edge_protocol(2);
    const EdgeProtocol plain = to_plain(p);
    for_each_input(g.num_edges(), 2, [&](const EdgeInput& in) {
      CHECK(edge_outputs(plain, g, in) == symmetric_edge_outputs(p, g, in));
    });
    SymmetricEdgeProtocol unbounded = p;
    unbounded.mode = StateMode::unbounded;
    CHECK_THROWS_AS(to_plain(unbounded), Unsupported);
  }

  TEST_CASE("automorphism helpers") {
    const Graph g = build_hub_path_graph(3);
    CHECK_NOTHROW(check_automorphism(g, hub_path_swap(3, 1, 3)));
    CHECK_NOTHROW(check_automorphism(g, hub_path_reversal(3)));
    std::vector<VertexId> bad(g.num_vertices());
    for (VertexId v = 0; v < bad.size(); ++v) bad[v] = v;
    std::swap(bad[0], bad[1]);
    CHECK_THROWS_AS(check_automorphism(g, bad), InvalidParameter);
    for (const auto& pi : sample_automorphisms(g, 6, 3)) CHECK_NOTHROW(check_automorphism(g, pi));
    CHECK_THROWS_AS(sample_automorphisms(build_path(4), 1, 0), Unsupported);

    // Relabelling moves each symbol to the image edge.
    const auto pi = hub_path_swap(3, 1, 2);
    Rng rng(4);
    EdgeInput in(g.num_edges());
    for (auto& s : in) s = static_cast<Symbol>(rng.below(4));
    const EdgeInput moved = permute_input(g, pi, in);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      CHECK(moved[g.edge_id(pi[g.edge(e).u], pi[g.edge(e).v])] == in[e]);
  }

  TEST_CASE("shipped symmetric protocols are equivariant") {
    {
      const Graph g = build_depth2_tree(3);
      const auto p = build_counting_edge_protocol(3);
      const auto perms = sample_automorphisms(g, 8, 11);
      const auto report = check_equivariance(
          g, [&](const EdgeInput& in) { return symmetric_edge_outputs(p, g, in); }, perms, 20, 2, 5);
      CHECK(report.equivariant);
      CHECK(report.trials == 20);
    }
    {
      const Graph g = build_star(4);
      const auto p = build_large_alphabet_edge_protocol(4);
      const auto perms = sample_automorphisms(g, 8, 12);
      const auto report = check_equivariance(
          g,
          [&](const EdgeInput& in) {
            EdgeInput shifted = in;
            for (auto& s : shifted) s += 1;
            return symmetric_edge_outputs(p, g, shifted);
          },
          perms, 30, 4, 6);
      CHECK(report.equivariant);
    }
    {
      const Graph g = build_complete(4);
      const auto p = build_symmetric_copy_edge_protocol();
      const auto report = check_equivariance(
          g, [&](const EdgeInput& in) { return symmetric_edge_outputs(p, g, in); },
          sample_automorphisms(g, 8, 13), 20, 2, 7);
      CHECK(report.equivariant);
    }
  }

  TEST_CASE("a protocol that singles out one vertex is flagged") {
    const Graph g = build_star(3);
    const auto copy = build_copy_edge_protocol();
    const OutputRunner biased = [&](const EdgeInput& in) {
      VertexOutputs out = edge_outputs(copy, g, in);
      out[1] = false;  // leaf 1 is treated differently from the other leaves
      return out;
    };
    const auto report = check_equivariance(g, biased, sample_automorphisms(g, 6, 1), 40, 2, 2);
    CHECK_FALSE(report.equivariant);
    REQUIRE(report.counterexample.has_value());
    CHECK(report.to_json()["equivariant"] == false);
  }

  TEST_CASE("the MAP edge protocol is equivariant under path swaps and reversal") {
    // All four potentials are submodular, so the minimizers of any input
    // form a lattice and the lexicographically smallest one is its meet,
    // which commutes with every automorphism. No counterexample exists.
    for (std::size_t m : {2, 3}) {
      const Graph g = build_hub_path_graph(m);
      const auto p = build_map_edge_protocol(m);
      const std::vector<std::vector<VertexId>> perms{hub_path_swap(m, 1, 2), hub_path_reversal(m)};
      const auto report = check_equivariance(
          g, [&](const EdgeInput& in) { return edge_outputs(p, g, in); }, perms, 300, 4, 17);
      CHECK(report.equivariant);
    }
  }
}

TEST_SUITE("simulation") {
  TEST_CASE("edge to node simulation on the disjointness protocol") {
    const Graph g = build_complete(4);
    const EdgeProtocol p = build_disjointness_edge_protocol(4);
    const NodeProtocol sim = simulate_edge_with_node(p, g);
    const SimulationLayout layout = simulation_layout(p, g);
    CHECK(sim.rounds == p.rounds + 1);
    CHECK(layout.max_degree == 3);
    CHECK(layout.edge_bits == 1);
    CHECK(sim.memory_bits == layout.total_bits());
    CHECK(layout.total_bits() == layout.max_degree * p.memory_bits + layout.overhead_bits());
    for_each_input(g.num_edges(), 2, [&](const EdgeInput& in) {
      const BitTrace trace = run_node_protocol(sim, g, in);
      CHECK(trace.outputs == edge_outputs(p, g, in));
      CHECK(trace.max_state_bits <= layout.total_bits());
    });
  }

  TEST_CASE("edge to node simulation on an irregular graph") {
    const Graph g = random_tree(9, 3);
    const EdgeProtocol p = build_copy_edge_protocol();
    const NodeProtocol sim = simulate_edge_with_node(p, g);
    Rng rng(9);
    for (int k = 0; k < 50; ++k) {
      EdgeInput in(g.num_edges());
      for (auto& s : in) s = static_cast<Symbol>(rng.below(2));
      CHECK(node_outputs(sim, g, in) == edge_outputs(p, g, in));
    }
  }

  TEST_CASE("symmetric edge to node simulation") {
    {
      const Graph g = build_star(3);
      const auto p = build_large_alphabet_edge_protocol(3);
      const auto sim = symmetric_edge_to_node(p);
      CHECK(sim.rounds == p.rounds + 1);
      CHECK(sim.mode == StateMode::unbounded);
      for_each_input(g.num_edges(), 3, [&](const EdgeInput& in) {
        EdgeInput shifted = in;
        for (auto& s : shifted) s += 1;
        CHECK(symmetric_node_outputs(sim, g, shifted) == symmetric_edge_outputs(p, g, shifted));
      });
    }
    {
      const Graph g = build_path(5);
      const auto p = build_symmetric_copy_edge_protocol();
      const auto sim = symmetric_edge_to_node(p);
      for_each_input(g.num_edges(), 2, [&](const EdgeInput& in) {
        CHECK(symmetric_node_outputs(sim, g, in) == symmetric_edge_outputs(p, g, in));
      });
    }
    CHECK_THROWS_AS(symmetric_edge_to_node(build_symmetric_copy_edge_protocol(), StateMode::bounded),
                    Unsupported);
  }

  TEST_CASE("universal symmetric protocol separates different inputs") {
    const Graph g = build_path(3);
    auto u = universal_symmetric_node_protocol(1);
    u.readout = [](const Value&) { return false; };
    CHECK(u.rounds == 2);
    const ValueTrace a = run_symmetric_node_protocol(u, g, {0, 1});
    const ValueTrace b = run_symmetric_node_protocol(u, g, {1, 0});
    const ValueTrace c = run_symmetric_node_protocol(u, g, {0, 1});
    CHECK(a.final_states() == c.final_states());
    // Vertex 0 is incident to edge {0,1} only, whose input differs.
    CHECK(a.final_states()[0] != b.final_states()[0]);
    // The middle vertex sees the same multiset of incident edges.
    CHECK(a.final_states()[1] == b.final_states()[1]);
  }
}
