// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "edgemp/certificates.hpp"
#include "edgemp/counting.hpp"
#include "edgemp/disjointness.hpp"
#include "edgemp/errors.hpp"
#include "edgemp/map_inference.hpp"
#include "edgemp/rng.hpp"
#include "oracles.hpp"

using namespace edgemp;

namespace {

EdgeInput random_input(std::size_t edges, std::size_t alphabet, Rng& rng) {
  EdgeInput in(edges);
  for (auto& s : in) s = static_cast<Symbol>(rng.below(alphabet));
  return in;
}

VertexOutputs counting_oracle(std::size_t m, const Graph& g, const EdgeInput& in) {
  const auto c = oracle::input_summation(g, in);
  VertexOutputs out(g.num_vertices(), false);
  for (VertexId u = 1; u <= m; ++u) {
    const EdgeId root_edge = g.edge_id(0, u);
    std::size_t same = 0;
    for (EdgeId f = 0; f < g.num_edges(); ++f)
      if (g.edges_adjacent(root_edge, f) && c[f] == c[root_edge]) ++same;
    out[u] = same > m + 1;
    out[0] = out[0] || out[u];
  }
  return out;
}

VertexOutputs disjointness_oracle(std::size_t n, const Graph& g, const EdgeInput& in) {
  auto bit = [&](std::size_t a, std::size_t b) { return in[g.edge_id(a - 1, b - 1)] != 0; };
  bool hit = false;
  for (std::size_t i = 1; i <= n / 2; ++i)
    for (std::size_t j = i + 1; j <= n / 2; ++j) hit = hit || (bit(i, j) && bit(n + 1 - j, n + 1 - i));
  return VertexOutputs(n, hit);
}

}  // namespace

TEST_SUITE("map") {
  TEST_CASE("potential table") {
    for (Symbol s = 0; s < 4; ++s)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(potential_value(s, a, b) == unsigned(oracle::potential(s, a, b)));
    CHECK(code(Potential::differ) == 0);
    CHECK(code(Potential::zero) == 3);
  }

  TEST_CASE("energy") {
    const Graph g = build_path(3);
    CHECK(energy(g, {0, 0}, {false, true, false}) == 2);
    CHECK(energy(g, {1, 2}, {true, true, true}) == 1);
    CHECK(energy(g, {3, 3}, {true, false, true}) == 0);
  }

  TEST_CASE("brute force and DP equal an independent lexicographic oracle") {
    const Graph g2 = build_hub_path_graph(2);
    for_each_input(g2.num_edges(), 4, [&](const EdgeInput& in) {
      const auto expected = oracle::map_lex_min(g2, in);
      CHECK(brute_force_map(g2, in) == expected);
      CHECK(dp_map_hub_path(g2, in) == expected);
    });
    Rng rng(31);
    for (std::size_t m : {3, 4}) {
      const Graph g = build_hub_path_graph(m);
      for (int k = 0; k < 25; ++k) {
        const EdgeInput in = random_input(g.num_edges(), 4, rng);
        CHECK(dp_map_hub_path(g, in) == oracle::map_lex_min(g, in));
      }
    }
  }

  TEST_CASE("DP on larger hub-path graphs reaches the brute-force energy") {
    Rng rng(8);
    const Graph g = build_hub_path_graph(5);
    for (int k = 0; k < 3; ++k) {
      const EdgeInput in = random_input(g.num_edges(), 4, rng);
      const Assignment dp = dp_map_hub_path(g, in);
      CHECK(dp == brute_force_map(g, in, 26));
    }
  }

  TEST_CASE("small brute-force cases") {
    // Path of three with inequality penalties and a both-one pin at one end.
    const Graph g = build_path(3);
    CHECK(brute_force_map(g, {code(Potential::pin_one), code(Potential::differ)}) == Assignment(3, true));
    CHECK(energy(build_path(2), {0}, {false, true}) == 1);
    CHECK(energy(build_path(2), {0}, {false, false}) == 0);
    // Inequality penalties on paths, zero on hub edges: constant paths cost nothing.
    const Graph h = build_hub_path_graph(2);
    EdgeInput in(h.num_edges());
    for (EdgeId e = 0; e < h.num_edges(); ++e) in[e] = h.edge(e).u == 0 ? code(Potential::zero) : code(Potential::differ);
    CHECK(energy(h, in, {false, true, true, false, false}) == 0);
  }

  TEST_CASE("tie-break prefers zeros") {
    const Graph g = build_hub_path_graph(2);
    const EdgeInput all_zero_potential(g.num_edges(), code(Potential::zero));
    CHECK(dp_map_hub_path(g, all_zero_potential) == Assignment(5, false));
    const EdgeInput all_differ(g.num_edges(), code(Potential::differ));
    CHECK(dp_map_hub_path(g, all_differ) == Assignment(5, false));
    const EdgeInput all_pin_one(g.num_edges(), code(Potential::pin_one));
    CHECK(dp_map_hub_path(g, all_pin_one) == Assignment(5, true));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(dp_map_hub_path(build_path(3), {0, 0}), InvalidParameter);
    CHECK_THROWS_AS(brute_force_map(build_path(25), EdgeInput(24, 0)), CapExceeded);
    CHECK_THROWS_AS(build_map_edge_protocol(1), InvalidParameter);
    CHECK_THROWS_AS(map_lower_bound_instance(3, 3), InvalidParameter);
  }

  TEST_CASE("hub-path index") {
    const HubPathIndex idx(3);
    const Graph g = build_hub_path_graph(3);
    for (std::size_t j = 1; j <= 3; ++j)
      for (std::size_t i = 1; i <= 3; ++i) {
        CHECK(g.edge(idx.hub_edge(i, j)) == Edge{0, hub_path_vertex(3, i, j)});
        if (i < 3) CHECK(g.edge(idx.path_edge(i, j)) == Edge{hub_path_vertex(3, i, j), hub_path_vertex(3, i + 1, j)});
      }
  }

  TEST_CASE("edge protocol packs path and own symbols on hub edges in round 2") {
    const std::size_t m = 3;
    const Graph g = build_hub_path_graph(m);
    const HubPathIndex idx(m);
    Rng rng(2);
    const EdgeInput in = random_input(g.num_edges(), 4, rng);
    const BitTrace trace = run_edge_protocol(build_map_edge_protocol(m), g, in);
    CHECK(trace.rounds() == 3);
    CHECK(trace.max_state_bits == 4);
    for (std::size_t j = 1; j <= m; ++j)
      for (std::size_t i = 1; i <= m; ++i) {
        const BitState& s = trace.states[2][idx.hub_edge(i, j)];
        CHECK(s.read_uint(2, 2) == in[idx.hub_edge(i, j)]);
        CHECK(s.read_uint(0, 2) == (i < m ? in[idx.path_edge(i, j)] : 0));
      }
    CHECK(trace.outputs == dp_map_hub_path(g, in));
  }

  TEST_CASE("lower-bound completions force path values") {
    for (std::size_t m : {2, 3, 4}) {
      const auto inst = map_lower_bound_instance(m);
      const Graph g = build_hub_path_graph(m);
      CHECK(inst.K == VertexSet{0});
      CHECK(inst.S.size() == m);
      for (std::uint64_t code_y = 0; code_y < (1u << m); ++code_y) {
        std::vector<bool> y(m);
        for (std::size_t j = 0; j < m; ++j) y[j] = (code_y >> j) & 1;
        const EdgeInput in = map_lower_bound_input(inst, y);
        for (std::size_t k = 0; k < inst.F.size(); ++k) CHECK(in[inst.F[k]] == inst.fixed[k]);
        const Assignment x = dp_map_hub_path(g, in);
        for (std::size_t j = 1; j <= m; ++j) CHECK(x[hub_path_vertex(m, 1, j)] == y[j - 1]);
      }
    }
  }

  TEST_CASE("potential json round trip") {
    const Graph g = build_hub_path_graph(2);
    const EdgeInput in{0, 1, 2, 3, 1, 0};
    const auto [g2, in2] = potentials_from_json(potentials_to_json(g, in));
    CHECK(g2 == g);
    CHECK(in2 == in);
    auto bad = potentials_to_json(g, in);
    bad["symbols"][0] = 4;
    CHECK_THROWS_AS(potentials_from_json(bad), InvalidParameter);
  }
}

TEST_SUITE("certificate") {
  TEST_CASE("hand-checked instance on a path") {
    // 0 - 1 - 2 with K = {1}: vertex 0 reports the input of the far edge.
    const Graph g = build_path(3);
    const TaskEvaluator task = [](const EdgeInput& in) { return VertexOutputs{in[1] != 0, false, false}; };
    const auto r = certified_lower_bound(g, task, {1}, {0}, 1, 2, std::vector<Symbol>{0});
    CHECK(r.F == EdgeSet{0});
    CHECK(r.distinct_outputs == 2);
    CHECK(r.bound == 1.0);
    CHECK(r.exhaustive);
    CHECK(r.completions_total == 2);
    CHECK(r.to_json()["M"] == 2);
  }

  TEST_CASE("the input on F cannot contribute") {
    const Graph g = build_path(3);
    const TaskEvaluator near = [](const EdgeInput& in) { return VertexOutputs{in[0] != 0, false, false}; };
    const auto r = certified_lower_bound(g, near, {1}, {0}, 1, 2, std::nullopt);
    CHECK(r.distinct_outputs == 1);
    CHECK(r.bound == 0.0);
    CHECK(r.fixed_candidates == 2);
  }

  TEST_CASE("search, budget and threads") {
    const std::size_t m = 2;
    const Graph g = build_hub_path_graph(m);
    const auto inst = map_lower_bound_instance(m);
    const TaskEvaluator task = [&g](const EdgeInput& in) { return dp_map_hub_path(g, in); };
    const auto fixed = certified_lower_bound(g, task, inst.K, inst.S, 1, 4, inst.fixed);
    CHECK(fixed.distinct_outputs == 4);
    const auto searched = certified_lower_bound(g, task, inst.K, inst.S, 1, 4, std::nullopt);
    CHECK(searched.distinct_outputs >= fixed.distinct_outputs);
    CHECK(searched.exhaustive);
    CertificateOptions three;
    three.jobs = 3;
    const auto threaded = certified_lower_bound(g, task, inst.K, inst.S, 1, 4, inst.fixed, three);
    CHECK(threaded.distinct_outputs == fixed.distinct_outputs);
    CertificateOptions tiny;
    tiny.budget = 5;
    const auto partial = certified_lower_bound(g, task, inst.K, inst.S, 1, 4, inst.fixed, tiny);
    CHECK_FALSE(partial.exhaustive);
    CHECK(partial.completions_enumerated <= 5);
  }

  TEST_CASE("argument checks") {
    const Graph g = build_path(3);
    const TaskEvaluator task = [](const EdgeInput&) { return VertexOutputs(3, false); };
    CHECK_THROWS_AS(certified_lower_bound(g, task, {}, {0}, 1, 2, std::nullopt), InvalidParameter);
    CHECK_THROWS_AS(certified_lower_bound(g, task, {1}, {0}, 1, 2, std::vector<Symbol>{0, 0}), ShapeMismatch);
  }
}

TEST_SUITE("counting") {
  TEST_CASE("input summation matches the oracle") {
    Rng rng(3);
    for (std::size_t m : {2, 3, 4}) {
      const Graph g = build_depth2_tree(m);
      for (int k = 0; k < 20; ++k) {
        const EdgeInput in = random_input(g.num_edges(), 2, rng);
        CHECK(input_summation(g, in) == oracle::input_summation(g, in));
      }
    }
  }

  TEST_CASE("task and protocol agree with the oracle") {
    const Graph g2 = build_depth2_tree(2);
    for_each_input(g2.num_edges(), 2, [&](const EdgeInput& in) {
      const auto expected = counting_oracle(2, g2, in);
      CHECK(counting_task_g(g2, in) == expected);
      CHECK(symmetric_edge_outputs(build_counting_edge_protocol(2), g2, in) == expected);
    });
    Rng rng(4);
    const Graph g3 = build_depth2_tree(3);
    const auto p3 = build_counting_edge_protocol(3);
    for (int k = 0; k < 100; ++k) {
      const EdgeInput in = random_input(g3.num_edges(), 2, rng);
      CHECK(symmetric_edge_outputs(p3, g3, in) == counting_oracle(3, g3, in));
    }
    CHECK(p3.memory_bits == bits_for(7));
  }

  TEST_CASE("constant inputs") {
    const std::size_t m = 3;
    const Graph g = build_depth2_tree(m);
    // All zeros: every edge of M_G({0,u}) has summation 0, 2m > m+1 of them.
    const auto zeros = counting_task_g(g, EdgeInput(g.num_edges(), 0));
    for (VertexId u = 0; u <= m; ++u) CHECK(zeros[u]);
    for (VertexId v = m + 1; v < g.num_vertices(); ++v) CHECK_FALSE(zeros[v]);
    // All ones: root edges sum to 2m, leaf edges to m+1, so only m agree.
    const auto ones = counting_task_g(g, EdgeInput(g.num_edges(), 1));
    for (bool b : ones) CHECK_FALSE(b);
    // With a single middle vertex the threshold m+1 = 2 equals |M_G({0,1})|.
    const Graph g1 = build_depth2_tree(1);
    CHECK(counting_task_g(g1, {0, 0}) == VertexOutputs{false, false, false});
  }

  TEST_CASE("subtree sums decide the middle outputs at m = 2") {
    const Graph g = build_depth2_tree(2);
    auto input_with_leaf_ones = [&](std::size_t ones_1, std::size_t ones_2) {
      EdgeInput in(g.num_edges(), 0);
      for (std::size_t j = 1; j <= ones_1; ++j) in[g.edge_id(1, depth2_leaf(2, 1, j))] = 1;
      for (std::size_t j = 1; j <= ones_2; ++j) in[g.edge_id(2, depth2_leaf(2, 2, j))] = 1;
      return in;
    };
    const auto unequal = counting_task_g(g, input_with_leaf_ones(1, 2));
    CHECK_FALSE(unequal[1]);
    CHECK_FALSE(unequal[2]);
    const auto equal = counting_task_g(g, input_with_leaf_ones(1, 1));
    CHECK(equal[1]);
    CHECK(equal[2]);
    CHECK(equal[0]);
  }

  TEST_CASE("leaf edges never fire in round 3") {
    const std::size_t m = 3;
    const Graph g = build_depth2_tree(m);
    const auto p = build_counting_edge_protocol(m);
    Rng rng(12);
    for (int k = 0; k < 50; ++k) {
      const auto trace = run_symmetric_edge_protocol(p, g, random_input(g.num_edges(), 2, rng));
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (g.edge(e).u != 0) CHECK(trace.states[3][e].as_count() == 0);
    }
  }

  TEST_CASE("lower-bound instance separates 2^(m/2) completions") {
    for (std::size_t m : {2, 4}) {
      const auto inst = counting_lower_bound_instance(m);
      const Graph g = build_depth2_tree(m);
      std::set<std::vector<bool>> outputs;
      for (std::uint64_t code_x = 0; code_x < (1u << (m / 2)); ++code_x) {
        std::vector<bool> x(m / 2);
        for (std::size_t i = 0; i < m / 2; ++i) x[i] = (code_x >> i) & 1;
        const EdgeInput in = counting_lower_bound_input(inst, x);
        for (std::size_t k = 0; k < inst.F.size(); ++k) CHECK(in[inst.F[k]] == inst.fixed[k]);
        const auto out = counting_task_g(g, in);
        std::vector<bool> on_s;
        for (VertexId s : inst.S) on_s.push_back(out[s]);
        outputs.insert(on_s);
      }
      CHECK(outputs.size() == (std::size_t{1} << (m / 2)));
      const auto zero_out = counting_task_g(g, counting_lower_bound_input(inst, std::vector<bool>(m / 2, false)));
      for (VertexId s : inst.S) CHECK_FALSE(zero_out[s]);
    }
    CHECK_THROWS_AS(counting_lower_bound_instance(3), InvalidParameter);
  }

  TEST_CASE("large-alphabet duplicate detection") {
    for (std::size_t n : {2, 3, 4}) {
      const Graph g = build_star(n);
      const auto p = build_large_alphabet_edge_protocol(n);
      CHECK(p.rounds == 2);
      CHECK(p.memory_bits == bits_for(n));
      for_each_input(n, n, [&](const EdgeInput& raw) {
        EdgeInput in = raw;
        for (auto& s : in) s += 1;
        VertexOutputs expected(n + 1, false);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (a != b && in[a] == in[b]) expected[a + 1] = true;
        for (std::size_t v = 1; v <= n; ++v) expected[0] = expected[0] || expected[v];
        CHECK(large_alphabet_task_g(g, in) == expected);
        CHECK(symmetric_edge_outputs(p, g, in) == expected);
      });
    }
    CHECK_THROWS_AS(large_alphabet_task_g(build_star(3), {0, 1, 2}), InvalidParameter);
    CHECK(large_alphabet_task_g(build_star(4), {1, 2, 2, 3}) == VertexOutputs{true, false, true, true, false});
    CHECK(large_alphabet_task_g(build_star(4), {1, 2, 3, 4}) == VertexOutputs(5, false));
    CHECK(star_duplicate_g(build_star(3), {0, 7, 0}) == VertexOutputs{true, true, false, true});
  }

  TEST_CASE("histogram protocol on small stars") {
    auto leaves = [](std::size_t n, const EdgeInput& in) {
      const auto out = node_outputs(build_histogram_node_protocol(n), build_star(n), in);
      return VertexOutputs(out.begin() + 1, out.end());
    };
    CHECK(leaves(3, {1, 1, 0}) == VertexOutputs{true, true, false});
    CHECK(leaves(2, {0, 1}) == VertexOutputs{false, false});
    CHECK(leaves(4, {0, 0, 0, 0}) == VertexOutputs(4, true));
  }

  TEST_CASE("histogram protocol solves the binary star task with logarithmic memory") {
    for (std::size_t n : {1, 2, 3, 5, 8}) {
      const Graph g = build_star(n);
      const NodeProtocol p = build_histogram_node_protocol(n);
      CHECK(p.memory_bits == bits_for(n));
      Rng rng(n);
      for (int k = 0; k < 64; ++k) {
        const EdgeInput in = random_input(n, 2, rng);
        const BitTrace trace = run_node_protocol(p, g, in);
        CHECK(trace.outputs == star_duplicate_g(g, in));
        CHECK(trace.max_state_bits <= bits_for(n));
      }
    }
  }
}

TEST_SUITE("disjointness") {
  TEST_CASE("constant inputs") {
    for (std::size_t n : {4, 6}) {
      const Graph g = build_complete(n);
      CHECK(disjointness_task_g(g, EdgeInput(g.num_edges(), 0)) == VertexOutputs(n, false));
      CHECK(disjointness_task_g(g, EdgeInput(g.num_edges(), 1)) == VertexOutputs(n, true));
    }
  }

  TEST_CASE("DISJ evaluator") {
    CHECK(disj({true, false}, {false, true}));
    CHECK_FALSE(disj({true, true}, {false, true}));
    CHECK(disj({}, {}));
    CHECK_THROWS_AS(disj({true}, {true, false}), ShapeMismatch);
  }

  TEST_CASE("n = 4 reduces to the single pair {1,2} and its mirror {3,4}") {
    const Graph g = build_complete(4);
    const EdgeId e12 = g.edge_id(0, 1), e34 = g.edge_id(2, 3);
    for_each_input(g.num_edges(), 2, [&](const EdgeInput& in) {
      const bool expected = in[e12] && in[e34];
      CHECK(disjointness_task_g(g, in) == VertexOutputs(4, expected));
    });
  }

  TEST_CASE("task, protocol and split agree with the oracle") {
    for (std::size_t n : {4, 6, 8}) {
      const Graph g = build_complete(n);
      const EdgeProtocol p = build_disjointness_edge_protocol(n);
      Rng rng(n);
      for (int k = 0; k < 60; ++k) {
        const EdgeInput in = random_input(g.num_edges(), 2, rng);
        const auto expected = disjointness_oracle(n, g, in);
        CHECK(disjointness_task_g(g, in) == expected);
        const BitTrace trace = run_edge_protocol(p, g, in);
        CHECK(trace.outputs == expected);
        CHECK(trace.max_state_bits == 1);
        const auto [x, y] = disjointness_split(g, in);
        CHECK(x.size() == (n / 2) * (n / 2 - 1) / 2);
        CHECK(expected[0] == !disj(x, y));
      }
    }
    CHECK_THROWS_AS(build_disjointness_edge_protocol(5), InvalidParameter);
  }
}
