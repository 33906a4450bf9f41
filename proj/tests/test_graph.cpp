// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <map>
#include <set>

#include "edgemp/errors.hpp"
#include "edgemp/graph.hpp"

using namespace edgemp;

TEST_SUITE("graph") {
  TEST_CASE("edges are canonical and ids ignore supply order") {
    const Graph a(4, {{2, 1}, {0, 3}, {1, 0}});
    const Graph b(4, {{0, 1}, {3, 0}, {1, 2}});
    CHECK(a == b);
    CHECK(a.edge(0) == Edge{0, 1});
    CHECK(a.edge(1) == Edge{0, 3});
    CHECK(a.edge(2) == Edge{1, 2});
    CHECK(a.edge_id(3, 0) == 1);
    CHECK_FALSE(a.find_edge(2, 3).has_value());
  }

  TEST_CASE("malformed edge lists are rejected") {
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidParameter);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidParameter);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidParameter);
    const Graph g = build_path(3);
    CHECK_THROWS_AS(g.edge(5), InvalidParameter);
    CHECK_THROWS_AS(g.neighbors(9), InvalidParameter);
    CHECK_THROWS_AS(g.edge_id(0, 2), InvalidParameter);
  }

  TEST_CASE("neighborhoods") {
    const Graph g = build_star(3);
    CHECK(g.closed_neighborhood(0) == VertexSet{0, 1, 2, 3});
    CHECK(g.closed_neighborhood(2) == VertexSet{0, 2});
    CHECK(g.endpoints(1) == VertexSet{0, 2});
    CHECK(g.edge_neighborhood(0) == EdgeSet{0, 1, 2});
    CHECK(g.edges_adjacent(1, 1));
    CHECK(g.other_endpoint(2, 0) == 3);
    const Graph p = build_path(4);
    CHECK(p.edge_neighborhood(0) == EdgeSet{0, 1});
    CHECK_FALSE(p.edges_adjacent(0, 2));
  }

  TEST_CASE("hub-path graph: m paths of m vertices joined to a hub") {
    for (std::size_t m : {1, 2, 4}) {
      const Graph g = build_hub_path_graph(m);
      CHECK(g.num_vertices() == 1 + m * m);
      CHECK(g.num_edges() == m * m + m * (m - 1));
      CHECK(g.degree(0) == m * m);
      CHECK(g.is_connected());
      for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t i = 1; i < m; ++i)
          CHECK(g.find_edge(hub_path_vertex(m, i, j), hub_path_vertex(m, i + 1, j)).has_value());
      // Removing the hub leaves m components, each a path of m vertices.
      std::size_t path_edges = 0;
      for (const Edge& e : g.edges()) path_edges += e.u != 0;
      CHECK(path_edges == m * (m - 1));
    }
    CHECK(hub_path_vertex(3, 1, 1) == 1);
    CHECK(hub_path_vertex(3, 3, 1) == 3);
    CHECK(hub_path_vertex(3, 1, 2) == 4);
    CHECK(build_hub_path_graph(2).labels().at(3) == "(1,2)");
  }

  TEST_CASE("depth-two tree") {
    const Graph g = build_depth2_tree(3);
    CHECK(g.num_vertices() == 13);
    CHECK(g.num_edges() == 12);
    CHECK(g.is_tree());
    CHECK(g.degree(0) == 3);
    for (VertexId u = 1; u <= 3; ++u) CHECK(g.degree(u) == 4);
    CHECK(depth2_leaf(3, 1, 1) == 4);
    CHECK(g.find_edge(2, depth2_leaf(3, 2, 3)).has_value());
  }

  TEST_CASE("small families") {
    CHECK(build_complete(5).num_edges() == 10);
    CHECK(build_path(6).is_tree());
    const Graph bt = build_complete_binary_tree(3);
    CHECK(bt.num_vertices() == 15);
    CHECK(bt.is_tree());
    for (VertexId v = 1; v < 15; ++v) CHECK(bt.find_edge(v, (v - 1) / 2).has_value());
    const Graph s = build_star(4);
    for (EdgeId e = 0; e < 4; ++e) CHECK(s.edge(e) == Edge{0, static_cast<VertexId>(e + 1)});
  }

  TEST_CASE("Pruefer decoding of a known sequence") {
    const std::vector<VertexId> seq{3, 3, 3, 4};
    std::vector<Edge> edges = pruefer_decode(seq, 6);
    std::sort(edges.begin(), edges.end());
    const std::vector<Edge> expected{{0, 3}, {1, 3}, {2, 3}, {3, 4}, {4, 5}};
    CHECK(edges == expected);
  }

  TEST_CASE("random trees are trees and roughly uniform over labeled trees") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Graph t = random_tree(10, seed);
      CHECK(t.num_edges() == 9);
      CHECK(t.is_tree());
      CHECK(t == random_tree(10, seed));
    }
    // Cayley: 4^2 = 16 labeled trees on 4 vertices.
    std::map<std::vector<Edge>, int> counts;
    const int draws = 16000;
    for (int s = 0; s < draws; ++s) counts[random_tree(4, 1000 + s).edges()]++;
    CHECK(counts.size() == 16);
    for (const auto& [edges, c] : counts) {
      CHECK(c > 800);
      CHECK(c < 1200);
    }
  }

  TEST_CASE("line graphs") {
    // L(K_{1,n}) = K_n.
    const Graph ls = line_graph(build_star(5));
    CHECK(ls.num_vertices() == 5);
    CHECK(ls.num_edges() == 10);
    // L(P_n) = P_{n-1}.
    CHECK(line_graph(build_path(6)) == build_path(5));
    // Edge count of L(G) is the sum of C(deg, 2).
    const Graph g = build_hub_path_graph(3);
    std::size_t expected = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) expected += g.degree(v) * (g.degree(v) - 1) / 2;
    const Graph lg = line_graph(g);
    CHECK(lg.num_vertices() == g.num_edges());
    CHECK(lg.num_edges() == expected);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      for (EdgeId f = 0; f < g.num_edges(); ++f)
        if (e != f) CHECK(lg.find_edge(e, f).has_value() == g.edges_adjacent(e, f));
  }

  TEST_CASE("restricted balls and light cones avoid the removed set") {
    const std::size_t m = 3;
    const Graph g = build_hub_path_graph(m);
    VertexSet s;
    for (std::size_t j = 1; j <= m; ++j) s.push_back(hub_path_vertex(m, 1, j));
    CHECK(restricted_ball(g, {0}, s, 0) == s);
    const VertexSet ball1 = restricted_ball(g, {0}, s, 1);
    CHECK(ball1.size() == 6);
    CHECK(std::find(ball1.begin(), ball1.end(), 0) == ball1.end());
    // Radius 0: hub edges and first path edge of each path.
    const EdgeSet f0 = light_cone_edges(g, {0}, s, 0);
    CHECK(f0.size() == 2 * m);
    // Without removing the hub, one hop reaches the hub and two hops reach everything.
    CHECK(restricted_ball(g, {}, s, 1).size() == 2 * m + 1);
    CHECK(restricted_ball(g, {}, s, 2).size() == g.num_vertices());
  }

  TEST_CASE("json round trip") {
    const Graph g = random_tree(12, 7);
    const Graph back = graph_from_json(to_json(g));
    CHECK(back == g);
    CHECK(back.family() == "random_tree");
    CHECK(back.seed() == std::optional<std::uint64_t>(7));
    CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"edges", 3}}), InvalidParameter);
  }
}
