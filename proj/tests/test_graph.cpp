#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tksub/generators.hpp"
#include "tksub/graph.hpp"

using namespace tksub;

namespace {

Graph two_k5_with_bridge() {
  // K5 on 0..4, K5 on 5..9, path 4-10-11-5 through degree-2 vertices.
  std::vector<Edge> e;
  for (int b : {0, 5})
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) e.emplace_back(b + i, b + j);
  e.emplace_back(4, 10);
  e.emplace_back(10, 11);
  e.emplace_back(5, 11);
  return Graph::from_edges(12, e);
}

// Deletes any vertex of degree < t in a random order until none remains.
std::vector<Vertex> random_peel(const Graph& g, int t, std::mt19937_64& rng) {
  const int n = g.vertex_count();
  std::vector<char> alive(n, 1);
  while (true) {
    std::vector<Vertex> low;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      int d = 0;
      for (Vertex u : g.neighbors(v)) d += alive[u];
      if (d < t) low.push_back(v);
    }
    if (low.empty()) break;
    alive[low[std::uniform_int_distribution<std::size_t>(0, low.size() - 1)(rng)]] = 0;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) keep.push_back(v);
  return keep;
}

}  // namespace

TEST_CASE("from_edges rejects malformed input") {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> twice{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), InvalidArgument);
  CHECK_THROWS_AS(Graph::from_edges(3, twice), InvalidArgument);
  CHECK_THROWS_AS(Graph::from_edges(3, range), InvalidArgument);
}

TEST_CASE("edges are canonical") {
  const std::vector<Edge> e{{2, 1}, {0, 2}};
  const Graph g = Graph::from_edges(3, e);
  CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(g.has_edge(1, 2));
  CHECK(!g.has_edge(0, 1));
}

TEST_CASE("degree_stats") {
  const auto k4 = degree_stats(gen::complete(4));
  CHECK(k4.average == Rational(3));
  CHECK(k4.min_degree == 3);
  CHECK(k4.max_degree == 3);
  const auto c5 = degree_stats(gen::cycle(5));
  CHECK(c5.average == Rational(2));
  const auto star = degree_stats(gen::star(5));
  CHECK(star.average == Rational(10, 6));
  CHECK(star.min_degree == 1);
  CHECK(star.max_degree == 5);
  CHECK(average_degree(Graph(0)) == Rational(0));
}

TEST_CASE("external_neighborhood") {
  CHECK(external_neighborhood(gen::cycle(4), {0}) == VertexSet{1, 3});
  CHECK(external_neighborhood(gen::cycle(4), {0, 1, 2, 3}).empty());
  CHECK(external_neighborhood(gen::complete(4), {0, 1}) == VertexSet{2, 3});
  CHECK_THROWS_AS(external_neighborhood(gen::cycle(4), {7}), InvalidVertex);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = gen::gnp(12, 0.3, trial);
    std::vector<Vertex> pick;
    for (Vertex v = 0; v < 12; ++v)
      if (rng() % 3 == 0) pick.push_back(v);
    const VertexSet w(pick);
    const VertexSet out = external_neighborhood(g, w);
    CHECK(out.disjoint_from(w));
    const auto expect = oracle::boundary(g, {pick.begin(), pick.end()});
    CHECK(out.members() == std::vector<Vertex>(expect.begin(), expect.end()));
  }
}

TEST_CASE("induced and delete_vertices") {
  const Graph k4 = gen::complete(4);
  CHECK(induced(k4, {0, 1, 2, 3}).graph.edges() == k4.edges());
  const Subgraph k3 = delete_vertices(k4, {0});
  CHECK(k3.graph.vertex_count() == 3);
  CHECK(k3.graph.edge_count() == 3);
  CHECK(k3.to_parent == std::vector<Vertex>{1, 2, 3});
  const Subgraph p4 = delete_vertices(gen::cycle(5), {0});
  CHECK(p4.graph.edges() == gen::path(4).edges());

  const Subgraph s = induced(gen::cycle(6), {1, 2, 3, 5});
  CHECK(s.lift(Path{{0, 1, 2}}).vertices == std::vector<Vertex>{1, 2, 3});
  const auto back = s.from_parent(6);
  CHECK(back[5] == 3);
  CHECK(back[0] == -1);
  const Subgraph inner = induced(s.graph, {1, 2});
  CHECK(s.compose(inner).to_parent == std::vector<Vertex>{2, 3});
}

TEST_CASE("induced edge count matches brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = gen::gnp(15, 0.4, 100 + trial);
    std::vector<Vertex> pick;
    for (Vertex v = 0; v < 15; ++v)
      if (rng() & 1) pick.push_back(v);
    const Subgraph h = induced(g, VertexSet(pick));
    CHECK(h.graph.edge_count() == oracle::edges_within(g, pick));
    if (!pick.empty())
      CHECK(average_degree(h.graph) ==
            Rational(2 * oracle::edges_within(g, pick), static_cast<long long>(pick.size())));
  }
}

TEST_CASE("min_degree_peel") {
  CHECK(min_degree_peel(gen::complete(4), 3).graph.vertex_count() == 4);
  CHECK(min_degree_peel(gen::star(5), 2).graph.vertex_count() == 0);
  const Subgraph cores = min_degree_peel(two_k5_with_bridge(), 4);
  CHECK(cores.to_parent == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK_THROWS_AS(min_degree_peel(gen::complete(3), -1), InvalidArgument);
}

TEST_CASE("min_degree_peel is confluent") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 10 + trial * 2;
    const Graph g = gen::gnp(n, 0.25, 300 + trial);
    for (int t = 2; t <= 4; ++t) {
      const auto expect = min_degree_peel(g, t).to_parent;
      for (int order = 0; order < 100; ++order) CHECK(random_peel(g, t, rng) == expect);
    }
  }
}

TEST_CASE("core_numbers agree with peeling") {
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = gen::gnp(25, 0.2, 700 + trial);
    const auto core = core_numbers(g);
    for (int t = 0; t <= 6; ++t) {
      std::vector<Vertex> expect;
      for (Vertex v = 0; v < 25; ++v)
        if (core[v] >= t) expect.push_back(v);
      CHECK(min_degree_peel(g, t).to_parent == expect);
    }
  }
}

TEST_CASE("bipartite_half") {
  const BipartiteHalf tri = bipartite_half(gen::complete(3));
  CHECK(tri.graph.edge_count() == 2);
  CHECK(average_degree(tri.graph) == Rational(4, 3));

  const Graph k33 = gen::complete_bipartite(3, 3);
  const BipartiteHalf same = bipartite_half(k33);
  CHECK(same.graph.edges() == k33.edges());
  CHECK((same.left == VertexSet{0, 1, 2} || same.right == VertexSet{0, 1, 2}));

  const std::vector<Edge> one{{0, 1}};
  CHECK(bipartite_half(Graph::from_edges(2, one)).graph.edge_count() == 1);

  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = gen::gnp(20, 0.3, 900 + trial);
    const BipartiteHalf h = bipartite_half(g);
    CHECK(two_coloring(h.graph).has_value());
    CHECK(2 * h.graph.edge_count() >= g.edge_count());
    CHECK(h.left.disjoint_from(h.right));
    CHECK(h.left.size() + h.right.size() == 20);
    for (auto [u, v] : h.graph.edges()) {
      CHECK(g.has_edge(u, v));
      CHECK(h.left.contains(u) != h.left.contains(v));
    }
  }
}

TEST_CASE("two_coloring") {
  CHECK(two_coloring(gen::cycle(6)).has_value());
  CHECK(!two_coloring(gen::cycle(7)).has_value());
  CHECK(two_coloring(gen::hypercube(4)).has_value());
}

TEST_CASE("is_simple_path") {
  const Graph c = gen::cycle(5);
  CHECK(is_simple_path(c, Path{{0, 1, 2}}));
  CHECK(!is_simple_path(c, Path{{0, 2}}));
  CHECK(!is_simple_path(c, Path{{0, 1, 0}}));
}

TEST_CASE("generators") {
  const Graph kdd = gen::kdd(4, 2);
  CHECK(kdd.vertex_count() == 16);
  CHECK(kdd.edge_count() == 32);
  const Graph heawood = gen::incidence_plane(2);
  CHECK(heawood.vertex_count() == 14);
  CHECK(heawood.edge_count() == 21);
  for (Vertex v = 0; v < 14; ++v) CHECK(heawood.degree(v) == 3);
  CHECK(oracle::girth(heawood) == 6);
  for (int q : {3, 5}) {
    const Graph g = gen::incidence_plane(q);
    CHECK(g.vertex_count() == 2 * (q * q + q + 1));
    for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == q + 1);
    CHECK(oracle::girth(g) == 6);
  }
  CHECK_THROWS_AS(gen::incidence_plane(4), InvalidArgument);
  CHECK(gen::cycle(9).edge_count() == 9);
  CHECK(gen::gnp(30, 0.3, 4).edges() == gen::gnp(30, 0.3, 4).edges());
  const Graph b = gen::bipartite_gnp(5, 6, 0.5, 1);
  for (auto [u, v] : b.edges()) CHECK((u < 5 && v >= 5));
}
