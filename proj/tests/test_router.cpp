#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tksub/generators.hpp"
#include "tksub/router.hpp"

using namespace tksub;

namespace {

void check_route(const Graph& g, const Path& p, Vertex v, const VertexSet& u, const VertexSet& avoid,
                 const LengthWindow& w) {
  CHECK(is_simple_path(g, p));
  CHECK(p.front() == v);
  CHECK(u.contains(p.back()));
  CHECK(w.contains(p.length()));
  for (Vertex x : p.vertices) CHECK(!avoid.contains(x));
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) CHECK(!u.contains(p.vertices[i]));
}

}  // namespace

TEST_CASE("LengthWindow") {
  CHECK_THROWS_AS(LengthWindow(3, 2), InvalidArgument);
  CHECK_THROWS_AS(LengthWindow(-1, 2), InvalidArgument);
  CHECK(LengthWindow(2, 4).contains(4));
  CHECK(!LengthWindow(2, 4).contains(5));
}

TEST_CASE("connect_with_length examples") {
  const Graph k20 = gen::complete(20);
  const LengthWindow w(5, 9);
  const auto r = connect_with_length(k20, 0, Expansion{0, {0}, 0}, {19}, {}, w, {1, 1, 1, 1});
  REQUIRE(r.ok());
  check_route(k20, r->path, 0, {19}, {}, w);

  const auto edge = connect_with_length(k20, 0, Expansion{0, {0}, 0}, {19}, {}, LengthWindow(1, 1), {});
  REQUIRE(edge.ok());
  CHECK(edge->path.vertices == std::vector<Vertex>{0, 19});
  CHECK_THROWS_AS(connect_with_length(k20, 0, Expansion{0, {0}, 0}, {19}, {}, LengthWindow(0, 0), {}),
                  InvalidArgument);

  const Graph p6 = gen::path(6);
  const auto far = connect_with_length(p6, 0, Expansion{0, {0}, 0}, {5}, {}, LengthWindow(7, 9), {});
  CHECK(!far.ok());
  const auto cut = connect_with_length(p6, 0, Expansion{0, {0}, 0}, {5}, {3}, LengthWindow(1, 9), {});
  REQUIRE(!cut.ok());
  CHECK(cut.failure().kind == FailureKind::ConnectionStalled);
  const auto tight = connect_with_length(p6, 0, Expansion{0, {0}, 0}, {5}, {}, LengthWindow(1, 4), {});
  REQUIRE(!tight.ok());
  CHECK(tight.failure().kind == FailureKind::WindowMissed);

  CHECK_THROWS_AS(connect_with_length(k20, 0, Expansion{0, {0, 19}, 1}, {19}, {}, w, {}), InvalidArgument);
  CHECK_THROWS_AS(connect_with_length(k20, 0, Expansion{1, {1}, 0}, {19}, {}, w, {}), InvalidArgument);
}

TEST_CASE("connect_with_length through units") {
  const Graph g = gen::complete_bipartite(20, 20);
  const LengthWindow w(9, 13);
  const auto r = connect_with_length(g, 0, Expansion{0, {0}, 0}, {39}, {1, 2}, w, {1, 2, 1, 2});
  REQUIRE(r.ok());
  check_route(g, r->path, 0, {39}, {1, 2}, w);
  CHECK(r->path.length() % 2 == 1);
}

TEST_CASE("connect_with_length on random hosts") {
  int ok = 0;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = gen::gnp(40, 0.15, 2000 + trial);
    const VertexSet u{38, 39};
    const VertexSet avoid{10, 11, 12};
    const int lo = 2 + static_cast<int>(rng() % 8);
    const LengthWindow w(lo, lo + 3);
    const auto r = connect_with_length(g, 0, Expansion{0, {0}, 0}, u, avoid, w, {1, 2, 1, 2});
    if (!r) continue;
    ++ok;
    check_route(g, r->path, 0, u, avoid, w);
  }
  CHECK(ok >= 50);
}

TEST_CASE("connect_pair_with_length examples") {
  const Graph k30 = gen::complete(30);
  const VertexSet u1{0, 1, 2, 3, 4}, u2{5, 6, 7, 8, 9};
  const Expansion f3{10, {10, 11, 12, 13, 14}, 1}, f4{15, {15, 16, 17, 18, 19}, 1};
  const LengthWindow w(6, 12);
  const auto r = connect_pair_with_length(k30, u1, u2, f3, f4, {}, w, {1, 1, 1, 1});
  REQUIRE(r.ok());
  CHECK(w.contains(r->p.length() + r->q.length()));
  CHECK(is_simple_path(k30, r->p));
  CHECK(is_simple_path(k30, r->q));
  CHECK(u1.contains(r->p.front()));
  CHECK(u2.contains(r->q.front()));
  const std::set<Vertex> ends{r->p.back(), r->q.back()};
  CHECK(ends == std::set<Vertex>{10, 15});
  CHECK(VertexSet(r->p.vertices).disjoint_from(VertexSet(r->q.vertices)));

  const std::vector<Edge> e{{0, 2}, {1, 3}};
  const Graph direct = Graph::from_edges(4, e);
  const auto d = connect_pair_with_length(direct, {0}, {1}, Expansion{2, {2}, 0}, Expansion{3, {3}, 0}, {},
                                          LengthWindow(2, 2), {});
  REQUIRE(d.ok());
  CHECK(d->p.vertices == std::vector<Vertex>{0, 2});
  CHECK(d->q.vertices == std::vector<Vertex>{1, 3});

  const Graph split = gen::disjoint_union(gen::complete(3), gen::complete(10));
  const auto none = connect_pair_with_length(split, {0}, {3}, Expansion{4, {4}, 0}, Expansion{5, {5}, 0}, {},
                                             LengthWindow(2, 8), {});
  CHECK(!none.ok());
}

TEST_CASE("realize_exact_length examples") {
  const Graph c6 = gen::cycle(6);
  const auto longer = realize_exact_length(c6, {1, 3, 4, 5}, 0, 2, 4);
  REQUIRE(longer.has_value());
  CHECK(longer->vertices == std::vector<Vertex>{0, 5, 4, 3, 2});
  CHECK(!realize_exact_length(c6, {1, 3, 4, 5}, 0, 2, 3).has_value());
  const auto edge = realize_exact_length(gen::complete(4), {}, 0, 1, 1);
  REQUIRE(edge.has_value());
  CHECK(edge->vertices == std::vector<Vertex>{0, 1});
  CHECK_THROWS_AS(realize_exact_length(gen::complete(30), VertexSet(std::vector<Vertex>{2, 3, 4, 5, 6, 7, 8, 9, 10,
                                                                                        11, 12, 13, 14, 15, 16, 17,
                                                                                        18, 19, 20, 21, 22, 23, 24,
                                                                                        25, 26}),
                                       0, 1, 3),
                  TooLarge);
}

TEST_CASE("realize_exact_length matches all-paths enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = gen::gnp(16, 0.25, 3000 + trial);
    std::vector<Vertex> perm(16);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Vertex v1 = perm[0], v2 = perm[1];
    const int size = 4 + static_cast<int>(rng() % 9);
    const VertexSet a(std::vector<Vertex>(perm.begin() + 2, perm.begin() + 2 + size));
    std::set<int> allowed(a.begin(), a.end());
    allowed.insert(v1);
    allowed.insert(v2);
    const std::set<int> lengths = oracle::path_lengths(g, allowed, v1, v2);
    for (int target = 1; target <= size + 1; ++target) {
      const auto p = realize_exact_length(g, a, v1, v2, target);
      CHECK(p.has_value() == (lengths.count(target) > 0));
      if (!p) continue;
      CHECK(p->length() == target);
      CHECK(is_simple_path(g, *p));
      CHECK(p->front() == v1);
      CHECK(p->back() == v2);
      for (Vertex x : p->vertices) CHECK(allowed.count(x));
    }
  }
}
