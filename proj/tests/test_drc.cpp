#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tksub/drc.hpp"
#include "tksub/generators.hpp"

using namespace tksub;

namespace {

VertexSet range(int lo, int hi) {
  std::vector<Vertex> v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return VertexSet(v);
}

}  // namespace

TEST_CASE("drc_feasible") {
  CHECK(drc_feasible(10, 10, Rational(1), DrcParams(3, 2, 2, 3)));
  CHECK(!drc_feasible(10, 10, Rational(0), DrcParams(3, 1, 2, 1)));
  CHECK(drc_feasible(60, 60, Rational(1, 2), DrcParams(3, 2, 5, 3)));
  // 7.5 - 1770/1728 sits between 6 and 7.
  CHECK(drc_feasible(60, 60, Rational(1, 2), DrcParams(3, 2, 5, 6)));
  CHECK(!drc_feasible(60, 60, Rational(1, 2), DrcParams(3, 2, 5, 7)));
  CHECK_THROWS_AS(DrcParams(0, 1, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(DrcParams(1, 3, 1, 2), InvalidArgument);
}

TEST_CASE("drc_select") {
  const Graph kb = gen::complete_bipartite(6, 8);
  const auto full = drc_select(kb, range(0, 6), range(6, 14), DrcParams(2, 2, 1, 5), 1);
  REQUIRE(full.ok());
  CHECK(full->a0 == range(0, 6));
  CHECK(drc_valid(kb, full->a0, range(6, 14), 2, 8));

  const Graph empty(10);
  CHECK_THROWS_AS(drc_select(empty, range(0, 5), range(5, 10), DrcParams(1, 1, 1, 1), 1), InvalidArgument);
  CHECK_THROWS_AS(drc_select(gen::complete(4), {0, 1}, {2, 3}, DrcParams(1, 1, 1, 1), 1), InvalidArgument);

  int fast = 0;
  for (int seed = 0; seed < 30; ++seed) {
    const Graph g = gen::bipartite_gnp(60, 60, 0.5, seed);
    const auto r = drc_select(g, range(0, 60), range(60, 120), DrcParams(3, 2, 5, 3), seed, 20);
    if (!r) continue;
    fast += r->attempts <= 20;
    CHECK(r->a0.size() >= 3);
    CHECK(drc_valid(g, r->a0, range(60, 120), 2, 5));
  }
  CHECK(fast >= 28);
}

TEST_CASE("drc_valid") {
  const Graph p = gen::path(5);
  CHECK(drc_valid(p, {0, 2}, {1, 3}, 2, 1));
  CHECK(!drc_valid(p, {0, 4}, {1, 3}, 2, 1));
}

TEST_CASE("dense_tk2") {
  const Graph k10 = gen::complete(10);
  const auto a = dense_tk2(k10, 4);
  REQUIRE(a.ok());
  CHECK(a->ell == 2);
  CHECK(a->k() == 4);
  CHECK(verify_subdivision(k10, *a).passed());

  const Graph k44 = gen::complete_bipartite(4, 4);
  const auto b = dense_tk2(k44, 3);
  REQUIRE(b.ok());
  CHECK(verify_subdivision(k44, *b).passed());
  const auto side = two_coloring(k44);
  for (Vertex v : b->branch) CHECK((*side)[v] == (*side)[b->branch.front()]);

  const auto tree = dense_tk2(gen::binary_tree(4), 3);
  REQUIRE(!tree.ok());
  CHECK(tree.failure().kind == FailureKind::NoEmbedding);

  CHECK(!dense_tk2(k10, 5).ok());
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = gen::gnp(14, 0.6, 700 + trial);
    if (auto c = dense_tk2(g, 4)) CHECK(verify_subdivision(g, *c).passed());
  }
}

TEST_CASE("dense_tk2_max") {
  for (auto [n, k] : {std::pair{10, 4}, {15, 5}, {21, 6}}) {
    const Graph g = gen::complete(n);
    const auto c = dense_tk2_max(g);
    REQUIRE(c.ok());
    CHECK(c->k() == k);
    CHECK(verify_subdivision(g, *c).passed());
  }
}

TEST_CASE("kst_degree_bound") {
  CHECK(kst_degree_bound(7, 7, 2, 2) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(kst_degree_bound(5, 10, 1, 2) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(kst_degree_bound(1, 10, 1, 5) == doctest::Approx(10.0));
  CHECK(average_degree(gen::incidence_plane(2)) <= Rational(4));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const long long na = 1 + static_cast<long long>(rng() % 200);
    const long long nb = 1 + static_cast<long long>(rng() % 200);
    const int s = 1 + static_cast<int>(rng() % 3);
    const int t = s + static_cast<int>(rng() % 3);
    const double base = kst_degree_bound(na, nb, s, t);
    CHECK(kst_degree_bound(na, nb + 1, s, t) >= base - 1e-9);
    CHECK(kst_degree_bound(na, nb, s, t + 1) >= base - 1e-9);
  }
}

TEST_CASE("kst bound holds on incidence graphs") {
  for (int q : {2, 3, 5, 7}) {
    const Graph g = gen::incidence_plane(q);
    const long long side = q * q + q + 1;
    // Average degree of points into lines.
    CHECK(static_cast<double>(q + 1) <= kst_degree_bound(side, side, 2, 2) + 1e-9);
  }
}

TEST_CASE("robust_degree_or_tk2") {
  const Graph k20 = gen::complete(20);
  const auto ok = robust_degree_or_tk2(k20, {0, 1, 2, 3, 4}, Rational(20), 3);
  REQUIRE(ok.ok());
  CHECK(ok->kind == RobustDegreeVerdict::Kind::DegreeOk);
  CHECK(ok->remaining_degree == Rational(14));

  const auto none = robust_degree_or_tk2(k20, {}, average_degree(k20), 3);
  REQUIRE(none.ok());
  CHECK(none->kind == RobustDegreeVerdict::Kind::DegreeOk);

  const Graph kb = gen::complete_bipartite(10, 10);
  const auto tk = robust_degree_or_tk2(kb, range(0, 10), Rational(10), 3);
  REQUIRE(tk.ok());
  CHECK(tk->kind == RobustDegreeVerdict::Kind::FoundTk2);
  CHECK(tk->remaining_degree == Rational(0));
  CHECK(verify_subdivision(kb, *tk->certificate).passed());
}
