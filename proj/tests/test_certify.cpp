#include <doctest.h>

#include "oracles.hpp"
#include "tksub/certify.hpp"
#include "tksub/generators.hpp"

using namespace tksub;

namespace {

SubdivisionCertificate c9_certificate() {
  SubdivisionCertificate c;
  c.ell = 3;
  c.branch = {0, 3, 6};
  c.paths = {{0, 3, Path{{0, 1, 2, 3}}}, {0, 6, Path{{0, 8, 7, 6}}}, {3, 6, Path{{3, 4, 5, 6}}}};
  return c;
}

bool clause_failed(const ValidationReport& r, const std::string& id) {
  for (const auto& c : r.clauses)
    if (c.id == id) return !c.passed;
  return false;
}

}  // namespace

TEST_CASE("verify_subdivision examples") {
  SubdivisionCertificate k4;
  k4.ell = 1;
  k4.branch = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.paths.push_back({i, j, Path{{i, j}}});
  CHECK(verify_subdivision(gen::complete(4), k4).passed());

  const Graph c9 = gen::cycle(9);
  CHECK(verify_subdivision(c9, c9_certificate()).passed());

  // Reroute 0-3 the long way: length 6 and it crosses the other paths.
  SubdivisionCertificate bent = c9_certificate();
  bent.paths[0].path = Path{{0, 1, 2, 3, 4}};
  bent.paths[0].v = 4;
  const ValidationReport r = verify_subdivision(c9, bent);
  CHECK(!r.passed());
  CHECK(clause_failed(r, "uniform-length"));
}

TEST_CASE("verify_subdivision clauses") {
  const Graph c9 = gen::cycle(9);
  SubdivisionCertificate missing = c9_certificate();
  missing.paths.pop_back();
  CHECK(clause_failed(verify_subdivision(c9, missing), "pairs-complete"));

  SubdivisionCertificate dup = c9_certificate();
  dup.branch = {0, 3, 3};
  CHECK(clause_failed(verify_subdivision(c9, dup), "branch-distinct"));

  SubdivisionCertificate nonedge = c9_certificate();
  nonedge.paths[0].path = Path{{0, 2, 1, 3}};
  CHECK(clause_failed(verify_subdivision(c9, nonedge), "edges"));

  SubdivisionCertificate wrong_end = c9_certificate();
  wrong_end.paths[0].path = Path{{3, 2, 1, 0}};
  CHECK(clause_failed(verify_subdivision(c9, wrong_end), "endpoints"));

  SubdivisionCertificate zero = c9_certificate();
  zero.ell = 0;
  CHECK(clause_failed(verify_subdivision(c9, zero), "ell-positive"));

  const Graph k6 = gen::complete(6);
  SubdivisionCertificate shared;
  shared.ell = 2;
  shared.branch = {0, 1, 2};
  shared.paths = {{0, 1, Path{{0, 3, 1}}}, {0, 2, Path{{0, 3, 2}}}, {1, 2, Path{{1, 4, 2}}}};
  CHECK(clause_failed(verify_subdivision(k6, shared), "internal-disjoint"));

  SubdivisionCertificate through;
  through.ell = 2;
  through.branch = {0, 1, 2};
  through.paths = {{0, 1, Path{{0, 2, 1}}}, {0, 2, Path{{0, 3, 2}}}, {1, 2, Path{{1, 4, 2}}}};
  CHECK(clause_failed(verify_subdivision(k6, through), "internal-disjoint"));

  SubdivisionCertificate loop;
  loop.ell = 3;
  loop.branch = {0, 1};
  loop.paths = {{0, 1, Path{{0, 2, 0, 1}}}};
  CHECK(clause_failed(verify_subdivision(k6, loop), "simple"));

  SubdivisionCertificate outside = c9_certificate();
  outside.paths[0].path = Path{{0, 1, 20, 3}};
  CHECK(clause_failed(verify_subdivision(c9, outside), "edges"));
}

TEST_CASE("canonicalize") {
  SubdivisionCertificate c = c9_certificate();
  c.branch = {6, 0, 3};
  std::swap(c.paths[0], c.paths[2]);
  c.paths[1] = {6, 0, Path{{6, 7, 8, 0}}};
  c.canonicalize();
  CHECK(c == c9_certificate());
}

TEST_CASE("brute_force_subdivision examples") {
  const Graph c9 = gen::cycle(9);
  const SearchResult r = brute_force_subdivision(c9, 3, 3);
  REQUIRE(r.verdict == SearchVerdict::Found);
  CHECK(verify_subdivision(c9, *r.certificate).passed());

  const SearchResult k4 = brute_force_subdivision(gen::complete(4), 4, 1);
  CHECK(k4.verdict == SearchVerdict::Found);

  for (const Graph& t : {gen::binary_tree(3), gen::path(9), gen::star(6)})
    for (int ell = 1; ell <= 4; ++ell) CHECK(brute_force_subdivision(t, 3, ell).verdict == SearchVerdict::NotFound);

  CHECK(brute_force_subdivision(gen::complete(12), 4, 2, 2).verdict == SearchVerdict::BudgetExhausted);
  CHECK_THROWS_AS(brute_force_subdivision(c9, 1, 1), InvalidArgument);
}

TEST_CASE("best_balanced_clique examples") {
  const BestClique k44 = best_balanced_clique(gen::complete_bipartite(4, 4));
  CHECK(k44.k == 3);
  CHECK(k44.ell == 2);
  CHECK(k44.complete);
  const BestClique k6 = best_balanced_clique(gen::complete(6));
  CHECK(k6.k == 6);
  CHECK(k6.ell == 1);
  const BestClique c8 = best_balanced_clique(gen::cycle(8));
  CHECK(c8.k == 2);
  CHECK(c8.complete);
  CHECK(max_k_for_ell(gen::cycle(9), 3).k == 3);
  CHECK(max_k_for_ell(gen::cycle(9), 2).k == 2);
}

TEST_CASE("oracle certificates round-trip through the verifier") {
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = gen::gnp(8, 0.3 + 0.01 * trial, 6000 + trial);
    const BestClique b = best_balanced_clique(g);
    CHECK(b.complete);
    if (b.certificate) {
      CHECK(verify_subdivision(g, *b.certificate).passed());
      CHECK(b.certificate->k() == b.k);
      CHECK(b.certificate->ell == b.ell);
    }
  }
}
