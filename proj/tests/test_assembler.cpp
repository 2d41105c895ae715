#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tksub/assembler.hpp"
#include "tksub/generators.hpp"

using namespace tksub;

namespace {

RunConfig desk() {
  RunConfig cfg;
  cfg.overrides = DeskOverrides{};
  return cfg;
}

}  // namespace

TEST_CASE("paper_m rounds up to the next even integer") {
  CHECK(paper_m(std::exp(1.0) * 100.0, 10.0) == 82);
  CHECK(paper_m(std::exp(1.0) * 49.0, 7.0) == 82);
  CHECK(paper_m(100.0, 10.0) == 2);  // ln 1 = 0
  const double x = 80.0 * std::pow(std::log(1e6 / 100.0), 4);
  const long long m = paper_m(1e6, 10.0);
  CHECK(m % 2 == 0);
  CHECK(static_cast<double>(m) > x);
  CHECK(static_cast<double>(m) - 2 <= x);
}

TEST_CASE("kappa rules") {
  CHECK(kappa_of(100, KappaRule::Sqrt) == doctest::Approx(10));
  CHECK(kappa_of(7, KappaRule::Linear) == doctest::Approx(7));
  CHECK_THROWS_AS(kappa_of(0, KappaRule::Sqrt), InvalidArgument);
}

TEST_CASE("derive_config in paper mode evaluates the constants") {
  RunConfig cfg;
  cfg.mode = RunMode::Paper;
  const ResolvedConfig rc = derive_config(1'000'000, 1e6, cfg);
  CHECK(rc.kappa == doctest::Approx(1000));
  const long long m = paper_m(1e6, 1000);
  CHECK(rc.m == m);
  CHECK(rc.ell == m * m * m);
  const double m4 = std::pow(static_cast<double>(m), 4);
  CHECK(rc.D == doctest::Approx(1e6 * m4 / 1e7));
  CHECK(rc.unit.h0 == 5);
  CHECK(rc.unit.h2 == 5);
  CHECK(rc.unit.h3 == 2 * m);
  CHECK(rc.adjuster_steps == 21 * m);
  CHECK(rc.unit_count == 5);
  CHECK(rc.s == 240);
  CHECK(rc.bad_threshold == static_cast<long long>(1000.0 * m * m * m));
  CHECK(rc.c_prime == "1/200");

  cfg.kappa_rule = KappaRule::Linear;
  CHECK(derive_config(1000, 7, cfg).kappa == doctest::Approx(7));
}

TEST_CASE("derive_config in desk mode echoes overrides") {
  RunConfig cfg;
  CHECK_THROWS_AS(derive_config(10, 3, cfg), InvalidArgument);
  cfg.overrides = DeskOverrides{};
  cfg.overrides->m = 6;
  cfg.overrides->ell = 10;
  const ResolvedConfig rc = derive_config(10, 9, cfg);
  CHECK(rc.m == 6);
  CHECK(rc.ell == 10);
  CHECK(rc.kappa == doctest::Approx(3));
  CHECK(rc.unit.h0 == 3);
}

TEST_CASE("classify_units uses a strict threshold") {
  Unit a, b;
  a.core = 0;
  a.spokes = {Path({0, 1})};
  Hub h;
  h.center = 1;
  h.first_layer = {2, 3};
  h.second_layers = {{4}, {5}};
  a.hubs = {h};
  b.core = 10;
  b.spokes = {Path({10})};
  Hub h2;
  h2.center = 10;
  h2.first_layer = {11};
  h2.second_layers = {{12}};
  b.hubs = {h2};
  const VertexSet usage{2, 3, 11};
  const auto c1 = classify_units({a, b}, usage, 1);
  CHECK(c1.good == std::vector<int>{1});
  CHECK(c1.bad == std::vector<int>{0});
  const auto c2 = classify_units({a, b}, usage, 2);
  CHECK(c2.good == std::vector<int>{0, 1});
  CHECK(c2.bad.empty());
}

TEST_CASE("find_balanced_subdivision on small hosts") {
  PipelineTrace t;
  auto empty = find_balanced_subdivision(Graph(0), desk(), t);
  REQUIRE_FALSE(empty.ok());
  CHECK(empty.failure().kind == FailureKind::NoUnits);

  PipelineTrace t2;
  auto r = find_balanced_subdivision(gen::complete_bipartite(30, 30), desk(), t2);
  REQUIRE(r.ok());
  CHECK(r->k() >= 2);
  CHECK(verify_subdivision(gen::complete_bipartite(30, 30), *r).passed());
  CHECK(t2.parity_checks >= t2.connections_paper);
  for (const Unit& u : t2.units) CHECK(validate_unit(gen::complete_bipartite(30, 30), u).passed());
}

TEST_CASE("find_balanced_subdivision honours length and size targets") {
  const Graph g = gen::complete(40);
  RunConfig cfg = desk();
  cfg.overrides->unit = UnitParams{2, 1, 1, 2};
  cfg.ell_target = 12;
  cfg.k_target = 3;
  PipelineTrace t;
  auto r = find_balanced_subdivision(g, cfg, t);
  REQUIRE(r.ok());
  CHECK(r->ell == 12);
  CHECK(r->k() == 3);
  CHECK(verify_subdivision(g, *r).passed());
}

TEST_CASE("top_level routes to the right branch") {
  SUBCASE("empty") {
    const PipelineResult r = top_level(Graph(0), desk());
    CHECK(r.kind == PipelineKind::Failed);
    CHECK(r.failure->kind == FailureKind::NoUnits);
  }
  SUBCASE("edgeless") {
    CHECK(top_level(Graph(5), desk()).kind == PipelineKind::SparseRegime);
  }
  SUBCASE("K12 through the dense fallback") {
    const Graph g = gen::complete(12);
    const PipelineResult r = top_level(g, desk());
    REQUIRE(r.kind == PipelineKind::DenseFallback);
    CHECK(r.certificate->k() == 4);
    CHECK(r.certificate->ell == 2);
    CHECK(verify_subdivision(g, *r.certificate).passed());
  }
  SUBCASE("C9 with targets is sparse but solved exactly") {
    RunConfig cfg = desk();
    cfg.k_target = 3;
    cfg.ell_target = 3;
    const PipelineResult r = top_level(gen::cycle(9), cfg);
    CHECK(r.kind == PipelineKind::SparseRegime);
    REQUIRE(r.certificate);
    CHECK(r.certificate->k() == 3);
    CHECK(r.certificate->ell == 3);
  }
  SUBCASE("sparse random graph") {
    const PipelineResult r = top_level(gen::gnp(300, 0.004, 3), desk());
    CHECK(r.kind == PipelineKind::SparseRegime);
  }
  SUBCASE("paper mode never claims the dense branch at desk scale") {
    RunConfig cfg;
    cfg.mode = RunMode::Paper;
    const PipelineResult r = top_level(gen::complete(30), cfg);
    CHECK(r.kind == PipelineKind::SparseRegime);
  }
}

TEST_CASE("linear rule on incidence planes") {
  for (int q : {3, 5}) {
    CAPTURE(q);
    const Graph g = gen::incidence_plane(q);
    RunConfig cfg = desk();
    cfg.kappa_rule = KappaRule::Linear;
    cfg.overrides->unit = UnitParams{2, 1, 1, 2};
    cfg.overrides->ell = 16;
    const PipelineResult r = top_level(g, cfg);
    CHECK(r.trace.kst_transform_applied);
    REQUIRE(r.trace.kst_bound);
    CHECK(*r.trace.kst_observed <= *r.trace.kst_bound);
    CHECK_FALSE(r.trace.adjusters_built.empty());
    for (const Adjuster& a : r.trace.adjusters_built) CHECK(validate_adjuster(g, a).passed());
    for (const Unit& u : r.trace.units) CHECK(validate_unit(g, u).passed());
    REQUIRE(r.certificate);
    CHECK(verify_subdivision(g, *r.certificate).passed());
  }
}

TEST_CASE("trace gadgets are reported in host ids") {
  // Two blocks: H sits inside one of them, so local and host ids differ.
  const Graph g = gen::disjoint_union(gen::cycle(7), gen::complete(40));
  RunConfig cfg = desk();
  cfg.overrides->unit = UnitParams{2, 1, 1, 2};
  cfg.overrides->K = 0.5;
  cfg.ell_target = 12;
  const PipelineResult r = top_level(g, cfg);
  REQUIRE_FALSE(r.trace.units.empty());
  for (const Unit& u : r.trace.units) {
    CHECK(u.core >= 7);
    CHECK(validate_unit(g, u).passed());
  }
  for (const Adjuster& a : r.trace.adjusters_built) CHECK(validate_adjuster(g, a).passed());
  REQUIRE(r.certificate);
  CHECK(r.kind == PipelineKind::Subdivision);
  CHECK(verify_subdivision(g, *r.certificate).passed());
}

TEST_CASE("top_level certificates verify across a seeded corpus") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CAPTURE(seed);
    const Graph g = gen::gnp(40, 0.3, seed);
    RunConfig cfg = desk();
    cfg.seed = seed;
    const PipelineResult r = top_level(g, cfg);
    if (r.certificate) CHECK(verify_subdivision(g, *r.certificate).passed());
    else CHECK(r.kind != PipelineKind::Subdivision);
  }
}

TEST_CASE("K50 yields at least five branch vertices") {
  const Graph g = gen::complete(50);
  const PipelineResult r = top_level(g, desk());
  REQUIRE(r.certificate);
  CHECK(r.certificate->k() >= 5);
  CHECK(verify_subdivision(g, *r.certificate).passed());
}
