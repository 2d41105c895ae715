#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tksub/assembler.hpp"
#include "tksub/drc.hpp"
#include "tksub/expander.hpp"
#include "tksub/gadgets.hpp"
#include "tksub/generators.hpp"
#include "tksub/io.hpp"

using namespace tksub;

namespace {

constexpr int kUsage = 2;

// Usage problems discovered after argument parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph read_graph(const std::string& path) {
  if (path == "-") return parse_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_edge_list(in);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string rational_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Json unit_params_json(const UnitParams& p) {
  return Json{{"h0", p.h0}, {"h1", p.h1}, {"h2", p.h2}, {"h3", p.h3}};
}

UnitParams unit_params_of(const std::vector<int>& v) {
  if (v.size() != 4) throw UsageError("unit parameters take four integers h0 h1 h2 h3");
  return UnitParams{v[0], v[1], v[2], v[3]};
}

Json config_json(const ResolvedConfig& rc) {
  Json j;
  j["mode"] = to_string(rc.mode);
  j["kappa_rule"] = to_string(rc.kappa_rule);
  j["n"] = rc.n;
  j["d"] = round9(rc.d);
  j["kappa"] = round9(rc.kappa);
  j["m"] = rc.m;
  j["D"] = round9(rc.D);
  j["ell"] = rc.ell;
  j["c_prime"] = rc.c_prime;
  j["c"] = rc.c;
  j["unit"] = unit_params_json(rc.unit);
  j["router_unit"] = unit_params_json(rc.router_unit);
  j["adjuster_steps"] = rc.adjuster_steps;
  j["unit_count"] = rc.unit_count;
  j["s"] = round9(rc.s);
  j["K"] = round9(rc.K);
  j["bad_threshold"] = rc.bad_threshold;
  j["hub_first_layer"] = rc.hub_first_layer;
  return j;
}

Json trace_json(const PipelineTrace& t) {
  Json j;
  j["units_built"] = t.units.size();
  j["adjusters_used"] = t.adjusters.size();
  j["adjusters_built"] = t.adjusters_built.size();
  j["connections_paper"] = t.connections_paper;
  j["connections_fallback"] = t.connections_fallback;
  j["connections_failed"] = t.connections_failed;
  j["parity_checks"] = t.parity_checks;
  j["bad_units"] = t.bad_units;
  j["kst_transform_applied"] = t.kst_transform_applied;
  if (t.kst_bound) j["kst_bound"] = round9(*t.kst_bound);
  if (t.kst_observed) j["kst_observed"] = round9(*t.kst_observed);
  j["log"] = Json::array();
  for (const TraceEntry& e : t.log) j["log"].push_back({{"stage", e.stage}, {"message", e.message}});
  return j;
}

// gen ------------------------------------------------------------------------

void add_gen(CLI::App& app, std::function<int()>& action) {
  CLI::App* gen = app.add_subcommand("gen", "Generate a graph as a canonical edge list");
  gen->require_subcommand(1);
  auto family = [&](const std::string& name, const std::string& help) {
    return gen->add_subcommand(name, help);
  };
  auto print = [](const Graph& g) {
    std::cout << write_edge_list(g);
    return 0;
  };

  static int n = 0, d = 0, copies = 2, dim = 0, q = 0, a = 0, b = 0, n1 = 0, n2 = 0;
  static double p = 0;
  static std::uint64_t seed = 0;

  CLI::App* gnp = family("gnp", "Erdos-Renyi G(n, p)");
  gnp->add_option("--n", n)->required();
  gnp->add_option("--p", p)->required()->check(CLI::Range(0.0, 1.0));
  gnp->add_option("--seed", seed)->required();
  gnp->callback([&] { action = [print] { return print(gen::gnp(n, p, seed)); }; });

  CLI::App* bgnp = family("bgnp", "Random bipartite graph with sides n1 and n2");
  bgnp->add_option("--n1", n1)->required();
  bgnp->add_option("--n2", n2)->required();
  bgnp->add_option("--p", p)->required()->check(CLI::Range(0.0, 1.0));
  bgnp->add_option("--seed", seed)->required();
  bgnp->callback([&] { action = [print] { return print(gen::bipartite_gnp(n1, n2, p, seed)); }; });

  CLI::App* kdd = family("kdd", "Disjoint copies of K_{d,d}");
  kdd->add_option("--d", d)->required();
  kdd->add_option("--copies", copies);
  kdd->callback([&] { action = [print] { return print(gen::kdd(d, copies)); }; });

  CLI::App* cube = family("hypercube", "Hypercube Q_dim");
  cube->add_option("--dim", dim)->required();
  cube->callback([&] { action = [print] { return print(gen::hypercube(dim)); }; });

  CLI::App* cyc = family("cycle", "Cycle C_n");
  cyc->add_option("--n", n)->required();
  cyc->callback([&] { action = [print] { return print(gen::cycle(n)); }; });

  CLI::App* pth = family("path", "Path with n vertices");
  pth->add_option("--n", n)->required();
  pth->callback([&] { action = [print] { return print(gen::path(n)); }; });

  CLI::App* inc = family("incidence_plane", "Point-line incidence graph of PG(2, q)");
  inc->add_option("--q", q)->required();
  inc->callback([&] { action = [print] { return print(gen::incidence_plane(q)); }; });

  CLI::App* comp = family("complete", "Complete graph K_n");
  comp->add_option("--n", n)->required();
  comp->callback([&] { action = [print] { return print(gen::complete(n)); }; });

  CLI::App* cb = family("complete_bipartite", "Complete bipartite graph K_{a,b}");
  cb->add_option("--a", a)->required();
  cb->add_option("--b", b)->required();
  cb->callback([&] { action = [print] { return print(gen::complete_bipartite(a, b)); }; });
}

// find -----------------------------------------------------------------------

struct FindFlags {
  std::string input = "-";
  std::string mode = "desk";
  std::string kappa = "sqrt";
  double epsilon1 = 0.5;
  double epsilon2 = 1e-6;
  std::uint64_t seed = 0;
  int exhaustive_cap = 22;
  int k = 0;
  int ell = 0;
  DeskOverrides o;
  std::vector<int> unit{3, 1, 2, 2};
  std::vector<int> router_unit{1, 1, 1, 2};
};

int run_find(const FindFlags& f) {
  const Graph g = read_graph(f.input);
  RunConfig cfg;
  cfg.mode = f.mode == "paper" ? RunMode::Paper : RunMode::Desk;
  cfg.kappa_rule = f.kappa == "linear" ? KappaRule::Linear : KappaRule::Sqrt;
  cfg.epsilon1 = f.epsilon1;
  cfg.epsilon2 = f.epsilon2;
  cfg.seed = f.seed;
  cfg.exhaustive_cap = f.exhaustive_cap;
  cfg.k_target = f.k;
  cfg.ell_target = f.ell;
  DeskOverrides o = f.o;
  o.unit = unit_params_of(f.unit);
  o.router_unit = unit_params_of(f.router_unit);
  cfg.overrides = o;

  Json flags;
  flags["mode"] = f.mode;
  flags["kappa"] = f.kappa;
  flags["epsilon1"] = round9(f.epsilon1);
  flags["epsilon2"] = round9(f.epsilon2);
  flags["seed"] = f.seed;
  flags["exhaustive_cap"] = f.exhaustive_cap;
  flags["k"] = f.k;
  flags["ell"] = f.ell;
  flags["override_m"] = o.m;
  flags["override_D"] = o.D;
  flags["override_ell"] = o.ell;
  flags["unit"] = unit_params_json(o.unit);
  flags["router_unit"] = unit_params_json(o.router_unit);
  flags["adjuster_steps"] = o.adjuster_steps;
  flags["unit_count"] = o.unit_count;
  flags["s"] = round9(o.s);
  flags["K"] = round9(o.K);
  flags["bad_threshold"] = o.bad_threshold;

  const PipelineResult r = top_level(g, cfg);
  Json out;
  out["command"] = "find";
  out["flags"] = flags;
  out["outcome"] = to_string(r.kind);
  bool ok = false;
  if (r.certificate) {
    const ValidationReport rep = verify_subdivision(g, *r.certificate);
    ok = rep.passed();
    out["k"] = r.certificate->k();
    out["ell"] = r.certificate->ell;
    out["verified"] = ok;
    out["certificate"] = to_json(*r.certificate);
  }
  if (r.failure) {
    out["failure"] = {{"kind", to_string(r.failure->kind)}, {"detail", r.failure->detail}};
    Json partial = Json::array();
    for (const Path& p : r.failure->partial) partial.push_back(p.vertices);
    out["failure"]["partial"] = partial;
  }
  if (r.trace.config) out["config"] = config_json(*r.trace.config);
  out["trace"] = trace_json(r.trace);
  emit(out);
  return ok ? 0 : 1;
}

// verify ---------------------------------------------------------------------

int run_verify(const std::string& graph_path, const std::string& cert_path) {
  const Graph g = read_graph(graph_path);
  const Json j = read_json(cert_path);
  const SubdivisionCertificate c =
      certificate_from_json(j.is_object() && j.contains("certificate") ? j.at("certificate") : j);
  const ValidationReport rep = verify_subdivision(g, c);
  for (const ClauseResult& cl : rep.clauses)
    std::cerr << (cl.passed ? "ok   " : "FAIL ") << cl.id << (cl.passed ? "" : ": " + cl.witness) << "\n";
  Json out;
  out["command"] = "verify";
  out["k"] = c.k();
  out["ell"] = c.ell;
  out["report"] = to_json(rep);
  emit(out);
  return rep.passed() ? 0 : 1;
}

// expander -------------------------------------------------------------------

struct ExpanderFlags {
  std::string input = "-";
  double epsilon1 = 0.5;
  double k = 1.0;
  std::string mode = "exhaustive";
  int trials = 200;
  std::optional<std::uint64_t> seed;
  int exhaustive_cap = 22;
  bool extract = false;
};

int run_expander(const ExpanderFlags& f) {
  const Graph g = read_graph(f.input);
  if ((f.mode == "sampled" || f.extract) && !f.seed) throw UsageError("--seed is required for randomized runs");
  const ExpansionProfile p(f.epsilon1, f.k);
  Json flags;
  flags["epsilon1"] = round9(f.epsilon1);
  flags["k"] = round9(f.k);
  flags["mode"] = f.mode;
  flags["trials"] = f.trials;
  if (f.seed) flags["seed"] = *f.seed;
  flags["exhaustive_cap"] = f.exhaustive_cap;
  flags["extract"] = f.extract;

  Json out;
  out["command"] = "expander";
  out["flags"] = flags;
  const Graph* target = &g;
  std::optional<ExpanderExtraction> ex;
  if (f.extract) {
    ex = extract_expander(g, p, *f.seed, f.exhaustive_cap);
    target = &ex->h.graph;
    const DegreeStats sg = degree_stats(g);
    const DegreeStats sh = degree_stats(ex->h.graph);
    out["extracted"] = {{"vertices", ex->h.to_parent},
                        {"rounds", ex->rounds},
                        {"average_degree_G", rational_string(sg.average)},
                        {"average_degree_H", rational_string(sh.average)},
                        {"min_degree_H", sh.min_degree}};
  }
  const VerifyMode vm = f.mode == "sampled" ? VerifyMode::sampled(f.trials, f.seed.value_or(0))
                                             : VerifyMode::exhaustive(f.exhaustive_cap);
  const ExpanderVerdict v = ex && f.mode == "exhaustive" && target->vertex_count() > f.exhaustive_cap
                                ? verify_expander(*target, p, VerifyMode::sampled(f.trials, *f.seed))
                                : verify_expander(*target, p, vm);
  out["status"] = to_string(v.status);
  out["sets_checked"] = v.sets_checked;
  if (v.witness) {
    std::vector<Vertex> w = v.witness->members();
    if (ex)
      for (Vertex& x : w) x = ex->h.lift(x);
    out["witness"] = w;
  }
  emit(out);
  return v.status == ExpanderStatus::Refuted ? 1 : 0;
}

// gadget ---------------------------------------------------------------------

struct GadgetFlags {
  std::string input = "-";
  std::string gadget_file;
  std::vector<int> avoid;
  int h0 = 1, h1 = 1, h2 = 1, h3 = 1;
  int D = 1, m = 1, steps = 1;
  int pool = 4, r3 = 1, r4 = 1;
  bool c4 = false;
  int exhaustive_cap = 24;
};

Json gadget_flags_json(const std::string& kind, const GadgetFlags& f) {
  Json j;
  j["kind"] = kind;
  j["avoid"] = VertexSet(f.avoid).members();
  if (kind == "hub") j.update({{"h1", f.h1}, {"h2", f.h2}, {"c4", f.c4}});
  if (kind == "unit") j.update({{"h0", f.h0}, {"h1", f.h1}, {"h2", f.h2}, {"h3", f.h3}});
  if (kind == "adjuster") j.update({{"D", f.D}, {"m", f.m}, {"steps", f.steps}, {"c4", f.c4}});
  if (kind == "octopus") j.update({{"pool", f.pool}, {"D", f.D}, {"m", f.m}, {"r3", f.r3}, {"r4", f.r4}});
  j["exhaustive_cap"] = f.exhaustive_cap;
  return j;
}

Json failure_json(const Failure& fl) {
  Json partial = Json::array();
  for (const Path& p : fl.partial) partial.push_back(p.vertices);
  return {{"kind", to_string(fl.kind)}, {"detail", fl.detail}, {"partial", partial}};
}

Outcome<Adjuster> adjuster_chain(const Graph& g, const VertexSet& avoid, int d, int m, int steps, bool c4) {
  auto a = build_simple_adjuster(g, avoid, d, m, c4);
  if (!a) return a;
  Adjuster cur = *a;
  for (int i = 1; i < steps; ++i) {
    auto next = build_simple_adjuster(g, avoid.unite(cur.vertices()), d, m, c4);
    if (!next) return next;
    auto linked = link_adjusters(g, cur, *next, avoid);
    if (!linked) return linked;
    cur = *linked;
  }
  return cur;
}

Json adjuster_with_menu(const Graph& g, const Adjuster& a, int cap) {
  Json j;
  j["gadget"] = to_json(a);
  if (static_cast<int>(a.center.size()) + 2 <= cap) {
    const std::set<int> menu = adjuster_length_menu(g, a, cap);
    j["menu"] = std::vector<int>(menu.begin(), menu.end());
  } else {
    j["menu"] = nullptr;
  }
  return j;
}

int run_gadget_build(const std::string& kind, const GadgetFlags& f) {
  const Graph g = read_graph(f.input);
  const VertexSet avoid(f.avoid);
  Json out;
  out["command"] = "gadget build";
  out["flags"] = gadget_flags_json(kind, f);
  std::optional<Failure> fail;
  ValidationReport report;
  if (kind == "hub") {
    auto h = build_hub(g, avoid, f.h1, f.h2, f.c4);
    if (h) {
      out["gadget"] = to_json(*h);
      report = validate_hub(g, *h);
    } else {
      fail = h.failure();
    }
  } else if (kind == "unit") {
    auto u = build_unit(g, avoid, UnitParams{f.h0, f.h1, f.h2, f.h3});
    if (u) {
      out["gadget"] = to_json(*u);
      report = validate_unit(g, *u);
    } else {
      fail = u.failure();
    }
  } else if (kind == "adjuster") {
    auto a = adjuster_chain(g, avoid, f.D, f.m, f.steps, f.c4);
    if (a) {
      out.update(adjuster_with_menu(g, *a, f.exhaustive_cap));
      report = validate_adjuster(g, *a, f.exhaustive_cap);
    } else {
      fail = a.failure();
    }
  } else {
    std::vector<Adjuster> pool;
    VertexSet taken = avoid;
    for (int i = 0; i < f.pool; ++i) {
      auto a = build_simple_adjuster(g, taken, f.D, f.m);
      if (!a) break;
      taken.insert_all(a->vertices());
      pool.push_back(*a);
    }
    if (pool.empty()) {
      fail = Failure(FailureKind::Acyclic, "no adjuster for the pool");
    } else {
      auto o = build_octopus(g, pool, avoid, f.r3, f.r4);
      if (o) {
        out["gadget"] = to_json(*o);
        report = validate_octopus(g, *o);
      } else {
        fail = o.failure();
      }
    }
  }
  if (fail) {
    out["failure"] = failure_json(*fail);
    emit(out);
    return 1;
  }
  out["report"] = to_json(report);
  emit(out);
  return report.passed() ? 0 : 1;
}

int run_gadget_check(const std::string& kind, const GadgetFlags& f) {
  const Graph g = read_graph(f.input);
  const Json j = read_json(f.gadget_file);
  const Json& body = j.is_object() && j.contains("gadget") ? j.at("gadget") : j;
  ValidationReport report;
  try {
    if (kind == "hub") report = validate_hub(g, hub_from_json(body));
    else if (kind == "unit") report = validate_unit(g, unit_from_json(body));
    else if (kind == "adjuster") report = validate_adjuster(g, adjuster_from_json(body), f.exhaustive_cap);
    else report = validate_octopus(g, octopus_from_json(body));
  } catch (const InvalidVertex& e) {
    throw ParseError(e.what());
  }
  for (const ClauseResult& cl : report.clauses)
    std::cerr << (cl.passed ? "ok   " : "FAIL ") << cl.id << (cl.passed ? "" : ": " + cl.witness) << "\n";
  Json out;
  out["command"] = "gadget check";
  out["flags"] = {{"kind", kind}, {"exhaustive_cap", f.exhaustive_cap}};
  out["report"] = to_json(report);
  emit(out);
  return report.passed() ? 0 : 1;
}

// drc ------------------------------------------------------------------------

struct DrcFlags {
  std::string input = "-";
  int t = 1, r = 1, c = 1, a = 1;
  std::uint64_t seed = 0;
  int retries = 64;
  int left = -1;
};

int run_drc(const DrcFlags& f) {
  const Graph g = read_graph(f.input);
  const int n = g.vertex_count();
  std::vector<Vertex> s1, s2;
  if (f.left >= 0) {
    if (f.left > n) throw UsageError("--left exceeds the vertex count");
    for (Vertex v = 0; v < n; ++v) (v < f.left ? s1 : s2).push_back(v);
  } else {
    const auto col = two_coloring(g);
    if (!col) throw UsageError("host is not bipartite; pass --left to split it");
    for (Vertex v = 0; v < n; ++v) ((*col)[v] == (*col)[0] ? s1 : s2).push_back(v);
  }
  const VertexSet v1(std::move(s1)), v2(std::move(s2));
  long long crossing = 0;
  for (const auto& [u, v] : g.edges())
    if (v1.contains(u) != v1.contains(v)) ++crossing;
  const DrcParams p(f.t, f.r, f.c, f.a);

  Json out;
  out["command"] = "drc";
  out["flags"] = {{"t", f.t}, {"r", f.r}, {"c", f.c}, {"a", f.a}, {"seed", f.seed}, {"retries", f.retries}, {"left", f.left}};
  out["n1"] = v1.size();
  out["n2"] = v2.size();
  if (v1.empty() || v2.empty()) {
    out["failure"] = {{"kind", "InvalidArgument"}, {"detail", "one side is empty"}};
    emit(out);
    return 1;
  }
  const Rational alpha(crossing, static_cast<long long>(v1.size() * v2.size()));
  out["alpha"] = rational_string(alpha);
  out["feasible"] = drc_feasible(static_cast<long long>(v1.size()), static_cast<long long>(v2.size()), alpha, p);
  auto sel = drc_select(g, v1, v2, p, f.seed, f.retries);
  if (!sel) {
    out["failure"] = failure_json(sel.failure());
    emit(out);
    return 1;
  }
  out["a0"] = sel->a0.members();
  out["attempts"] = sel->attempts;
  out["valid"] = drc_valid(g, sel->a0, v2, f.r, f.c);
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced clique subdivisions: generation, search, certificates and gadgets"};
  app.require_subcommand(1);
  std::function<int()> action;

  add_gen(app, action);

  FindFlags ff;
  CLI::App* find = app.add_subcommand("find", "Search for a balanced clique subdivision");
  find->add_option("--input", ff.input, "Edge list file, - for standard input");
  find->add_option("--mode", ff.mode)->check(CLI::IsMember({"paper", "desk"}));
  find->add_option("--kappa", ff.kappa)->check(CLI::IsMember({"sqrt", "linear"}));
  find->add_option("--epsilon1", ff.epsilon1)->check(CLI::Range(0.0, 1.0));
  find->add_option("--epsilon2", ff.epsilon2)->check(CLI::PositiveNumber);
  find->add_option("--seed", ff.seed);
  find->add_option("--exhaustive-cap", ff.exhaustive_cap)->check(CLI::Range(2, 30));
  find->add_option("--k", ff.k, "Target number of branch vertices")->check(CLI::NonNegativeNumber);
  find->add_option("--ell", ff.ell, "Target path length")->check(CLI::NonNegativeNumber);
  find->add_option("--override-m", ff.o.m)->check(CLI::PositiveNumber);
  find->add_option("--override-D", ff.o.D)->check(CLI::PositiveNumber);
  find->add_option("--override-ell", ff.o.ell)->check(CLI::NonNegativeNumber);
  find->add_option("--unit", ff.unit, "Unit parameters h0 h1 h2 h3")->expected(4);
  find->add_option("--router-unit", ff.router_unit, "Router unit parameters h0 h1 h2 h3")->expected(4);
  find->add_option("--adjuster-steps", ff.o.adjuster_steps)->check(CLI::PositiveNumber);
  find->add_option("--unit-count", ff.o.unit_count)->check(CLI::NonNegativeNumber);
  find->add_option("--override-s", ff.o.s)->check(CLI::PositiveNumber);
  find->add_option("--override-K", ff.o.K)->check(CLI::PositiveNumber);
  find->add_option("--bad-threshold", ff.o.bad_threshold)->check(CLI::NonNegativeNumber);
  find->callback([&] { action = [&] { return run_find(ff); }; });

  std::string vgraph, vcert;
  CLI::App* verify = app.add_subcommand("verify", "Check a certificate against a graph");
  verify->add_option("--graph", vgraph)->required();
  verify->add_option("--certificate", vcert)->required();
  verify->callback([&] { action = [&] { return run_verify(vgraph, vcert); }; });

  ExpanderFlags ef;
  std::uint64_t eseed = 0;
  CLI::App* expander = app.add_subcommand("expander", "Verify or extract a sublinear expander");
  expander->add_option("--input", ef.input);
  expander->add_option("--epsilon1", ef.epsilon1)->check(CLI::Range(0.0, 1.0));
  expander->add_option("--k", ef.k)->check(CLI::PositiveNumber);
  expander->add_option("--mode", ef.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  expander->add_option("--trials", ef.trials)->check(CLI::PositiveNumber);
  CLI::Option* eseed_opt = expander->add_option("--seed", eseed);
  expander->add_option("--exhaustive-cap", ef.exhaustive_cap)->check(CLI::Range(1, 30));
  expander->add_flag("--extract", ef.extract, "Extract an expander subgraph first");
  expander->callback([&] {
    if (eseed_opt->count() > 0) ef.seed = eseed;
    action = [&] { return run_expander(ef); };
  });

  GadgetFlags gf;
  std::string gkind;
  CLI::App* gadget = app.add_subcommand("gadget", "Build or check hubs, units, adjusters and octopuses");
  gadget->require_subcommand(1);
  CLI::App* gbuild = gadget->add_subcommand("build", "Build a gadget and validate it");
  CLI::App* gcheck = gadget->add_subcommand("check", "Validate a gadget read from JSON");
  for (CLI::App* sub : {gbuild, gcheck}) {
    sub->add_option("kind", gkind)->required()->check(CLI::IsMember({"hub", "unit", "adjuster", "octopus"}));
    sub->add_option("--input", gf.input);
    sub->add_option("--exhaustive-cap", gf.exhaustive_cap)->check(CLI::Range(2, 30));
  }
  gbuild->add_option("--avoid", gf.avoid);
  gbuild->add_option("--h0", gf.h0)->check(CLI::PositiveNumber);
  gbuild->add_option("--h1", gf.h1)->check(CLI::PositiveNumber);
  gbuild->add_option("--h2", gf.h2)->check(CLI::PositiveNumber);
  gbuild->add_option("--h3", gf.h3)->check(CLI::PositiveNumber);
  gbuild->add_option("--D", gf.D)->check(CLI::PositiveNumber);
  gbuild->add_option("--m", gf.m)->check(CLI::NonNegativeNumber);
  gbuild->add_option("--steps", gf.steps)->check(CLI::PositiveNumber);
  gbuild->add_option("--pool", gf.pool)->check(CLI::PositiveNumber);
  gbuild->add_option("--r3", gf.r3)->check(CLI::NonNegativeNumber);
  gbuild->add_option("--r4", gf.r4)->check(CLI::NonNegativeNumber);
  gbuild->add_flag("--c4", gf.c4, "Use the C4-free variants");
  gcheck->add_option("--gadget", gf.gadget_file)->required();
  gbuild->callback([&] { action = [&] { return run_gadget_build(gkind, gf); }; });
  gcheck->callback([&] { action = [&] { return run_gadget_check(gkind, gf); }; });

  DrcFlags df;
  CLI::App* drc = app.add_subcommand("drc", "Dependent random choice on a bipartite host");
  drc->add_option("--input", df.input);
  drc->add_option("--t", df.t)->check(CLI::PositiveNumber);
  drc->add_option("--r", df.r)->check(CLI::PositiveNumber);
  drc->add_option("--c", df.c)->check(CLI::PositiveNumber);
  drc->add_option("--a", df.a)->check(CLI::PositiveNumber);
  drc->add_option("--seed", df.seed)->required();
  drc->add_option("--retries", df.retries)->check(CLI::PositiveNumber);
  drc->add_option("--left", df.left, "Vertices [0, left) form the first side");
  drc->callback([&] { action = [&] { return run_drc(df); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
