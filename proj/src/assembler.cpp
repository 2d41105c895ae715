#include "tksub/assembler.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tksub/connector.hpp"
#include "tksub/drc.hpp"
#include "tksub/expander.hpp"
#include "tksub/router.hpp"

namespace tksub {

const char* to_string(RunMode m) { return m == RunMode::Paper ? "paper" : "desk"; }
const char* to_string(KappaRule r) { return r == KappaRule::Sqrt ? "sqrt" : "linear"; }

const char* to_string(PipelineKind k) {
  switch (k) {
    case PipelineKind::Subdivision: return "Subdivision";
    case PipelineKind::DenseFallback: return "DenseFallback";
    case PipelineKind::SparseRegime: return "SparseRegime";
    case PipelineKind::Failed: return "Failed";
  }
  return "Unknown";
}

void PipelineTrace::note(std::string stage, std::string message) {
  log.push_back({std::move(stage), std::move(message)});
}

long long paper_m(double n, double kappa) {
  if (!(n > 0) || !(kappa > 0)) throw InvalidArgument("paper_m: n and kappa must be positive");
  double x = 80.0 * std::pow(std::log(n / (kappa * kappa)), 4);
  if (std::abs(x - std::round(x)) < 1e-9) x = std::round(x);
  long long m = static_cast<long long>(std::floor(x)) + 1;
  if (m % 2 != 0) ++m;
  return m;
}

double kappa_of(double d, KappaRule rule) {
  if (!(d > 0)) throw InvalidArgument("kappa_of: d must be positive");
  return rule == KappaRule::Sqrt ? std::sqrt(d) : d;
}

namespace {

int clamp_int(double v) {
  if (v >= static_cast<double>(INT_MAX)) return INT_MAX;
  if (v <= 0) return 0;
  return static_cast<int>(v);
}

long long clamp_ll(double v) {
  if (v >= 9.2e18) return LLONG_MAX;
  if (v <= 0) return 0;
  return static_cast<long long>(v);
}

}  // namespace

ResolvedConfig derive_config(long long n, double d, const RunConfig& cfg) {
  if (n < 1) throw InvalidArgument("derive_config: n must be positive");
  ResolvedConfig rc;
  rc.mode = cfg.mode;
  rc.kappa_rule = cfg.kappa_rule;
  rc.n = n;
  rc.d = d;
  rc.kappa = kappa_of(d, cfg.kappa_rule);
  if (cfg.mode == RunMode::Paper) {
    const double m = static_cast<double>(paper_m(static_cast<double>(n), rc.kappa));
    rc.m = static_cast<long long>(m);
    const double m4 = m * m * m * m;
    rc.D = rc.kappa * rc.kappa * m4 / 1e7;
    rc.ell = clamp_ll(m * m * m);
    const int hubs = clamp_int(std::floor(rc.kappa / 200.0));
    rc.hub_first_layer = clamp_ll(m4);
    rc.unit = UnitParams{hubs, clamp_int(m4), hubs, clamp_int(2 * m)};
    rc.router_unit = rc.unit;
    rc.adjuster_steps = clamp_ll(21 * m);
    rc.unit_count = hubs;
    rc.s = 240;
    rc.K = cfg.overrides ? cfg.overrides->K : DeskOverrides{}.K;
    rc.bad_threshold = clamp_ll(std::floor(rc.kappa * m * m * m));
    return rc;
  }
  if (!cfg.overrides) throw InvalidArgument("desk mode needs explicit overrides");
  const DeskOverrides& o = *cfg.overrides;
  rc.m = o.m;
  rc.D = o.D;
  rc.ell = o.ell;
  rc.unit = o.unit;
  rc.router_unit = o.router_unit;
  rc.adjuster_steps = o.adjuster_steps;
  rc.unit_count = o.unit_count;
  rc.s = o.s;
  rc.K = o.K;
  rc.bad_threshold = o.bad_threshold;
  rc.hub_first_layer = o.unit.h1;
  return rc;
}

UnitClassification classify_units(const std::vector<Unit>& units, const VertexSet& usage,
                                  long long threshold) {
  UnitClassification out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const long long used = static_cast<long long>(units[i].interior().intersect(usage).size());
    (used > threshold ? out.bad : out.good).push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

constexpr int kFallbackCap = 20;
constexpr long long kGrowBudget = 200'000;

struct Link {
  int a = -1;
  int b = -1;
  int hub_a = -1;
  int hub_b = -1;
  Path path;  // core of a -> core of b
  bool fallback = false;
  std::optional<Adjuster> adjuster;
};

struct Attempt {
  std::vector<int> accepted;
  std::vector<Link> links;
  int paper = 0;
  int fallback = 0;
  int failed = 0;
  int parity_checks = 0;
  std::map<std::string, int> misses;  // why the adjuster route was skipped
  std::vector<Adjuster> built;          // simple adjusters, including unused ones
};

// Sources of one hub: S2 vertices behind unused S1 vertices, each with its
// prefix core -> spoke -> centre -> z -> s.
struct HubSources {
  VertexSet sources;
  std::map<Vertex, Path> prefix;
};

class Linker {
 public:
  Linker(const Graph& g, const std::vector<Unit>& units, const ResolvedConfig& rc, bool bipartite,
         int exhaustive_cap)
      : g_(g), units_(units), rc_(rc), bipartite_(bipartite), exhaustive_cap_(exhaustive_cap) {
    const int n = g.vertex_count();
    w_.assign(n, 0);
    owner_.assign(n, -1);
    for (std::size_t i = 0; i < units.size(); ++i) {
      for (const Path& s : units[i].spokes)
        for (Vertex x : s.vertices) w_[x] = 1;
      for (Vertex x : units[i].vertices())
        if (owner_[x] == -1) owner_[x] = static_cast<int>(i);
    }
    reset();
  }

  void reset() {
    used_.assign(g_.vertex_count(), 0);
    hub_used_.clear();
    for (const Unit& u : units_) hub_used_.emplace_back(u.hubs.size(), 0);
  }

  // ell == 0 asks for any connection (probe).
  std::optional<Link> connect(int a, int b, long long ell, Attempt& stats) {
    if (auto l = paper_route(a, b, ell, stats)) {
      ++stats.paper;
      return l;
    }
    if (auto l = fallback_route(a, b, ell)) {
      ++stats.fallback;
      return l;
    }
    ++stats.failed;
    return std::nullopt;
  }

  void commit(const Link& l) {
    for (std::size_t i = 1; i + 1 < l.path.vertices.size(); ++i) used_[l.path.vertices[i]] = 1;
    if (l.hub_a >= 0) hub_used_[l.a][l.hub_a] = 1;
    if (l.hub_b >= 0) hub_used_[l.b][l.hub_b] = 1;
  }

  void release(const Link& l) {
    for (std::size_t i = 1; i + 1 < l.path.vertices.size(); ++i) used_[l.path.vertices[i]] = 0;
    if (l.hub_a >= 0) hub_used_[l.a][l.hub_a] = 0;
    if (l.hub_b >= 0) hub_used_[l.b][l.hub_b] = 0;
  }

  bool in_w(Vertex v) const { return w_[v] != 0; }

 private:
  bool blocked(Vertex v) const { return w_[v] || used_[v]; }
  bool foreign(Vertex v, int a, int b) const { return owner_[v] >= 0 && owner_[v] != a && owner_[v] != b; }

  HubSources sources_of(int unit, int hub, const std::vector<char>& reserved) const {
    HubSources out;
    const Unit& u = units_[unit];
    const Hub& h = u.hubs[hub];
    std::vector<Vertex> members;
    for (std::size_t i = 0; i < h.first_layer.size(); ++i) {
      const Vertex z = h.first_layer[i];
      if (used_[z]) continue;
      for (Vertex s : h.second_layers[i]) {
        if (blocked(s) || reserved[s] || out.prefix.count(s)) continue;
        std::vector<Vertex> vs = u.spokes[hub].vertices;
        vs.push_back(z);
        vs.push_back(s);
        out.prefix.emplace(s, Path(std::move(vs)));
        members.push_back(s);
      }
    }
    out.sources = VertexSet(std::move(members));
    return out;
  }

  int free_hub(int unit, int skip) const {
    for (std::size_t h = 0; h < units_[unit].hubs.size(); ++h)
      if (!hub_used_[unit][h] && static_cast<int>(h) != skip) return static_cast<int>(h);
    return -1;
  }

  Outcome<Adjuster> adjuster_chain(const VertexSet& avoid, Attempt& stats) const {
    const int d = std::max(1, clamp_int(rc_.D));
    const int m = std::max(1, clamp_int(static_cast<double>(rc_.m)));
    auto first = build_simple_adjuster(g_, avoid, d, m);
    if (!first) return first.failure();
    stats.built.push_back(*first);
    Adjuster a = *first;
    for (long long i = 1; i < rc_.adjuster_steps; ++i) {
      auto next = build_simple_adjuster(g_, avoid.unite(a.vertices()), d, m);
      if (!next) return next.failure();
      stats.built.push_back(*next);
      auto linked = link_adjusters(g_, a, *next, avoid);
      if (!linked) return linked.failure();
      a = *linked;
    }
    return a;
  }

  static std::optional<Link> miss(Attempt& stats, const std::string& why) {
    ++stats.misses[why];
    return std::nullopt;
  }

  std::optional<Link> paper_route(int a, int b, long long ell, Attempt& stats) const {
    const int n = g_.vertex_count();
    const int ha = free_hub(a, -1);
    const int hb = free_hub(b, -1);
    if (ha < 0 || hb < 0) return miss(stats, "no free hub");
    const Hub& hub_a = units_[a].hubs[ha];
    const Hub& hub_b = units_[b].hubs[hb];
    std::vector<char> reserved(n, 0);
    for (Vertex z : hub_a.first_layer) reserved[z] = 1;
    for (Vertex z : hub_b.first_layer) reserved[z] = 1;
    for (auto [unit, hub] : {std::pair{a, ha}, std::pair{b, hb}})
      for (std::size_t i = 0; i < units_[unit].hubs.size(); ++i)
        if (static_cast<int>(i) != hub && !hub_used_[unit][i])
          for (Vertex x : units_[unit].hubs[i].vertices()) reserved[x] = 1;
    HubSources sa = sources_of(a, ha, reserved);
    for (Vertex s : sa.sources) reserved[s] = 1;
    HubSources sb = sources_of(b, hb, reserved);
    if (sa.sources.empty() || sb.sources.empty()) return miss(stats, "no hub exterior left");

    std::vector<Vertex> base_avoid;
    for (Vertex v = 0; v < n; ++v)
      if (blocked(v) || reserved[v] || foreign(v, a, b)) base_avoid.push_back(v);
    const VertexSet blocked_set(std::move(base_avoid));
    const VertexSet adj_avoid = blocked_set.unite(sb.sources);
    auto adj = adjuster_chain(adj_avoid, stats);
    if (!adj) return miss(stats, std::string("no adjuster: ") + to_string(adj.failure().kind));

    const int pre_a = sa.prefix.begin()->second.length();
    const int pre_b = sb.prefix.begin()->second.length();
    LengthWindow window(2, n);
    if (ell > 0) {
      const long long hi = ell - pre_a - pre_b - adj->base_length;
      const long long lo = std::max<long long>(2, hi - 2LL * adj->steps);
      if (hi < lo) return miss(stats, "ell too short for the prefixes");
      window = LengthWindow(static_cast<int>(lo), static_cast<int>(hi));
    }
    const VertexSet route_avoid = blocked_set.unite(adj->center)
                                      .minus(sa.sources)
                                      .minus(sb.sources)
                                      .minus(adj->end1.vertices)
                                      .minus(adj->end2.vertices);
    auto pair = connect_pair_with_length(g_, sa.sources, sb.sources, adj->end1, adj->end2, route_avoid,
                                         window, rc_.router_unit);
    if (!pair) return miss(stats, std::string("routing: ") + to_string(pair.failure().kind));
    const Vertex alpha = pair->p.back();
    const Vertex beta = pair->q.back();
    const int x = ell > 0 ? static_cast<int>(ell - pre_a - pre_b - pair->p.length() - pair->q.length())
                          : adj->base_length;
    if (bipartite_) {
      ++stats.parity_checks;
      if ((x - adj->base_length) % 2 != 0)
        throw std::logic_error("parity mismatch on a bipartite host");
    }
    if (x < adj->base_length || x > adj->base_length + 2 * adj->steps) return miss(stats, "adjuster range missed");

    std::optional<Path> middle;
    if (static_cast<int>(adj->center.size()) + 2 <= exhaustive_cap_) {
      middle = realize_exact_length(g_, adj->center, alpha, beta, x, exhaustive_cap_);
    } else {
      const int idx = (x - adj->base_length) / 2;
      const Path& w = adj->length_witnesses[idx];
      middle = w.front() == alpha ? w : w.reversed();
    }
    if (!middle || middle->front() != alpha || middle->back() != beta) return miss(stats, "no middle path");

    Path full = sa.prefix.at(pair->p.front());
    full = full.joined(pair->p).joined(*middle).joined(pair->q.reversed());
    full = full.joined(sb.prefix.at(pair->q.front()).reversed());
    if (!is_simple_path(g_, full)) return miss(stats, "assembled path not simple");
    if (ell > 0 && full.length() != ell) return miss(stats, "assembled length off");

    Link l;
    l.a = a;
    l.b = b;
    l.hub_a = ha;
    l.hub_b = hb;
    l.path = std::move(full);
    l.adjuster = *adj;
    return l;
  }

  std::optional<Link> fallback_route(int a, int b, long long ell) const {
    const int n = g_.vertex_count();
    const Vertex ca = units_[a].core;
    const Vertex cb = units_[b].core;
    std::vector<char> block(n, 0);
    for (Vertex v = 0; v < n; ++v) block[v] = blocked(v) || foreign(v, a, b);
    block[ca] = block[cb] = 0;
    std::optional<Path> p;
    if (ell == 0) {
      p = short_connect_masked(g_, VertexSet{ca}, VertexSet{cb}, block, n);
    } else {
      // Alternate BFS layers from both cores until the candidate set is full.
      std::vector<char> seen(n, 0);
      seen[ca] = seen[cb] = 1;
      std::vector<Vertex> fa{ca}, fb{cb}, cand;
      const std::size_t limit = static_cast<std::size_t>(std::min(kFallbackCap, exhaustive_cap_) - 2);
      bool grew = true;
      while (cand.size() < limit && grew) {
        grew = false;
        for (std::vector<Vertex>* frontier : {&fa, &fb}) {
          std::vector<Vertex> next;
          for (Vertex v : *frontier)
            for (Vertex y : g_.neighbors(v)) {
              if (cand.size() >= limit) break;
              if (seen[y] || block[y]) continue;
              seen[y] = 1;
              cand.push_back(y);
              next.push_back(y);
            }
          if (!next.empty()) grew = true;
          *frontier = std::move(next);
        }
      }
      if (ell > static_cast<long long>(cand.size()) + 1) return std::nullopt;
      p = realize_exact_length(g_, VertexSet(cand), ca, cb, static_cast<int>(ell), kFallbackCap);
    }
    if (!p) return std::nullopt;
    Link l;
    l.a = a;
    l.b = b;
    l.path = std::move(*p);
    l.fallback = true;
    return l;
  }

  const Graph& g_;
  const std::vector<Unit>& units_;
  const ResolvedConfig& rc_;
  bool bipartite_;
  int exhaustive_cap_;
  std::vector<char> w_;
  std::vector<int> owner_;
  std::vector<char> used_;
  std::vector<std::vector<char>> hub_used_;
};

// Greedy: a unit joins when it links to every unit accepted so far.
Attempt run_greedy(Linker& linker, const std::vector<int>& candidates, long long ell, int k_target) {
  Attempt out;
  linker.reset();
  for (int u : candidates) {
    std::vector<Link> trial;
    bool ok = true;
    for (int a : out.accepted) {
      auto l = linker.connect(a, u, ell, out);
      if (!l) {
        ok = false;
        break;
      }
      linker.commit(*l);
      trial.push_back(std::move(*l));
    }
    if (!ok) {
      for (const Link& l : trial) linker.release(l);
      continue;
    }
    out.accepted.push_back(u);
    for (Link& l : trial) out.links.push_back(std::move(l));
    if (k_target > 0 && static_cast<int>(out.accepted.size()) >= k_target) break;
  }
  return out;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

}  // namespace

Outcome<SubdivisionCertificate> find_balanced_subdivision(const Graph& g, const RunConfig& cfg,
                                                          PipelineTrace& trace,
                                                          std::optional<double> d) {
  const int n = g.vertex_count();
  if (n == 0 || g.edge_count() == 0) return Failure(FailureKind::NoUnits, "graph has no edges");
  const double dv = d ? *d : static_cast<double>(degree_stats(g).min_degree);
  if (!(dv > 0)) return Failure(FailureKind::NoUnits, "minimum degree is zero");
  const ResolvedConfig rc = derive_config(n, dv, cfg);
  trace.config = rc;
  if (rc.mode == RunMode::Paper) {
    if (rc.unit.h0 < 1)
      return Failure(FailureKind::InsufficientDegree, "c'kappa < 1: no hubs per unit at this scale");
    if (rc.hub_first_layer > n)
      return Failure(FailureKind::InsufficientDegree,
                     "first-layer size m^4 = " + std::to_string(rc.hub_first_layer) + " exceeds n");
    if (rc.D < 1) return Failure(FailureKind::InsufficientDegree, "adjuster end size below one");
  }

  std::vector<Unit> units;
  VertexSet taken;
  while (rc.unit_count == 0 || static_cast<long long>(units.size()) < rc.unit_count) {
    if (rc.unit_count == 0 && 2 * taken.size() >= static_cast<std::size_t>(n)) break;
    auto u = build_unit(g, taken, rc.unit);
    if (!u) break;
    taken.insert_all(u->vertices());
    units.push_back(std::move(u).value());
  }
  trace.units = units;
  trace.note("units", "built " + std::to_string(units.size()) + " units");
  if (units.size() < 2) return Failure(FailureKind::NoUnits, "fewer than two units fit");

  const auto coloring = two_coloring(g);
  std::vector<int> candidates;
  if (coloring) {
    int count[2] = {0, 0};
    for (const Unit& u : units) ++count[(*coloring)[u.core]];
    const int side = count[0] == count[1] ? (*coloring)[units[0].core] : (count[0] > count[1] ? 0 : 1);
    for (std::size_t i = 0; i < units.size(); ++i)
      if ((*coloring)[units[i].core] == side) candidates.push_back(static_cast<int>(i));
    trace.note("units", "bipartite host: " + std::to_string(candidates.size()) + " cores on one side");
  } else {
    for (std::size_t i = 0; i < units.size(); ++i) candidates.push_back(static_cast<int>(i));
  }

  Linker linker(g, units, rc, coloring.has_value(), cfg.exhaustive_cap + 4);

  std::vector<long long> ells;
  if (cfg.ell_target > 0) {
    ells = {cfg.ell_target};
  } else if (rc.ell > 0) {
    ells = {rc.ell};
  } else {
    const Attempt probe = run_greedy(linker, candidates, 0, cfg.k_target);
    int longest = 0;
    for (const Link& l : probe.links) longest = std::max(longest, l.path.length());
    trace.note("ell", "probe linked " + std::to_string(probe.accepted.size()) + " units, longest " +
                          std::to_string(longest));
    if (probe.accepted.size() < 2) return Failure(FailureKind::StageStalled, "probe linked fewer than two units");
    const long long base = longest + (longest % 2);
    ells = {base, base + 2, base + 4, base + 6, base + 8};
  }

  std::optional<Attempt> best;
  long long best_ell = 0;
  for (long long ell : ells) {
    Attempt at = run_greedy(linker, candidates, ell, cfg.k_target);
    trace.note("connect", "ell " + std::to_string(ell) + ": accepted units " + join_ints(at.accepted));
    const bool better = !best || at.accepted.size() > best->accepted.size() ||
                        (at.accepted.size() == best->accepted.size() && at.paper > best->paper);
    if (better) {
      best = std::move(at);
      best_ell = ell;
    }
    if (cfg.k_target > 0 && static_cast<int>(best->accepted.size()) >= cfg.k_target) break;
  }

  trace.connections_paper = best->paper;
  trace.connections_fallback = best->fallback;
  trace.connections_failed = best->failed;
  trace.parity_checks = best->parity_checks;
  trace.adjusters.clear();
  trace.adjusters_built = best->built;
  for (const Link& l : best->links)
    if (l.adjuster) trace.adjusters.push_back(*l.adjuster);
  if (best->fallback > 0)
    trace.note("connect", std::to_string(best->fallback) + " connections used the exhaustive fallback");
  for (const auto& [why, count] : best->misses)
    trace.note("connect", "adjuster route skipped " + std::to_string(count) + "x: " + why);

  std::vector<Vertex> usage_list;
  for (const Link& l : best->links)
    for (std::size_t i = 1; i + 1 < l.path.vertices.size(); ++i)
      if (!linker.in_w(l.path.vertices[i])) usage_list.push_back(l.path.vertices[i]);
  std::sort(usage_list.begin(), usage_list.end());
  usage_list.erase(std::unique(usage_list.begin(), usage_list.end()), usage_list.end());
  const UnitClassification cls = classify_units(units, VertexSet(std::move(usage_list)), rc.bad_threshold);
  std::vector<char> good(units.size(), 0);
  for (int i : cls.good) good[i] = 1;
  std::vector<int> kept;
  for (int u : best->accepted)
    if (good[u]) kept.push_back(u);
  trace.bad_units = static_cast<int>(best->accepted.size() - kept.size());

  if (kept.size() < 2) return Failure(FailureKind::StageStalled, "fewer than two good linked units");
  if (cfg.k_target > 0 && static_cast<int>(kept.size()) < cfg.k_target)
    return Failure(FailureKind::StageStalled,
                   "linked " + std::to_string(kept.size()) + " units, target " + std::to_string(cfg.k_target));

  SubdivisionCertificate cert;
  cert.ell = static_cast<int>(best_ell);
  std::vector<char> keep(units.size(), 0);
  for (int u : kept) {
    keep[u] = 1;
    cert.branch.push_back(units[u].core);
  }
  for (const Link& l : best->links)
    if (keep[l.a] && keep[l.b]) cert.paths.push_back({units[l.a].core, units[l.b].core, l.path});
  cert.canonicalize();
  const ValidationReport rep = verify_subdivision(g, cert);
  if (!rep.passed()) return Failure(FailureKind::ValidationFailed, rep.failed_ids());
  trace.note("certificate", "k = " + std::to_string(cert.k()) + ", ell = " + std::to_string(cert.ell));
  return cert;
}

namespace {

SubdivisionCertificate lift_certificate(const Subgraph& h, const SubdivisionCertificate& c) {
  SubdivisionCertificate out;
  out.ell = c.ell;
  for (Vertex b : c.branch) out.branch.push_back(h.lift(b));
  for (const PairPath& p : c.paths) out.paths.push_back({h.lift(p.u), h.lift(p.v), h.lift(p.path)});
  out.canonicalize();
  return out;
}

std::vector<Vertex> lift_ids(const Subgraph& h, std::vector<Vertex> vs) {
  for (Vertex& v : vs) v = h.lift(v);
  return vs;
}

Hub lift_hub(const Subgraph& h, const Hub& x) {
  Hub out;
  out.center = h.lift(x.center);
  out.first_layer = lift_ids(h, x.first_layer);
  for (const auto& l : x.second_layers) out.second_layers.push_back(lift_ids(h, l));
  return out;
}

Unit lift_unit(const Subgraph& h, const Unit& u) {
  Unit out;
  out.core = h.lift(u.core);
  out.params = u.params;
  for (const Hub& x : u.hubs) out.hubs.push_back(lift_hub(h, x));
  for (const Path& p : u.spokes) out.spokes.push_back(h.lift(p));
  return out;
}

Expansion lift_expansion(const Subgraph& h, const Expansion& f) {
  return Expansion{h.lift(f.anchor), h.lift(f.vertices), f.radius};
}

Adjuster lift_adjuster(const Subgraph& h, const Adjuster& a) {
  Adjuster out = a;
  out.core1 = h.lift(a.core1);
  out.core2 = h.lift(a.core2);
  out.end1 = lift_expansion(h, a.end1);
  out.end2 = lift_expansion(h, a.end2);
  out.center = h.lift(a.center);
  for (Path& p : out.length_witnesses) p = h.lift(p);
  return out;
}

// Moves every gadget recorded in the trace from H ids to host ids.
void lift_trace(const Subgraph& h, PipelineTrace& t) {
  for (Unit& u : t.units) u = lift_unit(h, u);
  for (Adjuster& a : t.adjusters) a = lift_adjuster(h, a);
  for (Adjuster& a : t.adjusters_built) a = lift_adjuster(h, a);
}

// Largest TK_k^(2) found by ascending from k0; empty when k0 already fails.
std::optional<SubdivisionCertificate> grow_tk2(const Graph& h, int k0, std::uint64_t seed) {
  std::optional<SubdivisionCertificate> best;
  for (int k = std::max(2, k0);; ++k) {
    auto r = dense_tk2(h, k, seed, kGrowBudget);
    if (!r) break;
    best = *r;
  }
  return best;
}

std::optional<SubdivisionCertificate> small_exact(const Graph& g, const RunConfig& cfg) {
  if (cfg.k_target > 0 && cfg.ell_target > 0)
    return brute_force_subdivision(g, cfg.k_target, cfg.ell_target).certificate;
  if (cfg.k_target > 0) {
    for (int ell = 1; ell < g.vertex_count(); ++ell) {
      auto r = brute_force_subdivision(g, cfg.k_target, ell);
      if (r.certificate) return r.certificate;
    }
    return std::nullopt;
  }
  if (cfg.ell_target > 0) return max_k_for_ell(g, cfg.ell_target).certificate;
  return best_balanced_clique(g).certificate;
}

}  // namespace

PipelineResult top_level(const Graph& g, const RunConfig& cfg) {
  PipelineResult out;
  PipelineTrace& trace = out.trace;
  const int n = g.vertex_count();
  auto fail = [&](Failure f) {
    out.kind = PipelineKind::Failed;
    out.failure = std::move(f);
    return out;
  };
  auto accept = [&](PipelineKind kind, SubdivisionCertificate c) {
    const ValidationReport rep = verify_subdivision(g, c);
    if (!rep.passed()) throw std::logic_error("lifted certificate failed: " + rep.failed_ids());
    out.kind = kind;
    out.certificate = std::move(c);
    return out;
  };
  if (n == 0) return fail(Failure(FailureKind::NoUnits, "graph has no vertices"));
  if (g.edge_count() == 0) {
    out.kind = PipelineKind::SparseRegime;
    trace.note("regime", "no edges");
    return out;
  }

  const Rational d1 = average_degree(g) / 8;
  const double d1v = boost::rational_cast<double>(d1);
  const double k_profile =
      cfg.kappa_rule == KappaRule::Sqrt ? cfg.epsilon2 * d1v : cfg.epsilon2 * d1v * d1v;
  const ExpansionProfile profile(cfg.epsilon1, k_profile);
  BipartiteExpander be = extract_bipartite_expander(g, d1, profile, cfg.seed, cfg.exhaustive_cap);
  const Graph& h = be.h.graph;
  const int hn = h.vertex_count();
  trace.note("expander", "H has " + std::to_string(hn) + " vertices and " +
                             std::to_string(h.edge_count()) + " edges (" + to_string(be.verdict.status) + ")");

  if (cfg.kappa_rule == KappaRule::Linear) {
    const ExpansionProfile t = kst_free_profile_transform(profile, d1v, 2, 2);
    trace.kst_transform_applied = true;
    trace.note("kst", "profile (" + std::to_string(profile.epsilon1) + ", " + std::to_string(profile.k) +
                          ") -> (" + std::to_string(t.epsilon1) + ", " + std::to_string(t.k) + ")");
    if (!be.left.empty() && !be.right.empty()) {
      const double observed = static_cast<double>(h.edge_count()) / static_cast<double>(be.left.size());
      const double bound = kst_degree_bound(static_cast<long long>(be.left.size()),
                                            static_cast<long long>(be.right.size()), 2, 2);
      trace.kst_observed = observed;
      trace.kst_bound = bound;
      if (observed > bound) trace.note("kst", "observed degree exceeds the bound: host contains a C4");
    }
  }

  const int min_h = hn > 0 ? degree_stats(h).min_degree : 0;
  const double dvar = cfg.mode == RunMode::Paper ? d1v : static_cast<double>(min_h);
  if (!(dvar > 0)) return fail(Failure(FailureKind::NoUnits, "expander has minimum degree zero"));
  const ResolvedConfig rc = derive_config(std::max(1, hn), dvar, cfg);
  trace.config = rc;
  const double threshold = std::pow(std::log(static_cast<double>(n)), rc.s);
  const bool dense = n > 1 && dvar >= threshold;
  trace.note("regime", std::string(dense ? "dense" : "sparse") + ": d = " + std::to_string(dvar) +
                           ", ln^s n = " + std::to_string(threshold));

  if (!dense) {
    out.kind = PipelineKind::SparseRegime;
    if (n <= 12) {
      if (auto c = small_exact(g, cfg)) {
        trace.note("regime", "exhaustive search on the small input");
        out.certificate = *c;
      }
    }
    return out;
  }

  const bool want_tk2 = cfg.ell_target == 0 || cfg.ell_target == 2;
  const bool small_order = static_cast<double>(hn) < rc.K * rc.kappa * rc.kappa;
  auto dense_attempt = [&]() -> std::optional<SubdivisionCertificate> {
    if (!want_tk2) return std::nullopt;
    if (cfg.k_target > 0) {
      auto r = dense_tk2(h, cfg.k_target, cfg.seed);
      if (r) return *r;
      return std::nullopt;
    }
    return grow_tk2(h, 2, cfg.seed);
  };

  if (cfg.kappa_rule == KappaRule::Sqrt) {
    if (small_order || want_tk2) {
      const int k0 = cfg.k_target > 0 ? cfg.k_target : (small_order ? 2 : static_cast<int>(std::ceil(rc.kappa)));
      std::optional<SubdivisionCertificate> c;
      if (want_tk2) {
        if (cfg.k_target > 0) {
          if (auto r = dense_tk2(h, k0, cfg.seed)) c = *r;
        } else {
          c = grow_tk2(h, k0, cfg.seed);
        }
      }
      if (c) {
        trace.note("dense", "TK^(2) with k = " + std::to_string(c->k()));
        return accept(PipelineKind::DenseFallback, lift_certificate(be.h, *c));
      }
      if (small_order)
        return fail(Failure(FailureKind::NoEmbedding, "small-order branch found no TK^(2)"));
    }
  }

  auto found = find_balanced_subdivision(h, cfg, trace, dvar);
  lift_trace(be.h, trace);
  if (found) return accept(PipelineKind::Subdivision, lift_certificate(be.h, *found));
  trace.note("units", std::string("pipeline failed: ") + to_string(found.failure().kind) + " " +
                          found.failure().detail);
  if (cfg.kappa_rule == KappaRule::Linear && small_order) {
    if (auto c = dense_attempt()) {
      trace.note("dense", "TK^(2) with k = " + std::to_string(c->k()));
      return accept(PipelineKind::DenseFallback, lift_certificate(be.h, *c));
    }
  }
  return fail(found.failure());
}

}  // namespace tksub
