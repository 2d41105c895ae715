#include "tksub/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace tksub {

namespace {

std::string list(const std::vector<Vertex>& vs) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "," : "") << vs[i];
  out << "]";
  return out.str();
}

bool ids_valid(const Graph& g, const std::vector<Vertex>& vs) {
  return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return g.valid(v); });
}

// Shortest path from `from` to `to` inside G[allowed], or empty.
Path path_inside(const Graph& g, const VertexSet& allowed, Vertex from, Vertex to) {
  const int n = g.vertex_count();
  const std::vector<char> in = mask_of(n, allowed);
  std::vector<Vertex> parent(n, -2);
  std::vector<Vertex> queue{from};
  parent[from] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    if (x == to) break;
    for (Vertex y : g.neighbors(x)) {
      if (!in[y] || parent[y] != -2) continue;
      parent[y] = x;
      queue.push_back(y);
    }
  }
  if (parent[to] == -2) return {};
  Path p;
  for (Vertex v = to; v != -1; v = parent[v]) p.vertices.push_back(v);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

// BFS depths from the anchor inside G[f], -1 where unreachable.
std::vector<int> depths_inside(const Graph& g, const VertexSet& f, Vertex anchor) {
  const int n = g.vertex_count();
  const std::vector<char> in = mask_of(n, f);
  std::vector<int> depth(n, -1);
  if (!in[anchor]) return depth;
  std::vector<Vertex> queue{anchor};
  depth[anchor] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (!in[y] || depth[y] != -1) continue;
      depth[y] = depth[x] + 1;
      queue.push_back(y);
    }
  }
  return depth;
}

void claim_all(std::vector<char>& mask, const VertexSet& s) {
  for (Vertex v : s) mask[v] = 1;
}

}  // namespace

// Records --------------------------------------------------------------------

VertexSet Hub::ball() const {
  VertexSet s(first_layer);
  s.insert(center);
  return s;
}

VertexSet Hub::exterior() const {
  std::vector<Vertex> all;
  for (const auto& layer : second_layers) all.insert(all.end(), layer.begin(), layer.end());
  return VertexSet(std::move(all));
}

VertexSet Hub::vertices() const { return ball().unite(exterior()); }

VertexSet Unit::exterior() const {
  VertexSet s;
  for (const Hub& h : hubs) s.insert_all(h.exterior());
  return s;
}

VertexSet Unit::vertices() const {
  VertexSet s{core};
  for (const Hub& h : hubs) s.insert_all(h.vertices());
  for (const Path& p : spokes) s.insert_all(VertexSet(p.vertices));
  return s;
}

VertexSet Unit::interior() const { return vertices().minus(exterior()); }

VertexSet Adjuster::vertices() const { return center.unite(end1.vertices).unite(end2.vertices); }

Adjuster Adjuster::reversed() const {
  Adjuster r = *this;
  std::swap(r.core1, r.core2);
  std::swap(r.end1, r.end2);
  for (Path& p : r.length_witnesses) p = p.reversed();
  return r;
}

// Hubs -----------------------------------------------------------------------

std::optional<Hub> grow_hub_at(const Graph& g, const std::vector<char>& blocked, Vertex u, int h1,
                               int h2) {
  if (blocked[u]) return std::nullopt;
  std::vector<char> taken = blocked;
  taken[u] = 1;
  auto spare = [&](Vertex z) {
    int c = 0;
    for (Vertex y : g.neighbors(z)) c += !taken[y];
    return c;
  };

  std::vector<std::pair<int, Vertex>> candidates;
  for (Vertex z : g.neighbors(u)) {
    if (taken[z]) continue;
    const int c = spare(z);
    if (c >= h2) candidates.emplace_back(-c, z);
  }
  if (static_cast<int>(candidates.size()) < h1) return std::nullopt;
  std::sort(candidates.begin(), candidates.end());
  std::vector<Vertex> first;
  for (int i = 0; i < h1; ++i) first.push_back(candidates[i].second);
  std::sort(first.begin(), first.end());
  for (Vertex z : first) taken[z] = 1;

  // Second layers, most constrained first layer vertex first.
  std::vector<std::vector<Vertex>> second(first.size());
  std::vector<char> done(first.size(), 0);
  for (std::size_t round = 0; round < first.size(); ++round) {
    std::size_t pick = first.size();
    int best = 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (done[i]) continue;
      const int c = spare(first[i]);
      if (pick == first.size() || c < best) {
        pick = i;
        best = c;
      }
    }
    if (best < h2) return std::nullopt;
    for (Vertex y : g.neighbors(first[pick])) {
      if (static_cast<int>(second[pick].size()) == h2) break;
      if (taken[y]) continue;
      taken[y] = 1;
      second[pick].push_back(y);
    }
    done[pick] = 1;
  }
  return Hub{u, std::move(first), std::move(second)};
}

namespace {

// Hub whose second layers are the h2 smallest neighbours outside B1(u); in a
// C4-free host these are automatically disjoint.
std::optional<Hub> grow_c4_hub_at(const Graph& g, Vertex u, int h1, int h2) {
  Hub hub{u, {}, {}};
  for (Vertex z : g.neighbors(u)) {
    if (static_cast<int>(hub.first_layer.size()) == h1) break;
    if (g.degree(z) - 1 >= h2) hub.first_layer.push_back(z);
  }
  if (static_cast<int>(hub.first_layer.size()) < h1) return std::nullopt;
  const VertexSet b1 = hub.ball();
  for (Vertex z : hub.first_layer) {
    std::vector<Vertex> layer;
    for (Vertex y : g.neighbors(z)) {
      if (static_cast<int>(layer.size()) == h2) break;
      if (!b1.contains(y)) layer.push_back(y);
    }
    if (static_cast<int>(layer.size()) < h2) return std::nullopt;
    hub.second_layers.push_back(std::move(layer));
  }
  return hub;
}

Hub lift_hub(const Subgraph& s, const Hub& h) {
  Hub out{s.lift(h.center), {}, {}};
  for (Vertex z : h.first_layer) out.first_layer.push_back(s.lift(z));
  for (const auto& layer : h.second_layers) {
    std::vector<Vertex> l;
    for (Vertex y : layer) l.push_back(s.lift(y));
    out.second_layers.push_back(std::move(l));
  }
  return out;
}

}  // namespace

Outcome<Hub> build_hub(const Graph& g, const VertexSet& avoid, int h1, int h2, bool c4_mode) {
  if (h1 < 1 || h2 < 1) throw InvalidArgument("build_hub: h1 and h2 must be at least 1");
  require_vertices(g, avoid);
  const Subgraph rest = delete_vertices(g, avoid);
  if (rest.graph.vertex_count() == 0) return Failure(FailureKind::InsufficientDegree, "no vertices left");
  std::vector<int> cores = core_numbers(rest.graph);
  std::vector<int> levels(cores.begin(), cores.end());
  std::sort(levels.rbegin(), levels.rend());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  for (int t : levels) {
    if (t < 1) break;
    const Subgraph core = rest.compose(min_degree_peel(rest.graph, t));
    const std::vector<char> blocked(core.graph.vertex_count(), 0);
    for (Vertex u = 0; u < core.graph.vertex_count(); ++u) {
      std::optional<Hub> hub = c4_mode ? grow_c4_hub_at(core.graph, u, h1, h2)
                                       : grow_hub_at(core.graph, blocked, u, h1, h2);
      if (!hub) continue;
      Hub lifted = lift_hub(core, *hub);
      const ValidationReport report = validate_hub(g, lifted);
      if (!report.passed()) {
        if (c4_mode)
          return Failure(FailureKind::ValidationFailed,
                         "second layers overlap at center " + std::to_string(lifted.center) +
                             "; the host has a 4-cycle there");
        continue;
      }
      return lifted;
    }
  }
  return Failure(FailureKind::InsufficientDegree, "no vertex supports the greedy hub build");
}

ValidationReport validate_hub(const Graph& g, const Hub& hub) {
  ValidationReport r;
  std::vector<Vertex> all{hub.center};
  all.insert(all.end(), hub.first_layer.begin(), hub.first_layer.end());
  for (const auto& l : hub.second_layers) all.insert(all.end(), l.begin(), l.end());
  r.check("hub-ids-valid", ids_valid(g, all), list(all));
  if (!r.passed()) return r;

  r.check("hub-first-layer-nonempty", !hub.first_layer.empty());
  bool adj = true;
  std::string bad;
  for (Vertex z : hub.first_layer)
    if (!g.has_edge(hub.center, z)) {
      adj = false;
      bad = std::to_string(z);
    }
  r.check("hub-first-layer-adjacent", adj, bad);
  r.check("hub-layers-aligned", hub.second_layers.size() == hub.first_layer.size());
  if (hub.second_layers.size() != hub.first_layer.size()) return r;

  bool second_adj = true;
  bool uniform = true;
  for (std::size_t i = 0; i < hub.first_layer.size(); ++i) {
    if (hub.second_layers[i].size() != hub.second_layers.front().size() || hub.second_layers[i].empty())
      uniform = false;
    for (Vertex y : hub.second_layers[i])
      if (!g.has_edge(hub.first_layer[i], y) || y == hub.center) {
        second_adj = false;
        bad = std::to_string(hub.first_layer[i]) + "-" + std::to_string(y);
      }
  }
  r.check("hub-second-layer-adjacent", second_adj, bad);
  r.check("hub-second-layer-uniform", uniform);

  std::vector<Vertex> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  r.check("hub-layers-disjoint", dup == sorted.end(),
          dup == sorted.end() ? "" : "repeated vertex " + std::to_string(*dup));
  return r;
}

// Units ----------------------------------------------------------------------

namespace {

struct PoolHub {
  Hub hub;
  bool slack = false;  // first layer holds one spare vertex
};

struct Spoke {
  int hub = -1;
  Path path;
  Vertex through_first_layer = -1;
};

// Greedily attaches up to h0 hubs to w by short paths that are disjoint
// except at w. Returns the spokes found.
std::vector<Spoke> attach_hubs(const Graph& g, const std::vector<char>& claimed,
                               const std::vector<PoolHub>& pool, const std::vector<int>& hub_of,
                               Vertex w, const UnitParams& prm) {
  const int n = g.vertex_count();
  std::vector<char> used = claimed;
  used[w] = 1;
  std::vector<char> taken(pool.size(), 0);
  std::vector<Spoke> spokes;
  std::vector<int> dist(n);
  std::vector<Vertex> parent(n);

  while (static_cast<int>(spokes.size()) < prm.h0) {
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<Vertex> layer{w};
    dist[w] = 0;
    parent[w] = -1;
    for (int depth = 1; depth <= prm.h3 - 1 && !layer.empty(); ++depth) {
      std::vector<Vertex> next;
      for (Vertex x : layer)
        for (Vertex y : g.neighbors(x)) {
          if (used[y] || dist[y] != -1) continue;
          dist[y] = depth;
          parent[y] = x;
          next.push_back(y);
        }
      std::sort(next.begin(), next.end());
      layer = std::move(next);
    }
    auto reach = [&](Vertex x) { return x == w ? 0 : dist[x]; };

    int best_len = prm.h3 + 1;
    int best_hub = -1;
    Vertex best_last = -1;
    Vertex best_first_layer = -1;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (taken[j]) continue;
      const Hub& hub = pool[j].hub;
      const Vertex u = hub.center;
      for (Vertex x : g.neighbors(u)) {
        if (reach(x) >= 0 && (x == w || !used[x])) {
          const int len = reach(x) + 1;
          if (len < best_len || (len == best_len && u < pool[best_hub].hub.center)) {
            best_len = len;
            best_hub = static_cast<int>(j);
            best_last = x;
            best_first_layer = -1;
          }
        } else if (pool[j].slack && hub_of[x] == static_cast<int>(j) &&
                   std::binary_search(hub.first_layer.begin(), hub.first_layer.end(), x)) {
          for (Vertex y : g.neighbors(x)) {
            if (reach(y) < 0 || (y != w && used[y])) continue;
            const int len = reach(y) + 2;
            if (len > prm.h3) continue;
            if (len < best_len || (len == best_len && u < pool[best_hub].hub.center)) {
              best_len = len;
              best_hub = static_cast<int>(j);
              best_last = y;
              best_first_layer = x;
            }
          }
        }
      }
    }
    if (best_hub < 0) break;

    Spoke s;
    s.hub = best_hub;
    s.through_first_layer = best_first_layer;
    for (Vertex v = best_last; v != -1; v = parent[v]) s.path.vertices.push_back(v);
    std::reverse(s.path.vertices.begin(), s.path.vertices.end());
    if (best_first_layer >= 0) s.path.vertices.push_back(best_first_layer);
    s.path.vertices.push_back(pool[best_hub].hub.center);
    for (std::size_t i = 1; i + 1 < s.path.vertices.size(); ++i) used[s.path.vertices[i]] = 1;
    taken[best_hub] = 1;
    spokes.push_back(std::move(s));
  }
  return spokes;
}

Hub carve(const PoolHub& ph, Vertex spent, int h1) {
  Hub h{ph.hub.center, {}, {}};
  for (std::size_t i = 0; i < ph.hub.first_layer.size(); ++i) {
    if (ph.hub.first_layer[i] == spent) continue;
    if (static_cast<int>(h.first_layer.size()) == h1) break;
    h.first_layer.push_back(ph.hub.first_layer[i]);
    h.second_layers.push_back(ph.hub.second_layers[i]);
  }
  return h;
}

}  // namespace

Outcome<Unit> build_unit(const Graph& g, const VertexSet& avoid, const UnitParams& prm) {
  if (prm.h0 < 1 || prm.h1 < 1 || prm.h2 < 1 || prm.h3 < 1)
    throw InvalidArgument("build_unit: parameters must be at least 1");
  require_vertices(g, avoid);
  const int n = g.vertex_count();
  std::vector<char> claimed = mask_of(n, avoid);

  std::vector<int> free_degree(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v)) free_degree[v] += !claimed[u];
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return free_degree[a] > free_degree[b]; });

  std::vector<PoolHub> pool;
  std::vector<int> hub_of(n, -1);
  std::size_t cursor = 0;
  auto place_next = [&]() {
    while (cursor < order.size()) {
      const Vertex u = order[cursor++];
      if (claimed[u]) continue;
      PoolHub ph;
      if (auto h = grow_hub_at(g, claimed, u, prm.h1 + 1, prm.h2)) {
        ph = {*h, true};
      } else if (auto h2 = grow_hub_at(g, claimed, u, prm.h1, prm.h2)) {
        ph = {*h2, false};
      } else {
        continue;
      }
      for (Vertex v : ph.hub.vertices()) {
        claimed[v] = 1;
        hub_of[v] = static_cast<int>(pool.size());
      }
      pool.push_back(std::move(ph));
      return true;
    }
    return false;
  };

  std::vector<Path> best_partial;
  while (true) {
    const bool placed = place_next();
    if (static_cast<int>(pool.size()) >= prm.h0) {
      for (Vertex w : order) {
        if (claimed[w]) continue;
        std::vector<Spoke> spokes = attach_hubs(g, claimed, pool, hub_of, w, prm);
        if (static_cast<int>(spokes.size()) < prm.h0) {
          if (spokes.size() > best_partial.size()) {
            best_partial.clear();
            for (const Spoke& s : spokes) best_partial.push_back(s.path);
          }
          continue;
        }
        Unit unit;
        unit.core = w;
        unit.params = prm;
        for (const Spoke& s : spokes) {
          unit.hubs.push_back(carve(pool[s.hub], s.through_first_layer, prm.h1));
          unit.spokes.push_back(s.path);
        }
        const ValidationReport report = validate_unit(g, unit);
        if (!report.passed())
          return Failure(FailureKind::CarveFailed, "carved unit fails " + report.failed_ids(),
                         unit.spokes);
        return unit;
      }
    }
    if (!placed) break;
  }
  if (static_cast<int>(pool.size()) < prm.h0)
    return Failure(FailureKind::HubPoolExhausted,
                   "only " + std::to_string(pool.size()) + " disjoint hubs fit, need " +
                       std::to_string(prm.h0));
  return Failure(FailureKind::ConnectionStalled,
                 "no core reached " + std::to_string(prm.h0) + " hubs", best_partial);
}

ValidationReport validate_unit(const Graph& g, const Unit& unit) {
  ValidationReport r;
  std::vector<Vertex> all{unit.core};
  for (const Hub& h : unit.hubs) {
    const VertexSet hv = h.vertices();
    all.insert(all.end(), hv.begin(), hv.end());
    all.push_back(h.center);
  }
  for (const Path& p : unit.spokes) all.insert(all.end(), p.vertices.begin(), p.vertices.end());
  r.check("unit-ids-valid", ids_valid(g, all), list(all));
  if (!r.passed()) return r;

  const UnitParams& prm = unit.params;
  r.check("unit-hub-count",
          static_cast<int>(unit.hubs.size()) == prm.h0 && unit.spokes.size() == unit.hubs.size(),
          std::to_string(unit.hubs.size()) + " hubs, " + std::to_string(unit.spokes.size()) + " spokes");
  if (unit.spokes.size() != unit.hubs.size()) return r;

  bool shape = true;
  for (std::size_t j = 0; j < unit.hubs.size(); ++j) {
    const Hub& h = unit.hubs[j];
    r.absorb("hub[" + std::to_string(j) + "].", validate_hub(g, h));
    if (static_cast<int>(h.first_layer.size()) != prm.h1) shape = false;
    for (const auto& l : h.second_layers)
      if (static_cast<int>(l.size()) != prm.h2) shape = false;
  }
  r.check("unit-hub-shape", shape);

  std::vector<int> owner(g.vertex_count(), -1);
  bool hubs_disjoint = true;
  for (std::size_t j = 0; j < unit.hubs.size(); ++j)
    for (Vertex v : unit.hubs[j].vertices()) {
      if (owner[v] != -1 || v == unit.core) hubs_disjoint = false;
      owner[v] = static_cast<int>(j);
    }
  r.check("unit-hubs-disjoint", hubs_disjoint);

  bool endpoints = true;
  bool simple = true;
  bool length_ok = true;
  bool disjoint = true;
  std::string witness;
  std::vector<char> seen(g.vertex_count(), 0);
  for (std::size_t j = 0; j < unit.spokes.size(); ++j) {
    const Path& p = unit.spokes[j];
    if (p.vertices.size() < 2 || p.front() != unit.core || p.back() != unit.hubs[j].center)
      endpoints = false;
    if (!is_simple_path(g, p)) simple = false;
    if (p.length() < 1 || p.length() > prm.h3) {
      length_ok = false;
      witness = "spoke " + std::to_string(j) + " has length " + std::to_string(p.length());
    }
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
      const Vertex v = p.vertices[i];
      if (seen[v] || owner[v] != -1 || v == unit.core) disjoint = false;
      seen[v] = 1;
    }
  }
  r.check("unit-spoke-endpoints", endpoints);
  r.check("unit-spoke-simple", simple);
  r.check("unit-spoke-length", length_ok, witness);
  r.check("unit-spokes-disjoint", disjoint);
  return r;
}

// Expansions -----------------------------------------------------------------

ValidationReport validate_expansion(const Graph& g, const Expansion& f) {
  ValidationReport r;
  std::vector<Vertex> all(f.vertices.begin(), f.vertices.end());
  all.push_back(f.anchor);
  r.check("expansion-ids-valid", ids_valid(g, all), list(all));
  if (!r.passed()) return r;
  r.check("expansion-anchor", f.vertices.contains(f.anchor));
  const std::vector<int> depth = depths_inside(g, f.vertices, f.anchor);
  bool within = true;
  std::string far;
  for (Vertex v : f.vertices)
    if (depth[v] < 0 || depth[v] > f.radius) {
      within = false;
      far = std::to_string(v);
    }
  r.check("expansion-radius", within, far);
  return r;
}

Expansion trim_expansion(const Graph& g, const Expansion& f, int d_target) {
  if (d_target < 1 || d_target > static_cast<int>(f.size()))
    throw InvalidArgument("trim_expansion: target size out of range");
  const std::vector<char> in = mask_of(g.vertex_count(), f.vertices);
  std::vector<Vertex> kept{f.anchor};
  std::vector<char> seen(g.vertex_count(), 0);
  seen[f.anchor] = 1;
  std::vector<Vertex> layer{f.anchor};
  int radius = 0;
  for (int depth = 1; static_cast<int>(kept.size()) < d_target && !layer.empty(); ++depth) {
    std::vector<Vertex> next;
    for (Vertex x : layer)
      for (Vertex y : g.neighbors(x))
        if (in[y] && !seen[y]) {
          seen[y] = 1;
          next.push_back(y);
        }
    std::sort(next.begin(), next.end());
    for (Vertex y : next) {
      if (static_cast<int>(kept.size()) == d_target) break;
      kept.push_back(y);
      radius = depth;
    }
    layer = std::move(next);
  }
  if (static_cast<int>(kept.size()) < d_target)
    throw InvalidArgument("trim_expansion: expansion is not connected around its anchor");
  return Expansion{f.anchor, VertexSet(std::move(kept)), radius};
}

// Cycles ---------------------------------------------------------------------

namespace {

// Rotation starting at the smallest vertex, direction with the smaller
// second vertex.
std::vector<Vertex> canonical_cycle(std::vector<Vertex> c) {
  const auto it = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), it, c.end());
  if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

// For every root, the shortest cycles through it found by BFS (of the
// requested parity if `even_only`), canonicalized and deduplicated, sorted
// by (length, vertex list).
std::vector<std::vector<Vertex>> cycle_candidates(const Graph& g, const std::vector<char>& blocked,
                                                  bool even_only) {
  const int n = g.vertex_count();
  std::vector<std::vector<Vertex>> found;
  if (even_only) {
    // BFS trees miss 4-cycles whose chords close triangles first (K_n), so
    // look for them directly: two 2-paths u-x-y and u-x'-y.
    std::vector<Vertex> via(n, -1);
    for (Vertex u = 0; u < n; ++u) {
      if (blocked[u]) continue;
      std::fill(via.begin(), via.end(), -1);
      bool hit = false;
      for (Vertex x : g.neighbors(u)) {
        if (blocked[x] || hit) continue;
        for (Vertex y : g.neighbors(x)) {
          if (blocked[y] || y == u) continue;
          if (via[y] >= 0 && via[y] != x) {
            found.push_back(canonical_cycle({u, via[y], y, x}));
            hit = true;
            break;
          }
          via[y] = x;
        }
      }
    }
    if (!found.empty()) {
      std::sort(found.begin(), found.end());
      found.erase(std::unique(found.begin(), found.end()), found.end());
      return found;
    }
  }
  std::vector<int> dist(n);
  std::vector<Vertex> parent(n);
  std::vector<int> mark(n, 0);
  int stamp = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (blocked[root]) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = -1;
    std::vector<Vertex> queue{root};
    int best = -1;
    std::vector<std::vector<Vertex>> mine;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      if (best >= 0 && 2 * dist[x] > best) break;
      for (Vertex y : g.neighbors(x)) {
        if (blocked[y]) continue;
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
          continue;
        }
        if (parent[x] == y || parent[y] == x) continue;
        const int len = dist[x] + dist[y] + 1;
        if (even_only && len % 2 != 0) continue;
        if (best >= 0 && len > best) continue;
        std::vector<Vertex> px, py;
        for (Vertex v = x; v != -1; v = parent[v]) px.push_back(v);
        for (Vertex v = y; v != -1; v = parent[v]) py.push_back(v);
        ++stamp;
        for (std::size_t i = 0; i + 1 < px.size(); ++i) mark[px[i]] = stamp;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < py.size(); ++i)
          if (mark[py[i]] == stamp) ok = false;
        if (!ok) continue;
        std::vector<Vertex> cyc(px.rbegin(), px.rend());
        for (std::size_t i = 0; i + 1 < py.size(); ++i) cyc.push_back(py[i]);
        if (best < 0 || len < best) {
          best = len;
          mine.clear();
        }
        mine.push_back(canonical_cycle(std::move(cyc)));
      }
    }
    for (auto& c : mine) found.push_back(std::move(c));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace

Path shortest_cycle(const Graph& g) {
  const auto all = cycle_candidates(g, std::vector<char>(g.vertex_count(), 0), false);
  if (all.empty()) return {};
  Path c{all.front()};
  c.vertices.push_back(c.front());
  return c;
}

// Adjusters ------------------------------------------------------------------

namespace {

// Grows two disjoint BFS balls around a and b by alternating single-vertex
// claims until both reach size d.
std::optional<std::pair<Expansion, Expansion>> grow_ends(const Graph& g, std::vector<char> blocked,
                                                         Vertex a, Vertex b, int d, int cap) {
  struct Side {
    Vertex anchor;
    std::vector<Vertex> members;
    std::vector<int> depth;
    std::size_t head = 0;
    int radius = 0;
  };
  Side sides[2] = {{a, {a}, {0}}, {b, {b}, {0}}};
  blocked[a] = blocked[b] = 1;
  auto claim = [&](Side& s) {
    while (s.head < s.members.size()) {
      const Vertex x = s.members[s.head];
      const int dx = s.depth[s.head];
      if (dx < cap)
        for (Vertex y : g.neighbors(x))
          if (!blocked[y]) {
            blocked[y] = 1;
            s.members.push_back(y);
            s.depth.push_back(dx + 1);
            s.radius = std::max(s.radius, dx + 1);
            return true;
          }
      ++s.head;
    }
    return false;
  };
  while (static_cast<int>(sides[0].members.size()) < d || static_cast<int>(sides[1].members.size()) < d) {
    for (Side& s : sides) {
      if (static_cast<int>(s.members.size()) >= d) continue;
      if (!claim(s)) return std::nullopt;
    }
  }
  return std::make_pair(Expansion{a, VertexSet(sides[0].members), sides[0].radius},
                        Expansion{b, VertexSet(sides[1].members), sides[1].radius});
}

}  // namespace

Outcome<Adjuster> build_simple_adjuster(const Graph& g, const VertexSet& avoid, int d, int m,
                                        bool c4_mode) {
  if (d < 1 || m < 0) throw InvalidArgument("build_simple_adjuster: need D >= 1 and m >= 0");
  require_vertices(g, avoid);
  const std::vector<char> blocked = mask_of(g.vertex_count(), avoid);
  const auto cycles = cycle_candidates(g, blocked, true);
  if (cycles.empty()) {
    if (cycle_candidates(g, blocked, false).empty())
      return Failure(FailureKind::Acyclic, "no cycle avoids the forbidden set");
    return Failure(FailureKind::NoEvenCycle, "only odd cycles were found");
  }
  const int cap = c4_mode ? std::min(m, 2) : m;
  const std::size_t shortest = cycles.front().size();
  for (const auto& cyc : cycles) {
    if (cyc.size() != shortest) break;
    const int len = static_cast<int>(cyc.size());
    const int r = len / 2;
    std::vector<char> base = blocked;
    for (Vertex v : cyc) base[v] = 1;
    for (int i = 0; i < len; ++i) {
      const Vertex v1 = cyc[i];
      const Vertex v2 = cyc[(i + r - 1) % len];
      std::vector<char> mask = base;
      mask[v1] = mask[v2] = 0;
      auto ends = grow_ends(g, mask, v1, v2, d, cap);
      if (!ends) continue;
      Adjuster adj;
      adj.core1 = v1;
      adj.core2 = v2;
      adj.end1 = ends->first;
      adj.end2 = ends->second;
      std::vector<Vertex> center;
      for (Vertex v : cyc)
        if (v != v1 && v != v2) center.push_back(v);
      adj.center = VertexSet(std::move(center));
      adj.base_length = r - 1;
      adj.steps = 1;
      adj.radius_bound = m;
      Path short_arc, long_arc;
      for (int j = 0; j <= r - 1; ++j) short_arc.vertices.push_back(cyc[(i + j) % len]);
      for (int j = 0; j <= r + 1; ++j) long_arc.vertices.push_back(cyc[((i - j) % len + len) % len]);
      adj.length_witnesses = {short_arc, long_arc};
      const ValidationReport report = validate_adjuster(g, adj);
      if (!report.passed()) return Failure(FailureKind::ValidationFailed, report.failed_ids());
      return adj;
    }
  }
  return Failure(FailureKind::ExpansionCollision,
                 "no shortest even cycle leaves room for two disjoint ends of size " + std::to_string(d));
}

Outcome<Adjuster> link_adjusters(const Graph& g, const Adjuster& a, const Adjuster& b,
                                 const VertexSet& avoid) {
  if (a.steps < 1 || b.steps < 1) throw InvalidArgument("link_adjusters: adjusters need steps >= 1");
  require_vertices(g, avoid);
  const VertexSet va = a.vertices();
  const VertexSet vb = b.vertices();
  if (!va.disjoint_from(vb)) throw InvalidArgument("link_adjusters: adjusters overlap");
  if (!va.disjoint_from(avoid) || !vb.disjoint_from(avoid))
    throw InvalidArgument("link_adjusters: adjuster meets the avoid set");

  std::optional<Path> best;
  int best_ea = 0, best_eb = 0;
  for (int ea : {1, 2})
    for (int eb : {1, 2}) {
      std::vector<char> blocked = mask_of(g.vertex_count(), avoid);
      claim_all(blocked, a.center);
      claim_all(blocked, b.center);
      claim_all(blocked, a.end(3 - ea).vertices);
      claim_all(blocked, b.end(3 - eb).vertices);
      auto p = short_connect_masked(g, a.end(ea).vertices, b.end(eb).vertices, blocked,
                                    g.vertex_count());
      if (p && (!best || p->length() < best->length())) {
        best = p;
        best_ea = ea;
        best_eb = eb;
      }
    }
  if (!best) return Failure(FailureKind::Disconnected, "no path joins the ends of the two adjusters");

  const Adjuster left = best_ea == 2 ? a : a.reversed();
  const Adjuster right = best_eb == 1 ? b : b.reversed();
  const Path into = path_inside(g, left.end2.vertices, left.core2, best->front());
  const Path out = path_inside(g, right.end1.vertices, best->back(), right.core1);
  const Path q = into.joined(*best).joined(out);
  if (!is_simple_path(g, q)) return Failure(FailureKind::ValidationFailed, "linking path is not simple");

  Adjuster r;
  r.core1 = left.core1;
  r.core2 = right.core2;
  r.end1 = left.end1;
  r.end2 = right.end2;
  r.center = left.center.unite(right.center).unite(VertexSet(q.vertices));
  r.base_length = left.base_length + right.base_length + q.length();
  r.steps = left.steps + right.steps;
  r.radius_bound = std::max(left.radius_bound, right.radius_bound);
  for (int i = 0; i <= r.steps; ++i) {
    const int i1 = std::min(i, left.steps);
    const int i2 = i - i1;
    r.length_witnesses.push_back(
        left.length_witnesses[i1].joined(q).joined(right.length_witnesses[i2]));
  }
  const ValidationReport report = validate_adjuster(g, r);
  if (!report.passed()) return Failure(FailureKind::ValidationFailed, report.failed_ids());
  return r;
}

std::set<int> adjuster_length_menu(const Graph& g, const Adjuster& adj, int exhaustive_cap) {
  if (static_cast<int>(adj.center.size()) > exhaustive_cap)
    throw TooLarge("adjuster center exceeds the exhaustive cap of " + std::to_string(exhaustive_cap));
  std::vector<Vertex> local{adj.core1, adj.core2};
  for (Vertex v : adj.center)
    if (v != adj.core1 && v != adj.core2) local.push_back(v);
  const int k = static_cast<int>(local.size());
  std::map<Vertex, int> index;
  for (int i = 0; i < k; ++i) index[local[i]] = i;
  std::vector<std::uint32_t> adjm(k, 0);
  for (int i = 0; i < k; ++i)
    for (Vertex u : g.neighbors(local[i])) {
      const auto it = index.find(u);
      if (it != index.end()) adjm[i] |= 1u << it->second;
    }

  // Bit L of the result: a path of L further edges from `v` to core2 exists
  // avoiding `visited`.
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  auto go = [&](auto&& self, int v, std::uint32_t visited) -> std::uint64_t {
    if (v == 1) return 1;
    const std::uint64_t key = (static_cast<std::uint64_t>(visited) << 5) | static_cast<std::uint64_t>(v);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t lengths = 0;
    for (std::uint32_t next = adjm[v] & ~visited; next; next &= next - 1) {
      const int u = std::countr_zero(next);
      lengths |= self(self, u, visited | (1u << u)) << 1;
    }
    memo.emplace(key, lengths);
    return lengths;
  };
  const std::uint64_t bits = go(go, 0, 1u);
  std::set<int> menu;
  for (int l = 0; l < 64; ++l)
    if (bits >> l & 1u) menu.insert(l);
  return menu;
}

ValidationReport validate_adjuster(const Graph& g, const Adjuster& adj, int exhaustive_cap) {
  ValidationReport r;
  std::vector<Vertex> all{adj.core1, adj.core2, adj.end1.anchor, adj.end2.anchor};
  all.insert(all.end(), adj.center.begin(), adj.center.end());
  all.insert(all.end(), adj.end1.vertices.begin(), adj.end1.vertices.end());
  all.insert(all.end(), adj.end2.vertices.begin(), adj.end2.vertices.end());
  for (const Path& p : adj.length_witnesses) all.insert(all.end(), p.vertices.begin(), p.vertices.end());
  r.check("adjuster-ids-valid", ids_valid(g, all), list(all));
  if (!r.passed()) return r;

  r.check("A1", adj.center.disjoint_from(adj.end1.vertices) &&
                    adj.center.disjoint_from(adj.end2.vertices) &&
                    adj.end1.vertices.disjoint_from(adj.end2.vertices));

  const ValidationReport e1 = validate_expansion(g, adj.end1);
  const ValidationReport e2 = validate_expansion(g, adj.end2);
  const bool anchored = adj.end1.anchor == adj.core1 && adj.end2.anchor == adj.core2;
  const bool radius = adj.end1.radius <= adj.radius_bound && adj.end2.radius <= adj.radius_bound;
  r.check("A2", e1.passed() && e2.passed() && anchored && radius,
          !anchored ? "ends not anchored at cores"
                    : !radius ? "end radius above m" : e1.failed_ids() + e2.failed_ids());

  const long long limit = 10LL * adj.radius_bound * adj.steps;
  r.check("A3", static_cast<long long>(adj.center.size()) <= limit,
          "|A| = " + std::to_string(adj.center.size()) + " > " + std::to_string(limit));

  const VertexSet allowed = adj.center.unite(VertexSet{adj.core1, adj.core2});
  if (static_cast<int>(adj.center.size()) <= exhaustive_cap) {
    const std::set<int> menu = adjuster_length_menu(g, adj, exhaustive_cap);
    std::string missing;
    for (int i = 0; i <= adj.steps; ++i)
      if (!menu.count(adj.base_length + 2 * i)) missing += std::to_string(adj.base_length + 2 * i) + " ";
    r.check("A4", adj.base_length >= 1 && missing.empty(), "missing lengths " + missing);
  } else {
    bool ok = static_cast<int>(adj.length_witnesses.size()) == adj.steps + 1 && adj.base_length >= 1;
    std::string bad;
    for (int i = 0; ok && i <= adj.steps; ++i) {
      const Path& p = adj.length_witnesses[i];
      const bool inside = std::all_of(p.vertices.begin(), p.vertices.end(),
                                      [&](Vertex v) { return allowed.contains(v); });
      if (!inside || !is_simple_path(g, p) || p.empty() || p.front() != adj.core1 ||
          p.back() != adj.core2 || p.length() != adj.base_length + 2 * i) {
        ok = false;
        bad = "witness " + std::to_string(i);
      }
    }
    r.check("A4", ok, bad);
  }
  return r;
}

// Octopuses ------------------------------------------------------------------

Outcome<Octopus> build_octopus(const Graph& g, const std::vector<Adjuster>& pool,
                               const VertexSet& avoid, int r3, int r4) {
  if (pool.empty()) throw InvalidArgument("build_octopus: empty pool");
  if (r3 < 0 || r3 > static_cast<int>(pool.size()) - 1)
    throw InvalidArgument("build_octopus: r3 must lie in [0, |pool| - 1]");
  require_vertices(g, avoid);
  const int n = g.vertex_count();
  std::vector<int> owner(n, -1);
  for (std::size_t j = 0; j < pool.size(); ++j)
    for (Vertex v : pool[j].vertices()) {
      if (owner[v] != -1 || avoid.contains(v))
        throw InvalidArgument("build_octopus: pool adjusters must be disjoint and avoid the forbidden set");
      owner[v] = static_cast<int>(j);
    }
  if (r3 == 0) return Octopus{pool[0], 1, {}, {}, r4};

  std::vector<Path> best_partial;
  for (int side : {1, 2}) {
    const Adjuster& core = pool[0];
    const VertexSet& root = core.end(side).vertices;
    std::vector<char> blocked = mask_of(n, avoid);
    for (const Adjuster& a : pool) claim_all(blocked, a.center);
    claim_all(blocked, core.end(3 - side).vertices);
    std::vector<char> attached(pool.size(), 0);
    Octopus oct{core, side, {}, {}, r4};
    while (static_cast<int>(oct.arms.size()) < r3) {
      std::vector<Vertex> targets;
      for (std::size_t j = 1; j < pool.size(); ++j)
        if (!attached[j]) {
          targets.insert(targets.end(), pool[j].end1.vertices.begin(), pool[j].end1.vertices.end());
          targets.insert(targets.end(), pool[j].end2.vertices.begin(), pool[j].end2.vertices.end());
        }
      auto p = short_connect_masked(g, root, VertexSet(std::move(targets)), blocked, r4);
      if (!p) break;
      const int j = owner[p->back()];
      attached[j] = 1;
      claim_all(blocked, pool[j].vertices());
      for (std::size_t i = 1; i + 1 < p->vertices.size(); ++i) blocked[p->vertices[i]] = 1;
      oct.arms.push_back(pool[j]);
      oct.arm_paths.push_back(*p);
    }
    if (static_cast<int>(oct.arms.size()) == r3) {
      const ValidationReport report = validate_octopus(g, oct);
      if (!report.passed()) return Failure(FailureKind::ValidationFailed, report.failed_ids());
      return oct;
    }
    if (oct.arm_paths.size() > best_partial.size()) best_partial = oct.arm_paths;
  }
  return Failure(FailureKind::ArmsStalled,
                 "attached " + std::to_string(best_partial.size()) + " of " + std::to_string(r3) + " arms",
                 best_partial);
}

ValidationReport validate_octopus(const Graph& g, const Octopus& oct) {
  ValidationReport r;
  r.absorb("core.", validate_adjuster(g, oct.core));
  for (std::size_t i = 0; i < oct.arms.size(); ++i)
    r.absorb("arm[" + std::to_string(i) + "].", validate_adjuster(g, oct.arms[i]));
  if (!r.passed()) return r;

  const int n = g.vertex_count();
  std::vector<int> owner(n, -1);
  bool disjoint = true;
  for (Vertex v : oct.core.vertices()) owner[v] = 0;
  for (std::size_t i = 0; i < oct.arms.size(); ++i)
    for (Vertex v : oct.arms[i].vertices()) {
      if (owner[v] != -1) disjoint = false;
      owner[v] = static_cast<int>(i) + 1;
    }
  r.check("octopus-disjoint", disjoint);
  r.check("octopus-path-count", oct.arm_paths.size() == oct.arms.size(),
          std::to_string(oct.arm_paths.size()) + " paths for " + std::to_string(oct.arms.size()) + " arms");
  if (oct.arm_paths.size() != oct.arms.size()) return r;

  VertexSet centers = oct.core.center;
  for (const Adjuster& a : oct.arms) centers.insert_all(a.center);
  const VertexSet& root = oct.core.end(oct.attached_end).vertices;
  bool lengths = true, starts = true, reach = true, internal = true, clear = true;
  std::vector<char> inner(n, 0);
  for (std::size_t i = 0; i < oct.arm_paths.size(); ++i) {
    const Path& p = oct.arm_paths[i];
    if (!ids_valid(g, p.vertices) || !is_simple_path(g, p) || p.length() < 0 ||
        p.length() > oct.max_path_length) {
      lengths = false;
      continue;
    }
    if (!root.contains(p.front())) starts = false;
    const Adjuster& arm = oct.arms[i];
    if (!arm.end1.vertices.contains(p.back()) && !arm.end2.vertices.contains(p.back())) reach = false;
    for (Vertex v : p.vertices)
      if (centers.contains(v)) clear = false;
    for (std::size_t k = 1; k + 1 < p.vertices.size(); ++k) {
      const Vertex v = p.vertices[k];
      if (inner[v] || owner[v] != -1) internal = false;
      inner[v] = 1;
    }
  }
  for (const Path& p : oct.arm_paths)
    if (!p.empty() && (inner[p.front()] || inner[p.back()])) internal = false;
  r.check("octopus-path-length", lengths);
  r.check("octopus-path-start", starts);
  r.check("octopus-path-reach", reach);
  r.check("octopus-paths-internally-disjoint", internal);
  r.check("octopus-avoid-centers", clear);
  return r;
}

}  // namespace tksub
