#include "tksub/router.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_set>

namespace tksub {

LengthWindow::LengthWindow(int lo_, int hi_) : lo(lo_), hi(hi_) {
  if (lo_ < 0 || lo_ > hi_) throw InvalidArgument("length window needs 0 <= lo <= hi");
}

namespace {

// Distance to U for every vertex, with paths whose interiors avoid U and
// the blocked vertices; -1 where U is unreachable.
std::vector<int> distance_to(const Graph& g, const VertexSet& u, const std::vector<char>& blocked) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<Vertex> queue;
  for (Vertex x : u) {
    dist[x] = 0;
    queue.push_back(x);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g.neighbors(x)) {
      if (blocked[y] || dist[y] != -1) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

// Route from an exterior vertex of the unit through its hub and spoke to
// the core.
Path route_to_core(const Unit& unit, Vertex s) {
  for (std::size_t j = 0; j < unit.hubs.size(); ++j) {
    const Hub& h = unit.hubs[j];
    for (std::size_t i = 0; i < h.first_layer.size(); ++i) {
      const auto& layer = h.second_layers[i];
      if (std::find(layer.begin(), layer.end(), s) == layer.end()) continue;
      Path p({s, h.first_layer[i]});
      return p.joined(Path({h.first_layer[i], h.center})).joined(unit.spokes[j].reversed());
    }
  }
  return {};
}

void require_disjoint(const VertexSet& a, const VertexSet& b, const char* what) {
  if (!a.disjoint_from(b)) throw InvalidArgument(what);
}

}  // namespace

Outcome<RoutedPath> connect_with_length(const Graph& g, Vertex v, const Expansion& f,
                                        const VertexSet& u, const VertexSet& avoid,
                                        const LengthWindow& window, const UnitParams& unit_params) {
  if (!g.valid(v)) throw InvalidVertex("connect_with_length: bad start vertex");
  require_vertices(g, u);
  require_vertices(g, avoid);
  require_vertices(g, f.vertices);
  if (!f.vertices.contains(v)) throw InvalidArgument("connect_with_length: v must lie in its expansion");
  require_disjoint(u, f.vertices, "connect_with_length: U meets the expansion");
  require_disjoint(u, avoid, "connect_with_length: U meets the avoid set");
  require_disjoint(f.vertices, avoid, "connect_with_length: expansion meets the avoid set");
  if (window.lo < 1) throw InvalidArgument("connect_with_length: window must start at 1 or more");

  const int n = g.vertex_count();
  RoutedPath out;
  out.path = Path({v});
  bool units_available = true;

  for (int guard = 0; guard <= n; ++guard) {
    const Vertex head = out.path.back();
    const int len = out.path.length();
    std::vector<char> blocked = mask_of(n, avoid);
    for (Vertex x : out.path.vertices) blocked[x] = 1;
    blocked[head] = 0;
    const std::vector<int> dist = distance_to(g, u, blocked);
    if (dist[head] < 0)
      return Failure(FailureKind::ConnectionStalled, "U is unreachable from the path head", {out.path});
    if (len + dist[head] > window.hi)
      return Failure(FailureKind::WindowMissed,
                     "shortest completion has length " + std::to_string(len + dist[head]), {out.path});
    if (len + dist[head] >= window.lo) {
      auto tail = short_connect_masked(g, VertexSet{head}, u, blocked, dist[head]);
      out.path = out.path.joined(*tail);
      return out;
    }

    bool extended = false;
    if (units_available) {
      VertexSet unit_avoid = avoid.unite(u).unite(VertexSet(out.path.vertices));
      Outcome<Unit> unit = build_unit(g, unit_avoid, unit_params);
      if (!unit) {
        units_available = false;
      } else {
        const VertexSet ext = unit->exterior();
        std::vector<char> b2 = blocked;
        for (Vertex x : u) b2[x] = 1;
        for (Vertex x : unit->vertices().minus(ext)) b2[x] = 1;
        auto link = short_connect_masked(g, VertexSet{head}, ext, b2, n);
        if (link) {
          const Path grown = out.path.joined(*link).joined(route_to_core(*unit, link->back()));
          std::vector<char> b3 = mask_of(n, avoid);
          for (Vertex x : grown.vertices) b3[x] = 1;
          b3[grown.back()] = 0;
          const int rest = distance_to(g, u, b3)[grown.back()];
          if (is_simple_path(g, grown) && rest >= 0 && grown.length() + rest <= window.hi) {
            out.path = grown;
            ++out.unit_rounds;
            extended = true;
          }
        }
        if (!extended) units_available = false;
      }
    }

    if (!extended) {
      // Padding: step to the neighbour farthest from U that keeps the
      // window reachable.
      std::vector<char> b4 = blocked;
      b4[head] = 1;
      const std::vector<int> d2 = distance_to(g, u, b4);
      Vertex best = -1;
      for (Vertex y : g.neighbors(head)) {
        if (b4[y] || u.contains(y) || d2[y] < 0) continue;
        if (len + 1 + d2[y] > window.hi) continue;
        if (best == -1 || d2[y] > d2[best]) best = y;
      }
      if (best == -1)
        return Failure(FailureKind::WindowMissed, "no padding step keeps the window reachable",
                       {out.path});
      out.path.vertices.push_back(best);
      out.padded = true;
    }
    if (out.path.length() <= len) throw std::logic_error("connect_with_length made no progress");
  }
  return Failure(FailureKind::StageStalled, "routing loop exceeded the vertex count", {out.path});
}

Outcome<RoutedPair> connect_pair_with_length(const Graph& g, const VertexSet& u1, const VertexSet& u2,
                                             const Expansion& f3, const Expansion& f4,
                                             const VertexSet& avoid, const LengthWindow& window,
                                             const UnitParams& unit_params) {
  for (const VertexSet* s : {&u1, &u2, &f3.vertices, &f4.vertices, &avoid}) require_vertices(g, *s);
  const VertexSet* sets[] = {&u1, &u2, &f3.vertices, &f4.vertices, &avoid};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      require_disjoint(*sets[i], *sets[j], "connect_pair_with_length: sets must be pairwise disjoint");

  const VertexSet sources = u1.unite(u2);
  const VertexSet targets = f3.vertices.unite(f4.vertices);
  auto first = short_connect(g, sources, targets, avoid, g.vertex_count());
  if (!first) return Failure(FailureKind::Disconnected, "U1 and U2 cannot reach either expansion");

  const bool from_u1 = u1.contains(first->front());
  const bool into_f3 = f3.vertices.contains(first->back());
  const Expansion& hit = into_f3 ? f3 : f4;
  const Expansion& other = into_f3 ? f4 : f3;
  const VertexSet& other_u = from_u1 ? u2 : u1;
  const VertexSet& this_u = from_u1 ? u1 : u2;

  std::vector<Vertex> inside_path;
  {
    // Path inside the hit expansion from the entry vertex to its anchor.
    const int n = g.vertex_count();
    const std::vector<char> in = mask_of(n, hit.vertices);
    std::vector<Vertex> parent(n, -2);
    std::vector<Vertex> queue{first->back()};
    parent[first->back()] = -1;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex y : g.neighbors(queue[h]))
        if (in[y] && parent[y] == -2) {
          parent[y] = queue[h];
          queue.push_back(y);
        }
    if (parent[hit.anchor] == -2)
      return Failure(FailureKind::Disconnected, "expansion is not connected to its anchor");
    for (Vertex x = hit.anchor; x != -1; x = parent[x]) inside_path.push_back(x);
    std::reverse(inside_path.begin(), inside_path.end());
  }
  const Path r = first->joined(Path(inside_path));

  const int lo = std::max(1, window.lo - r.length());
  const int hi = window.hi - r.length();
  if (hi < lo)
    return Failure(FailureKind::WindowMissed,
                   "first connection already has length " + std::to_string(r.length()), {r});

  const VertexSet avoid2 = avoid.unite(VertexSet(r.vertices)).unite(this_u).unite(hit.vertices);
  Outcome<RoutedPath> routed =
      connect_with_length(g, other.anchor, other, other_u, avoid2, LengthWindow(lo, hi), unit_params);
  if (!routed) {
    std::vector<Path> partial{r};
    for (const Path& p : routed.failure().partial) partial.push_back(p);
    return Failure(routed.failure().kind, routed.failure().detail, partial);
  }
  const Path q = routed->path.reversed();
  RoutedPair out;
  out.p = from_u1 ? r : q;
  out.q = from_u1 ? q : r;
  out.padded = routed->padded;
  out.unit_rounds = routed->unit_rounds;
  if (!window.contains(out.p.length() + out.q.length()))
    return Failure(FailureKind::WindowMissed, "combined length left the window", {out.p, out.q});
  return out;
}

std::optional<Path> realize_exact_length(const Graph& g, const VertexSet& a, Vertex v1, Vertex v2,
                                         int target, int exhaustive_cap) {
  require_vertices(g, a);
  if (!g.valid(v1) || !g.valid(v2)) throw InvalidVertex("realize_exact_length: bad endpoint");
  if (v1 == v2) throw InvalidArgument("realize_exact_length: endpoints must differ");
  if (a.contains(v1) || a.contains(v2)) throw InvalidArgument("realize_exact_length: endpoints lie in A");
  const int k = static_cast<int>(a.size()) + 2;
  if (k > exhaustive_cap || k > 31)
    throw TooLarge("realize_exact_length: " + std::to_string(k) + " vertices exceed the cap");
  if (target < 1 || target > k - 1) return std::nullopt;

  std::vector<Vertex> local(a.begin(), a.end());
  local.push_back(v1);
  local.push_back(v2);
  std::sort(local.begin(), local.end());
  auto index_of = [&](Vertex x) {
    return static_cast<int>(std::lower_bound(local.begin(), local.end(), x) - local.begin());
  };
  std::vector<std::uint32_t> adj(k, 0);
  for (int i = 0; i < k; ++i)
    for (Vertex y : g.neighbors(local[i])) {
      const auto it = std::lower_bound(local.begin(), local.end(), y);
      if (it != local.end() && *it == y) adj[i] |= 1u << (it - local.begin());
    }
  const int s = index_of(v1);
  const int t = index_of(v2);

  // Distances to t in the local graph and bipartiteness for parity pruning.
  std::vector<int> dist(k, -1);
  std::vector<int> queue{t};
  dist[t] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::uint32_t m = adj[queue[h]]; m; m &= m - 1) {
      const int y = std::countr_zero(m);
      if (dist[y] == -1) {
        dist[y] = dist[queue[h]] + 1;
        queue.push_back(y);
      }
    }
  if (dist[s] < 0 || dist[s] > target) return std::nullopt;
  bool bipartite = true;
  for (int i = 0; i < k; ++i)
    for (std::uint32_t m = adj[i]; m; m &= m - 1) {
      const int y = std::countr_zero(m);
      if (dist[i] >= 0 && dist[y] >= 0 && (dist[i] + dist[y]) % 2 == 0) bipartite = false;
    }

  std::unordered_set<std::uint64_t> dead;
  std::vector<int> trail{s};
  auto go = [&](auto&& self, int v, std::uint32_t visited, int remaining) -> bool {
    if (v == t) return remaining == 0;
    if (remaining <= 0 || dist[v] < 0 || dist[v] > remaining) return false;
    if (bipartite && (remaining - dist[v]) % 2 != 0) return false;
    const std::uint64_t key = (static_cast<std::uint64_t>(visited) << 10) |
                              (static_cast<std::uint64_t>(v) << 5) | static_cast<std::uint64_t>(remaining);
    if (dead.count(key)) return false;
    for (std::uint32_t m = adj[v] & ~visited; m; m &= m - 1) {
      const int y = std::countr_zero(m);
      trail.push_back(y);
      if (self(self, y, visited | (1u << y), remaining - 1)) return true;
      trail.pop_back();
    }
    dead.insert(key);
    return false;
  };
  if (!go(go, s, 1u << s, target)) return std::nullopt;
  Path p;
  for (int i : trail) p.vertices.push_back(local[i]);
  return p;
}

}  // namespace tksub
