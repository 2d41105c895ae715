#include "tksub/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace tksub {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::InsufficientDegree: return "InsufficientDegree";
    case FailureKind::HubPoolExhausted: return "HubPoolExhausted";
    case FailureKind::ConnectionStalled: return "ConnectionStalled";
    case FailureKind::CarveFailed: return "CarveFailed";
    case FailureKind::Acyclic: return "Acyclic";
    case FailureKind::NoEvenCycle: return "NoEvenCycle";
    case FailureKind::ExpansionCollision: return "ExpansionCollision";
    case FailureKind::Disconnected: return "Disconnected";
    case FailureKind::ValidationFailed: return "ValidationFailed";
    case FailureKind::ArmsStalled: return "ArmsStalled";
    case FailureKind::RetriesExhausted: return "RetriesExhausted";
    case FailureKind::NoEmbedding: return "NoEmbedding";
    case FailureKind::WindowMissed: return "WindowMissed";
    case FailureKind::NoUnits: return "NoUnits";
    case FailureKind::StageStalled: return "StageStalled";
  }
  return "Unknown";
}

Failure::Failure(FailureKind k, std::string d) : kind(k), detail(std::move(d)) {}
Failure::Failure(FailureKind k, std::string d, std::vector<Path> p)
    : kind(k), detail(std::move(d)), partial(std::move(p)) {}

Path Path::joined(const Path& next) const {
  if (empty()) return next;
  if (next.empty()) return *this;
  if (back() != next.front()) throw InvalidArgument("Path::joined: endpoints do not meet");
  Path out = *this;
  out.vertices.insert(out.vertices.end(), next.vertices.begin() + 1, next.vertices.end());
  return out;
}

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::initializer_list<Vertex> vs) : VertexSet(std::vector<Vertex>(vs)) {}

VertexSet::VertexSet(std::vector<Vertex> vs) : members_(std::move(vs)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void VertexSet::insert(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) members_.insert(it, v);
}

void VertexSet::insert_all(const VertexSet& other) { *this = unite(other); }

void VertexSet::erase(Vertex v) {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it != members_.end() && *it == v) members_.erase(it);
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  VertexSet out;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  VertexSet out;
  std::set_intersection(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  VertexSet out;
  std::set_difference(begin(), end(), other.begin(), other.end(),
                      std::back_inserter(out.members_));
  return out;
}

bool VertexSet::disjoint_from(const VertexSet& other) const {
  auto a = begin();
  auto b = other.begin();
  while (a != end() && b != other.end()) {
    if (*a == *b) return false;
    if (*a < *b) ++a; else ++b;
  }
  return true;
}

// -------------------------------------------------------------------- Graph

Graph::Graph(int vertex_count) {
  if (vertex_count < 0) throw InvalidArgument("negative vertex count");
  adj_.resize(vertex_count);
}

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges) {
  Graph g(vertex_count);
  for (auto [u, v] : edges) {
    if (!g.valid(u) || !g.valid(v))
      throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") out of range");
    if (u == v) throw InvalidArgument("self-loop at " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    auto& nb = g.adj_[v];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw InvalidArgument("parallel edge at " + std::to_string(v));
  }
  g.edge_count_ = static_cast<long long>(edges.size());
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!valid(u) || !valid(v)) return false;
  const auto& a = adj_[u].size() < adj_[v].size() ? adj_[u] : adj_[v];
  Vertex other = adj_[u].size() < adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

// ------------------------------------------------------------ degree stats

Rational average_degree(const Graph& g) {
  if (g.vertex_count() == 0) return Rational(0);
  return Rational(2 * g.edge_count(), g.vertex_count());
}

DegreeStats degree_stats(const Graph& g) {
  if (g.vertex_count() == 0) throw EmptyGraph();
  DegreeStats s;
  s.average = average_degree(g);
  s.min_degree = g.degree(0);
  s.max_degree = g.degree(0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    s.min_degree = std::min(s.min_degree, g.degree(v));
    s.max_degree = std::max(s.max_degree, g.degree(v));
  }
  return s;
}

void require_vertices(const Graph& g, const VertexSet& s) {
  for (Vertex v : s)
    if (!g.valid(v)) throw InvalidVertex("vertex " + std::to_string(v) + " not in graph");
}

VertexSet external_neighborhood(const Graph& g, const VertexSet& w) {
  require_vertices(g, w);
  std::vector<Vertex> out;
  for (Vertex v : w)
    for (Vertex u : g.neighbors(v))
      if (!w.contains(u)) out.push_back(u);
  return VertexSet(std::move(out));
}

// ---------------------------------------------------------------- subgraphs

VertexSet Subgraph::lift(const VertexSet& s) const {
  std::vector<Vertex> out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(to_parent[v]);
  return VertexSet(std::move(out));
}

Path Subgraph::lift(const Path& p) const {
  Path out;
  for (Vertex v : p.vertices) out.vertices.push_back(to_parent[v]);
  return out;
}

std::vector<Vertex> Subgraph::from_parent(int parent_vertex_count) const {
  std::vector<Vertex> table(parent_vertex_count, -1);
  for (Vertex v = 0; v < static_cast<Vertex>(to_parent.size()); ++v) table[to_parent[v]] = v;
  return table;
}

Subgraph Subgraph::compose(const Subgraph& inner) const {
  Subgraph out{inner.graph, {}};
  out.to_parent.reserve(inner.to_parent.size());
  for (Vertex v : inner.to_parent) out.to_parent.push_back(to_parent[v]);
  return out;
}

Subgraph whole(const Graph& g) {
  Subgraph s{g, std::vector<Vertex>(g.vertex_count())};
  std::iota(s.to_parent.begin(), s.to_parent.end(), 0);
  return s;
}

Subgraph induced(const Graph& g, const VertexSet& s) {
  require_vertices(g, s);
  std::vector<Vertex> local(g.vertex_count(), -1);
  Subgraph out;
  out.to_parent = s.members();
  for (Vertex i = 0; i < static_cast<Vertex>(out.to_parent.size()); ++i) local[out.to_parent[i]] = i;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < static_cast<Vertex>(out.to_parent.size()); ++i)
    for (Vertex u : g.neighbors(out.to_parent[i]))
      if (local[u] > i) edges.emplace_back(i, local[u]);
  out.graph = Graph::from_edges(static_cast<int>(out.to_parent.size()), edges);
  return out;
}

Subgraph delete_vertices(const Graph& g, const VertexSet& w) {
  require_vertices(g, w);
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!w.contains(v)) keep.push_back(v);
  return induced(g, VertexSet(std::move(keep)));
}

Subgraph min_degree_peel(const Graph& g, int t) {
  if (t < 0) throw InvalidArgument("min_degree_peel: t must be non-negative");
  const int n = g.vertex_count();
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < t) {
      removed[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : g.neighbors(v))
      if (!removed[u] && --deg[u] < t) {
        removed[u] = 1;
        stack.push_back(u);
      }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(v);
  return induced(g, VertexSet(std::move(keep)));
}

std::vector<int> core_numbers(const Graph& g) {
  // Batagelj-Zaversnik bucket peeling.
  const int n = g.vertex_count();
  std::vector<int> deg(n), core(n, 0);
  int max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::vector<Vertex>> bucket(max_deg + 1);
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
  std::vector<char> done(n, 0);
  int current = 0;
  for (int processed = 0; processed < n;) {
    int d = 0;
    while (d <= max_deg && bucket[d].empty()) ++d;
    Vertex v = bucket[d].back();
    bucket[d].pop_back();
    if (done[v] || deg[v] != d) continue;
    done[v] = 1;
    ++processed;
    current = std::max(current, d);
    core[v] = current;
    for (Vertex u : g.neighbors(v))
      if (!done[u] && deg[u] > 0) {
        --deg[u];
        bucket[deg[u]].push_back(u);
      }
  }
  return core;
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> side(n, -1);
  std::queue<Vertex> q;
  for (Vertex s = 0; s < n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex u : g.neighbors(v)) {
        if (side[u] == -1) {
          side[u] = 1 - side[v];
          q.push(u);
        } else if (side[u] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

BipartiteHalf bipartite_half(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) throw EmptyGraph();
  std::vector<int> side;
  if (auto coloring = two_coloring(g)) {
    side = std::move(*coloring);
  } else {
    side.resize(n);
    for (Vertex v = 0; v < n; ++v) side[v] = v % 2;
    // Local-search max-cut: flip any vertex with more same-side neighbours.
    // Each flip strictly increases the cut, so this terminates.
    bool moved = true;
    while (moved) {
      moved = false;
      for (Vertex v = 0; v < n; ++v) {
        int same = 0;
        for (Vertex u : g.neighbors(v)) same += side[u] == side[v];
        if (2 * same > g.degree(v)) {
          side[v] ^= 1;
          moved = true;
        }
      }
    }
  }
  BipartiteHalf out;
  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? left : right).push_back(v);
  out.left = VertexSet(std::move(left));
  out.right = VertexSet(std::move(right));
  std::vector<Edge> crossing;
  for (auto [u, v] : g.edges())
    if (side[u] != side[v]) crossing.emplace_back(u, v);
  out.graph = Graph::from_edges(n, crossing);
  return out;
}

std::vector<char> mask_of(int n, const VertexSet& s) {
  std::vector<char> mask(n, 0);
  for (Vertex v : s)
    if (v >= 0 && v < n) mask[v] = 1;
  return mask;
}

bool is_simple_path(const Graph& g, const Path& p) {
  if (p.empty()) return false;
  for (Vertex v : p.vertices)
    if (!g.valid(v)) return false;
  std::vector<Vertex> sorted = p.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
    if (!g.has_edge(p.vertices[i], p.vertices[i + 1])) return false;
  return true;
}

}  // namespace tksub
