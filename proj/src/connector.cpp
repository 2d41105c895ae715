#include "tksub/connector.hpp"

#include <algorithm>
#include <cmath>

namespace tksub {

long long diameter_bound(const ExpansionProfile& p, long long n) {
  if (n < 1) throw InvalidArgument("diameter_bound: n must be positive");
  const double l = std::log(15.0 * static_cast<double>(n) / p.k);
  const double raw = std::ceil((2.0 / p.epsilon1) * l * l * l);
  return std::max(1LL, static_cast<long long>(raw));
}

long long robust_budget(long long x, const ExpansionProfile& p) {
  if (x < 1) throw InvalidArgument("robust_budget: x must be positive");
  const double xd = static_cast<double>(x);
  return static_cast<long long>(std::floor(xd * epsilon_of(xd, p) / 4.0));
}

std::optional<Path> short_connect_masked(const Graph& g, const VertexSet& a, const VertexSet& b,
                                         const std::vector<char>& blocked, int cap) {
  require_vertices(g, a);
  require_vertices(g, b);
  const int n = g.vertex_count();
  for (Vertex v : a)
    if (blocked[v]) throw InvalidArgument("short_connect: A meets the avoid set");
  for (Vertex v : b)
    if (blocked[v]) throw InvalidArgument("short_connect: B meets the avoid set");
  if (!a.disjoint_from(b)) throw InvalidArgument("short_connect: A and B intersect");
  if (cap < 0) throw InvalidArgument("short_connect: cap must be non-negative");
  if (a.empty() || b.empty()) return std::nullopt;

  const std::vector<char> in_b = mask_of(n, b);
  std::vector<Vertex> parent(n, -2);
  std::vector<Vertex> layer(a.begin(), a.end());
  for (Vertex v : layer) parent[v] = -1;

  for (int depth = 1; depth <= cap && !layer.empty(); ++depth) {
    std::vector<Vertex> next;
    for (Vertex x : layer) {
      for (Vertex y : g.neighbors(x)) {
        if (blocked[y] || parent[y] != -2) continue;
        parent[y] = x;
        next.push_back(y);
      }
    }
    std::sort(next.begin(), next.end());
    for (Vertex y : next) {
      if (!in_b[y]) continue;
      Path p;
      for (Vertex v = y; v != -1; v = parent[v]) p.vertices.push_back(v);
      std::reverse(p.vertices.begin(), p.vertices.end());
      return p;
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

std::optional<Path> short_connect(const Graph& g, const VertexSet& a, const VertexSet& b,
                                  const VertexSet& avoid, int cap) {
  require_vertices(g, avoid);
  return short_connect_masked(g, a, b, mask_of(g.vertex_count(), avoid), cap);
}

}  // namespace tksub
