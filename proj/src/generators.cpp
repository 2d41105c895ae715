#include "tksub/generators.hpp"

#include <array>
#include <random>

namespace tksub::gen {

namespace {

Graph build(int n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

Graph complete(int n) {
  require(n >= 0, "complete: n must be non-negative");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return build(n, std::move(e));
}

Graph cycle(int n) {
  require(n >= 3, "cycle: n must be at least 3");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build(n, std::move(e));
}

Graph path(int n) {
  require(n >= 1, "path: n must be positive");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build(n, std::move(e));
}

Graph star(int leaves) {
  require(leaves >= 0, "star: leaves must be non-negative");
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return build(leaves + 1, std::move(e));
}

Graph complete_bipartite(int a, int b) {
  require(a >= 0 && b >= 0, "complete_bipartite: sizes must be non-negative");
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return build(a + b, std::move(e));
}

Graph kdd(int d, int copies) {
  require(d >= 1 && copies >= 1, "kdd: d and copies must be positive");
  std::vector<Edge> e;
  for (int c = 0; c < copies; ++c) {
    const int base = 2 * d * c;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) e.emplace_back(base + i, base + d + j);
  }
  return build(2 * d * copies, std::move(e));
}

Graph hypercube(int dim) {
  require(dim >= 0 && dim <= 20, "hypercube: dimension must lie in [0, 20]");
  const int n = 1 << dim;
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b)
      if (!(v >> b & 1)) e.emplace_back(v, v | (1 << b));
  return build(n, std::move(e));
}

Graph binary_tree(int depth) {
  require(depth >= 0 && depth <= 20, "binary_tree: depth must lie in [0, 20]");
  const int n = (1 << (depth + 1)) - 1;
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back((v - 1) / 2, v);
  return build(n, std::move(e));
}

Graph gnp(int n, double p, std::uint64_t seed) {
  require(n >= 0, "gnp: n must be non-negative");
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return build(n, std::move(e));
}

Graph bipartite_gnp(int n1, int n2, double p, std::uint64_t seed) {
  require(n1 >= 0 && n2 >= 0, "bipartite_gnp: sizes must be non-negative");
  require(p >= 0.0 && p <= 1.0, "bipartite_gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      if (coin(rng)) e.emplace_back(i, n1 + j);
  return build(n1 + n2, std::move(e));
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

Graph incidence_plane(int q) {
  require(is_prime(q), "incidence_plane: q must be prime");
  // Normalized homogeneous coordinates: first nonzero entry is 1.
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  for (int b = 0; b < q; ++b) pts.push_back({0, 1, b});
  pts.push_back({0, 0, 1});
  const int m = static_cast<int>(pts.size());
  std::vector<Edge> e;
  for (int p = 0; p < m; ++p)
    for (int l = 0; l < m; ++l) {
      const auto& x = pts[p];
      const auto& y = pts[l];
      if ((x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0) e.emplace_back(p, m + l);
    }
  return build(2 * m, std::move(e));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  const int shift = a.vertex_count();
  for (const Edge& x : b.edges()) e.emplace_back(x.first + shift, x.second + shift);
  return build(a.vertex_count() + b.vertex_count(), std::move(e));
}

}  // namespace tksub::gen
