#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "tksub/errors.hpp"
#include "tksub/path.hpp"

namespace tksub {

using Rational = boost::rational<long long>;
using Edge = std::pair<Vertex, Vertex>;

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs);
  explicit VertexSet(std::vector<Vertex> vs);

  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  void insert(Vertex v);
  void insert_all(const VertexSet& other);
  void erase(Vertex v);

  const std::vector<Vertex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  VertexSet unite(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  bool disjoint_from(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

// Immutable undirected simple graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  // Throws InvalidArgument on self-loops, parallel edges or out-of-range ids.
  static Graph from_edges(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  long long edge_count() const { return edge_count_; }
  bool valid(Vertex v) const { return v >= 0 && v < vertex_count(); }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;

  // Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  long long edge_count_ = 0;
};

struct DegreeStats {
  Rational average;
  int min_degree = 0;
  int max_degree = 0;
};

DegreeStats degree_stats(const Graph& g);
// 2|E|/n, zero for the empty graph.
Rational average_degree(const Graph& g);

void require_vertices(const Graph& g, const VertexSet& s);

VertexSet external_neighborhood(const Graph& g, const VertexSet& w);

// A graph together with the parent id of each of its vertices.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;

  Vertex lift(Vertex v) const { return to_parent[v]; }
  VertexSet lift(const VertexSet& s) const;
  Path lift(const Path& p) const;
  // Parent-id -> local-id table, -1 where absent.
  std::vector<Vertex> from_parent(int parent_vertex_count) const;
  // Lift through `this` after `inner` was taken inside this->graph.
  Subgraph compose(const Subgraph& inner) const;
};

Subgraph whole(const Graph& g);
Subgraph induced(const Graph& g, const VertexSet& s);
Subgraph delete_vertices(const Graph& g, const VertexSet& w);

// The t-core: maximal induced subgraph with minimum degree >= t.
Subgraph min_degree_peel(const Graph& g, int t);
std::vector<int> core_numbers(const Graph& g);

struct BipartiteHalf {
  VertexSet left;
  VertexSet right;
  // Spanning subgraph (same ids) keeping only edges across the partition.
  Graph graph;
};

BipartiteHalf bipartite_half(const Graph& g);

// Side (0/1) per vertex, or nullopt when g has an odd cycle.
std::optional<std::vector<int>> two_coloring(const Graph& g);

// Membership mask of length n.
std::vector<char> mask_of(int n, const VertexSet& s);

// Checks adjacency of consecutive vertices and that no vertex repeats.
bool is_simple_path(const Graph& g, const Path& p);

}  // namespace tksub
