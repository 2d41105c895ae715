#pragma once

#include <cstdint>

#include "tksub/graph.hpp"

namespace tksub::gen {

Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph star(int leaves);
Graph complete_bipartite(int a, int b);
// `copies` disjoint copies of K_{d,d}.
Graph kdd(int d, int copies);
Graph hypercube(int dim);
// Complete binary tree with the given number of levels below the root.
Graph binary_tree(int depth);
// Erdos-Renyi G(n, p), seeded.
Graph gnp(int n, double p, std::uint64_t seed);
// Random bipartite graph: sides [0, n1) and [n1, n1 + n2), each crossing
// edge present with probability p.
Graph bipartite_gnp(int n1, int n2, double p, std::uint64_t seed);
// Point-line incidence graph of PG(2, q) for prime q: points first, then lines.
Graph incidence_plane(int q);
Graph disjoint_union(const Graph& a, const Graph& b);

bool is_prime(int q);

}  // namespace tksub::gen
