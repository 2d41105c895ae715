#pragma once

#include <optional>

#include "tksub/expander.hpp"
#include "tksub/graph.hpp"

namespace tksub {

using PathWitness = Path;

// ceil((2/eps1) ln^3(15n/k)), never below 1.
long long diameter_bound(const ExpansionProfile& p, long long n);

// floor(x eps(x) / 4): how many vertices may be deleted while the
// diameter bound still holds.
long long robust_budget(long long x, const ExpansionProfile& p);

// Shortest A-B path in G - avoid whose internal vertices lie outside A and B,
// or nullopt if none exists within `cap` edges. BFS layers are scanned in
// increasing id order, parents are smallest-id predecessors and the endpoint
// is the smallest-id vertex of B in the first layer that meets B.
std::optional<Path> short_connect(const Graph& g, const VertexSet& a, const VertexSet& b,
                                  const VertexSet& avoid, int cap);

// Same search with the avoid set given as a membership mask.
std::optional<Path> short_connect_masked(const Graph& g, const VertexSet& a, const VertexSet& b,
                                         const std::vector<char>& blocked, int cap);

}  // namespace tksub
