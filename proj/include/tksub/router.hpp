#pragma once

#include <optional>

#include "tksub/gadgets.hpp"
#include "tksub/graph.hpp"

namespace tksub {

struct LengthWindow {
  int lo = 0;
  int hi = 0;

  LengthWindow() = default;
  // Throws InvalidArgument unless 0 <= lo <= hi.
  LengthWindow(int lo_, int hi_);
  bool contains(int len) const { return lo <= len && len <= hi; }
};

struct RoutedPath {
  Path path;
  int unit_rounds = 0;      // E-loop iterations that extended the path through a fresh unit
  bool padded = false;      // the BFS padding fallback was used
};

// A v,u-path for some u in U with length inside the window, avoiding `avoid`.
// Grows the path through freshly built units until the remaining distance to
// U fits the window, padding greedily through unused vertices when no unit
// can be built.
Outcome<RoutedPath> connect_with_length(const Graph& g, Vertex v, const Expansion& f,
                                        const VertexSet& u, const VertexSet& avoid,
                                        const LengthWindow& window, const UnitParams& unit_params);

struct RoutedPair {
  Path p;  // starts in U1 or U2, ends at the anchor of F3 or F4
  Path q;  // starts in the other U set, ends at the other anchor
  bool padded = false;
  int unit_rounds = 0;
};

// Disjoint P, Q joining U1 and U2 (in some order) to the anchors of F3 and F4
// with l(P) + l(Q) inside the window.
Outcome<RoutedPair> connect_pair_with_length(const Graph& g, const VertexSet& u1, const VertexSet& u2,
                                             const Expansion& f3, const Expansion& f4,
                                             const VertexSet& avoid, const LengthWindow& window,
                                             const UnitParams& unit_params);

// Simple v1,v2-path with exactly `target` edges inside G[A + {v1, v2}].
// Throws TooLarge when |A + {v1, v2}| exceeds the cap.
std::optional<Path> realize_exact_length(const Graph& g, const VertexSet& a, Vertex v1, Vertex v2,
                                         int target, int exhaustive_cap = 26);

}  // namespace tksub
