#pragma once

#include <cstdint>
#include <optional>

#include "tksub/graph.hpp"

namespace tksub {

// (epsilon1, k) pair defining the sublinear expansion function.
struct ExpansionProfile {
  double epsilon1 = 0.5;
  double k = 1.0;

  ExpansionProfile() = default;
  ExpansionProfile(double eps1, double k_);
};

// 0 below k/5, otherwise epsilon1 / ln^2(15x/k).
double epsilon_of(double x, const ExpansionProfile& p);

enum class ExpanderStatus { Certified, Refuted, SampledOk };
const char* to_string(ExpanderStatus s);

struct ExpanderVerdict {
  ExpanderStatus status = ExpanderStatus::Certified;
  std::optional<VertexSet> witness;  // present iff Refuted
  long long sets_checked = 0;
};

struct VerifyMode {
  enum class Kind { Exhaustive, Sampled } kind = Kind::Exhaustive;
  int trials = 200;
  std::uint64_t seed = 0;
  int exhaustive_cap = 22;

  static VerifyMode exhaustive(int cap = 22) { return {Kind::Exhaustive, 0, 0, cap}; }
  static VerifyMode sampled(int trials, std::uint64_t seed) {
    return {Kind::Sampled, trials, seed, 22};
  }
};

// True when X violates the expansion inequality: |N(X)| < eps(|X|)|X|, for
// |X| in the quantified range [k/2, n/2].
bool in_expansion_range(std::size_t x, int n, const ExpansionProfile& p);
bool violates_expansion(std::size_t set_size, std::size_t boundary_size,
                        const ExpansionProfile& p);

// Exhaustive mode throws TooLarge above the cap.
ExpanderVerdict verify_expander(const Graph& g, const ExpansionProfile& p, const VerifyMode& mode);

struct ExpanderExtraction {
  Subgraph h;  // induced in the input graph
  ExpanderVerdict verdict;
  int rounds = 0;
};

// Dense expander-like subgraph with d(H) >= d(G)/2 and delta(H) >= d(H)/2.
// Graphs above the exhaustive cap are checked by seeded sampling.
ExpanderExtraction extract_expander(const Graph& g, const ExpansionProfile& p,
                                    std::uint64_t seed = 0, int exhaustive_cap = 22);

struct BipartiteExpander {
  Subgraph h;  // induced subgraph of the crossing graph, ids lift to the input
  VertexSet left;   // parent ids
  VertexSet right;  // parent ids
  ExpanderVerdict verdict;
};

// Bipartite subgraph with delta >= d. Throws DensityTooLow when d(G) < 8d.
BipartiteExpander extract_bipartite_expander(const Graph& g, const Rational& d,
                                             const ExpansionProfile& p, std::uint64_t seed = 0,
                                             int exhaustive_cap = 22);

// K_{s,t}-free transform: profile with k = eps2 * d^{s/(s-1)} becomes
// k' = eps2 * d. Requires t >= s >= 2 and 0 < eps2 < 1/(1e5 t).
ExpansionProfile kst_free_profile_transform(const ExpansionProfile& p, double d, int s, int t);

}  // namespace tksub
