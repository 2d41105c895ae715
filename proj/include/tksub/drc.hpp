#pragma once

#include <cstdint>
#include <optional>

#include "tksub/certify.hpp"
#include "tksub/graph.hpp"

namespace tksub {

struct DrcParams {
  int t = 1;  // samples
  int r = 1;  // subset size
  int c = 1;  // common neighbours demanded
  int a = 1;  // target size

  DrcParams() = default;
  // Throws InvalidArgument unless all are >= 1 and r <= a.
  DrcParams(int t_, int r_, int c_, int a_);
};

// alpha^t n1 - C(n1, r) (c / n2)^t >= a, evaluated exactly.
bool drc_feasible(long long n1, long long n2, const Rational& alpha, const DrcParams& p);

struct DrcSelection {
  VertexSet a0;
  int attempts = 0;
};

// Every r-subset of A0 has >= c common neighbours in V2 and |A0| >= a; both
// are checked exhaustively before returning. Throws InvalidArgument when the
// partition is not a bipartition of G or the parameters are infeasible for
// the edge density of G.
Outcome<DrcSelection> drc_select(const Graph& g, const VertexSet& v1, const VertexSet& v2,
                                 const DrcParams& p, std::uint64_t seed, int max_retries = 64);

// Exhaustive check of the r-subset property.
bool drc_valid(const Graph& g, const VertexSet& a0, const VertexSet& v2, int r, int c);

// TK_k^(2): k branch vertices and a distinct middle vertex per pair.
Outcome<SubdivisionCertificate> dense_tk2(const Graph& g, int k, std::uint64_t seed = 0,
                                          long long node_budget = 2'000'000);

// Largest k (from the largest with k + C(k,2) <= n downwards) for which
// dense_tk2 succeeds.
Outcome<SubdivisionCertificate> dense_tk2_max(const Graph& g, std::uint64_t seed = 0,
                                              long long node_budget = 2'000'000);

// Largest average degree d of A into B compatible with K_{s,t}-freeness:
// |A| C(d, s) <= t C(|B|, s), found by bisection to 1e-9 and clamped to |B|.
double kst_degree_bound(long long n_a, long long n_b, int s, int t);

struct RobustDegreeVerdict {
  enum class Kind { DegreeOk, FoundTk2 } kind = Kind::DegreeOk;
  Rational remaining_degree;  // d(G - W)
  std::optional<SubdivisionCertificate> certificate;
};

// DegreeOk when d(G - W) >= d/2; otherwise a TK_kappa^(2) in the bipartite
// graph of edges between G - W and W, or a Failure recording both facts.
Outcome<RobustDegreeVerdict> robust_degree_or_tk2(const Graph& g, const VertexSet& w, const Rational& d,
                                                  int kappa, std::uint64_t seed = 0);

}  // namespace tksub
