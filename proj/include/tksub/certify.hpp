#pragma once

#include <optional>
#include <vector>

#include "tksub/graph.hpp"
#include "tksub/report.hpp"

namespace tksub {

struct PairPath {
  Vertex u = -1;
  Vertex v = -1;
  Path path;  // runs from u to v

  friend bool operator==(const PairPath&, const PairPath&) = default;
};

// Balanced subdivision TK_k^(ell): branch vertices plus one path of length
// ell per branch pair.
struct SubdivisionCertificate {
  int ell = 1;
  std::vector<Vertex> branch;
  std::vector<PairPath> paths;

  int k() const { return static_cast<int>(branch.size()); }
  // Sorted branch list, u < v in every pair (reversing its path if needed),
  // pairs in lexicographic order.
  void canonicalize();

  friend bool operator==(const SubdivisionCertificate&, const SubdivisionCertificate&) = default;
};

ValidationReport verify_subdivision(const Graph& g, const SubdivisionCertificate& cert);

enum class SearchVerdict { Found, NotFound, BudgetExhausted };
const char* to_string(SearchVerdict v);

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::NotFound;
  std::optional<SubdivisionCertificate> certificate;
  long long nodes = 0;
};

// Exhaustive backtracking over branch sets and exact-length path systems.
// NotFound is a proof of absence; BudgetExhausted is returned once more than
// `budget` search nodes were expanded.
SearchResult brute_force_subdivision(const Graph& g, int k, int ell, long long budget = 5'000'000);

struct CliqueSearch {
  int k = 0;
  std::optional<SubdivisionCertificate> certificate;
  bool complete = true;  // false when some larger k was left undecided
};

// Largest k with a TK_k^(ell) in G.
CliqueSearch max_k_for_ell(const Graph& g, int ell, long long budget = 5'000'000);

struct BestClique {
  int k = 0;
  int ell = 0;
  std::optional<SubdivisionCertificate> certificate;
  bool complete = true;
};

// Maximizes k over all ell, taking the smallest ell for that k.
BestClique best_balanced_clique(const Graph& g, long long budget = 5'000'000);

}  // namespace tksub
