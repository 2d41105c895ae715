#include "tksub/certify.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace tksub {

void SubdivisionCertificate::canonicalize() {
  std::sort(branch.begin(), branch.end());
  for (PairPath& p : paths)
    if (p.u > p.v) {
      std::swap(p.u, p.v);
      p.path = p.path.reversed();
    }
  std::sort(paths.begin(), paths.end(), [](const PairPath& a, const PairPath& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
}

ValidationReport verify_subdivision(const Graph& g, const SubdivisionCertificate& cert) {
  ValidationReport r;
  r.check("ell-positive", cert.ell >= 1, "ell = " + std::to_string(cert.ell));

  std::vector<Vertex> branch = cert.branch;
  std::sort(branch.begin(), branch.end());
  const bool ids = std::all_of(branch.begin(), branch.end(), [&](Vertex v) { return g.valid(v); });
  const bool distinct = std::adjacent_find(branch.begin(), branch.end()) == branch.end();
  r.check("branch-distinct", ids && distinct && !branch.empty(),
          !ids ? "branch vertex out of range" : "repeated or missing branch vertices");

  const std::size_t k = branch.size();
  std::map<std::pair<Vertex, Vertex>, int> seen;
  bool complete = cert.paths.size() == k * (k - 1) / 2;
  std::string missing;
  for (const PairPath& p : cert.paths) {
    const auto key = std::minmax(p.u, p.v);
    if (p.u == p.v || !std::binary_search(branch.begin(), branch.end(), p.u) ||
        !std::binary_search(branch.begin(), branch.end(), p.v) || seen[key]++ > 0) {
      complete = false;
      missing = "pair " + std::to_string(p.u) + "-" + std::to_string(p.v);
    }
  }
  r.check("pairs-complete", complete, missing);

  bool endpoints = true, uniform = true, edges = true, simple = true;
  std::string w_end, w_len, w_edge, w_simple;
  for (const PairPath& p : cert.paths) {
    const std::string tag = std::to_string(p.u) + "-" + std::to_string(p.v);
    if (p.path.empty() || p.path.front() != p.u || p.path.back() != p.v) {
      endpoints = false;
      w_end = tag;
    }
    if (p.path.length() != cert.ell) {
      uniform = false;
      w_len = tag + " has length " + std::to_string(p.path.length());
    }
    for (std::size_t i = 0; i < p.path.vertices.size(); ++i) {
      const Vertex a = p.path.vertices[i];
      if (!g.valid(a)) {
        edges = false;
        w_edge = tag + " uses vertex " + std::to_string(a);
        break;
      }
      if (i + 1 < p.path.vertices.size()) {
        const Vertex b = p.path.vertices[i + 1];
        if (!g.valid(b) || !g.has_edge(a, b)) {
          edges = false;
          w_edge = tag + " uses non-edge " + std::to_string(a) + "-" + std::to_string(b);
        }
      }
    }
    std::vector<Vertex> vs = p.path.vertices;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) {
      simple = false;
      w_simple = tag;
    }
  }
  r.check("endpoints", endpoints, w_end);
  r.check("uniform-length", uniform, w_len);
  r.check("edges", edges, w_edge);
  r.check("simple", simple, w_simple);

  std::map<Vertex, int> interior_owner;
  bool disjoint = true;
  std::string w_disjoint;
  for (std::size_t i = 0; i < cert.paths.size(); ++i) {
    const auto& vs = cert.paths[i].path.vertices;
    for (std::size_t j = 1; j + 1 < vs.size(); ++j) {
      const Vertex x = vs[j];
      if (std::binary_search(branch.begin(), branch.end(), x)) {
        disjoint = false;
        w_disjoint = "branch vertex " + std::to_string(x) + " inside a path";
      }
      const auto [it, fresh] = interior_owner.emplace(x, static_cast<int>(i));
      if (!fresh && it->second != static_cast<int>(i)) {
        disjoint = false;
        w_disjoint = "vertex " + std::to_string(x) + " shared by two paths";
      }
    }
  }
  r.check("internal-disjoint", disjoint, w_disjoint);
  return r;
}

const char* to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::Found: return "Found";
    case SearchVerdict::NotFound: return "NotFound";
    case SearchVerdict::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

namespace {

class Backtracker {
 public:
  Backtracker(const Graph& g, int ell, long long budget)
      : g_(g), ell_(ell), budget_(budget), used_(g.vertex_count(), 0), bipartite_(two_coloring(g).has_value()) {}

  bool try_branch(const std::vector<Vertex>& branch) {
    branch_ = branch;
    pairs_.clear();
    for (std::size_t i = 0; i < branch.size(); ++i)
      for (std::size_t j = i + 1; j < branch.size(); ++j) pairs_.emplace_back(branch[i], branch[j]);
    std::fill(used_.begin(), used_.end(), 0);
    for (Vertex b : branch) used_[b] = 1;
    paths_.assign(pairs_.size(), Path());
    return route(0);
  }

  bool exhausted() const { return exhausted_; }
  long long nodes() const { return nodes_; }

  SubdivisionCertificate certificate() const {
    SubdivisionCertificate c;
    c.ell = ell_;
    c.branch = branch_;
    for (std::size_t i = 0; i < pairs_.size(); ++i) c.paths.push_back({pairs_[i].first, pairs_[i].second, paths_[i]});
    c.canonicalize();
    return c;
  }

 private:
  bool route(std::size_t idx) {
    if (idx == pairs_.size()) return true;
    const auto [u, v] = pairs_[idx];
    // Distances to v through unused vertices: a lower bound for the rest of
    // this pair's search.
    dist_.assign(g_.vertex_count(), -1);
    std::vector<Vertex> queue{v};
    dist_[v] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex y : g_.neighbors(queue[h]))
        if (!used_[y] && dist_[y] == -1) {
          dist_[y] = dist_[queue[h]] + 1;
          queue.push_back(y);
        }
    std::vector<int> dist = dist_;
    Path& p = paths_[idx];
    p.vertices = {u};
    return extend(idx, u, v, ell_, dist);
  }

  bool extend(std::size_t idx, Vertex x, Vertex v, int remaining, const std::vector<int>& dist) {
    if (exhausted_) return false;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    Path& p = paths_[idx];
    if (remaining == 1) {
      if (!g_.has_edge(x, v)) return false;
      p.vertices.push_back(v);
      if (route(idx + 1)) return true;
      p.vertices.pop_back();
      return false;
    }
    for (Vertex y : g_.neighbors(x)) {
      if (used_[y] || dist[y] < 0 || dist[y] > remaining - 1) continue;
      if (bipartite_ && (remaining - 1 - dist[y]) % 2 != 0) continue;
      used_[y] = 1;
      p.vertices.push_back(y);
      if (extend(idx, y, v, remaining - 1, dist)) return true;
      p.vertices.pop_back();
      used_[y] = 0;
      if (exhausted_) return false;
    }
    return false;
  }

  const Graph& g_;
  int ell_;
  long long budget_;
  long long nodes_ = 0;
  bool exhausted_ = false;
  std::vector<char> used_;
  bool bipartite_;
  std::vector<Vertex> branch_;
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  std::vector<Path> paths_;
  std::vector<int> dist_;
};

}  // namespace

SearchResult brute_force_subdivision(const Graph& g, int k, int ell, long long budget) {
  if (k < 2 || ell < 1) throw InvalidArgument("brute_force_subdivision: need k >= 2 and ell >= 1");
  SearchResult out;
  const int n = g.vertex_count();
  const long long pairs = static_cast<long long>(k) * (k - 1) / 2;
  if (k > n || k + pairs * (ell - 1) > n) return out;

  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) >= k - 1) candidates.push_back(v);
  if (static_cast<int>(candidates.size()) < k) return out;

  Backtracker bt(g, ell, budget);
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  const int c = static_cast<int>(candidates.size());
  while (true) {
    std::vector<Vertex> branch;
    for (int i : pick) branch.push_back(candidates[i]);
    if (bt.try_branch(branch)) {
      out.verdict = SearchVerdict::Found;
      out.certificate = bt.certificate();
      out.nodes = bt.nodes();
      return out;
    }
    if (bt.exhausted()) {
      out.verdict = SearchVerdict::BudgetExhausted;
      out.nodes = bt.nodes();
      return out;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == c - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.nodes = bt.nodes();
  return out;
}

namespace {

int largest_candidate_k(const Graph& g) {
  int max_degree = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) max_degree = std::max(max_degree, g.degree(v));
  return std::min(g.vertex_count(), max_degree + 1);
}

}  // namespace

CliqueSearch max_k_for_ell(const Graph& g, int ell, long long budget) {
  CliqueSearch out;
  for (int k = largest_candidate_k(g); k >= 2; --k) {
    SearchResult r = brute_force_subdivision(g, k, ell, budget);
    if (r.verdict == SearchVerdict::Found) {
      out.k = k;
      out.certificate = std::move(r.certificate);
      return out;
    }
    if (r.verdict == SearchVerdict::BudgetExhausted) out.complete = false;
  }
  out.k = g.vertex_count() > 0 ? 1 : 0;
  return out;
}

BestClique best_balanced_clique(const Graph& g, long long budget) {
  BestClique out;
  const int n = g.vertex_count();
  for (int k = largest_candidate_k(g); k >= 2; --k) {
    const int pairs = k * (k - 1) / 2;
    const int max_ell = k == 2 ? n - 1 : 1 + (n - k) / pairs;
    for (int ell = 1; ell <= max_ell; ++ell) {
      SearchResult r = brute_force_subdivision(g, k, ell, budget);
      if (r.verdict == SearchVerdict::Found) {
        out.k = k;
        out.ell = ell;
        out.certificate = std::move(r.certificate);
        return out;
      }
      if (r.verdict == SearchVerdict::BudgetExhausted) out.complete = false;
    }
  }
  out.k = n > 0 ? 1 : 0;
  return out;
}

}  // namespace tksub
