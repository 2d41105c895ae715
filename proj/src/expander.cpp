#include "tksub/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <random>
#include <set>

namespace tksub {

ExpansionProfile::ExpansionProfile(double eps1, double k_) : epsilon1(eps1), k(k_) {
  if (!(eps1 > 0) || !(k_ > 0)) throw InvalidArgument("expansion profile needs epsilon1 > 0 and k > 0");
}

double epsilon_of(double x, const ExpansionProfile& p) {
  if (!(x > 0)) throw InvalidArgument("epsilon_of: x must be positive");
  if (x < p.k / 5.0) return 0.0;
  const double l = std::log(15.0 * x / p.k);
  return p.epsilon1 / (l * l);
}

const char* to_string(ExpanderStatus s) {
  switch (s) {
    case ExpanderStatus::Certified: return "Certified";
    case ExpanderStatus::Refuted: return "Refuted";
    case ExpanderStatus::SampledOk: return "Sampled-OK";
  }
  return "Unknown";
}

bool in_expansion_range(std::size_t x, int n, const ExpansionProfile& p) {
  return x >= 1 && static_cast<double>(x) >= p.k / 2.0 && 2 * x <= static_cast<std::size_t>(n);
}

bool violates_expansion(std::size_t set_size, std::size_t boundary_size, const ExpansionProfile& p) {
  const double x = static_cast<double>(set_size);
  return static_cast<double>(boundary_size) < epsilon_of(x, p) * x;
}

namespace {

bool range_empty(int n, const ExpansionProfile& p) {
  for (int x = 1; 2 * x <= n; ++x)
    if (in_expansion_range(x, n, p)) return false;
  return true;
}

ExpanderVerdict verify_exhaustive(const Graph& g, const ExpansionProfile& p, int cap) {
  const int n = g.vertex_count();
  if (n > cap)
    throw TooLarge("exhaustive expander check limited to " + std::to_string(cap) + " vertices");
  ExpanderVerdict verdict;
  if (range_empty(n, p)) return verdict;
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v)) nbr[v] |= 1u << u;
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const int low = std::countr_zero(mask);
    reach[mask] = reach[mask & (mask - 1)] | nbr[low];
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (!in_expansion_range(size, n, p)) continue;
    ++verdict.sets_checked;
    const auto boundary = static_cast<std::size_t>(std::popcount(reach[mask] & ~mask));
    if (violates_expansion(size, boundary, p)) {
      std::vector<Vertex> members;
      for (Vertex v = 0; v < n; ++v)
        if (mask >> v & 1u) members.push_back(v);
      verdict.status = ExpanderStatus::Refuted;
      verdict.witness = VertexSet(std::move(members));
      return verdict;
    }
  }
  return verdict;
}

// Incrementally tracks |N(X)| as vertices are added to X.
class BoundaryTracker {
 public:
  explicit BoundaryTracker(const Graph& g) : g_(g), in_(g.vertex_count(), 0), hits_(g.vertex_count(), 0) {}

  void add(Vertex v) {
    if (hits_[v] > 0) --boundary_;
    in_[v] = 1;
    ++size_;
    for (Vertex u : g_.neighbors(v)) {
      if (!in_[u] && hits_[u] == 0) ++boundary_;
      ++hits_[u];
    }
  }
  std::size_t size() const { return size_; }
  std::size_t boundary() const { return boundary_; }
  bool contains(Vertex v) const { return in_[v] != 0; }

 private:
  const Graph& g_;
  std::vector<char> in_;
  std::vector<int> hits_;
  std::size_t size_ = 0;
  std::size_t boundary_ = 0;
};

ExpanderVerdict verify_sampled(const Graph& g, const ExpansionProfile& p, int trials,
                               std::uint64_t seed) {
  const int n = g.vertex_count();
  ExpanderVerdict verdict;
  if (range_empty(n, p)) return verdict;
  verdict.status = ExpanderStatus::SampledOk;

  auto refute = [&](std::vector<Vertex> members) {
    verdict.status = ExpanderStatus::Refuted;
    verdict.witness = VertexSet(std::move(members));
  };

  // Connected components.
  {
    std::vector<int> comp(n, -1);
    for (Vertex s = 0; s < n; ++s) {
      if (comp[s] != -1) continue;
      std::vector<Vertex> members{s};
      comp[s] = s;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (Vertex u : g.neighbors(members[i]))
          if (comp[u] == -1) {
            comp[u] = s;
            members.push_back(u);
          }
      if (!in_expansion_range(members.size(), n, p)) continue;
      ++verdict.sets_checked;
      // A component has no external neighbours.
      if (violates_expansion(members.size(), 0, p)) {
        refute(std::move(members));
        return verdict;
      }
    }
  }

  // Degree-sorted prefixes, lowest degree first.
  {
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    BoundaryTracker tracker(g);
    for (int i = 0; 2 * (i + 1) <= n; ++i) {
      tracker.add(order[i]);
      if (!in_expansion_range(tracker.size(), n, p)) continue;
      ++verdict.sets_checked;
      if (violates_expansion(tracker.size(), tracker.boundary(), p)) {
        refute({order.begin(), order.begin() + i + 1});
        return verdict;
      }
    }
  }

  // Random connected sets grown by BFS.
  std::mt19937_64 rng(seed);
  std::size_t lo = 1;
  while (lo * 2 <= static_cast<std::size_t>(n) && !in_expansion_range(lo, n, p)) ++lo;
  const std::size_t hi = static_cast<std::size_t>(n) / 2;
  if (lo > hi) return verdict;
  for (int trial = 0; trial < trials; ++trial) {
    const Vertex start = std::uniform_int_distribution<Vertex>(0, n - 1)(rng);
    const std::size_t target = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    BoundaryTracker tracker(g);
    std::vector<Vertex> members{start};
    std::vector<char> seen(n, 0);
    seen[start] = 1;
    tracker.add(start);
    bool checked_any = false;
    for (std::size_t head = 0; head < members.size() && tracker.size() <= target; ++head) {
      if (in_expansion_range(tracker.size(), n, p)) {
        checked_any = true;
        ++verdict.sets_checked;
        if (violates_expansion(tracker.size(), tracker.boundary(), p)) {
          refute(members);
          return verdict;
        }
      }
      std::vector<Vertex> nb(g.neighbors(members[head]).begin(), g.neighbors(members[head]).end());
      std::shuffle(nb.begin(), nb.end(), rng);
      for (Vertex u : nb) {
        if (seen[u] || tracker.size() >= target) continue;
        seen[u] = 1;
        members.push_back(u);
        tracker.add(u);
      }
    }
    if (!checked_any && in_expansion_range(tracker.size(), n, p)) {
      ++verdict.sets_checked;
      if (violates_expansion(tracker.size(), tracker.boundary(), p)) {
        refute(members);
        return verdict;
      }
    }
  }
  return verdict;
}

// Repeatedly delete a minimum-degree vertex while its degree is below half
// the current average. Each deletion does not lower the average.
Subgraph peel_to_half_average(const Subgraph& cur) {
  const Graph& g = cur.graph;
  const int n = g.vertex_count();
  std::vector<int> deg(n);
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.emplace(deg[v], v);
  }
  long long edges = g.edge_count();
  long long alive = n;
  std::vector<char> removed(n, 0);
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    // deg < (2E/n)/2  <=>  deg * n < E
    if (static_cast<long long>(d) * alive >= edges) break;
    queue.erase(queue.begin());
    removed[v] = 1;
    --alive;
    edges -= d;
    for (Vertex u : g.neighbors(v)) {
      if (removed[u]) continue;
      queue.erase({deg[u], u});
      --deg[u];
      queue.emplace(deg[u], u);
    }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(v);
  if (static_cast<int>(keep.size()) == n) return cur;
  return cur.compose(induced(g, VertexSet(std::move(keep))));
}

}  // namespace

ExpanderVerdict verify_expander(const Graph& g, const ExpansionProfile& p, const VerifyMode& mode) {
  if (mode.kind == VerifyMode::Kind::Exhaustive) return verify_exhaustive(g, p, mode.exhaustive_cap);
  return verify_sampled(g, p, mode.trials, mode.seed);
}

ExpanderExtraction extract_expander(const Graph& g, const ExpansionProfile& p, std::uint64_t seed,
                                    int exhaustive_cap) {
  if (g.vertex_count() == 0) throw EmptyGraph();
  const Rational target = average_degree(g) / 2;
  ExpanderExtraction out{whole(g), {}, 0};
  while (true) {
    ++out.rounds;
    out.h = peel_to_half_average(out.h);
    const Graph& h = out.h.graph;
    const VerifyMode mode = h.vertex_count() <= exhaustive_cap
                                ? VerifyMode::exhaustive(exhaustive_cap)
                                : VerifyMode::sampled(200, seed + static_cast<std::uint64_t>(out.rounds));
    out.verdict = verify_expander(h, p, mode);
    if (out.verdict.status != ExpanderStatus::Refuted) return out;
    const VertexSet& x = *out.verdict.witness;
    const VertexSet closure = x.unite(external_neighborhood(h, x));
    if (static_cast<int>(closure.size()) >= h.vertex_count()) return out;
    Subgraph inner = induced(h, closure);
    if (average_degree(inner.graph) < target) return out;
    out.h = out.h.compose(inner);
  }
}

BipartiteExpander extract_bipartite_expander(const Graph& g, const Rational& d,
                                             const ExpansionProfile& p, std::uint64_t seed,
                                             int exhaustive_cap) {
  if (g.vertex_count() == 0) throw EmptyGraph();
  if (average_degree(g) < 8 * d) throw DensityTooLow("bipartite expander needs d(G) >= 8d");
  BipartiteHalf half = bipartite_half(g);
  ExpanderExtraction ext = extract_expander(half.graph, p, seed, exhaustive_cap);
  const long long t = static_cast<long long>(std::ceil(boost::rational_cast<double>(d) - 1e-12));
  Subgraph peeled = min_degree_peel(ext.h.graph, static_cast<int>(std::max(0LL, t)));
  BipartiteExpander out{ext.h.compose(peeled), {}, {}, ext.verdict};
  std::vector<Vertex> left, right;
  for (Vertex v : out.h.to_parent) (half.left.contains(v) ? left : right).push_back(v);
  out.left = VertexSet(std::move(left));
  out.right = VertexSet(std::move(right));
  return out;
}

ExpansionProfile kst_free_profile_transform(const ExpansionProfile& p, double d, int s, int t) {
  if (s < 2 || t < s) throw InvalidArgument("kst transform needs t >= s >= 2");
  if (!(d > 0)) throw InvalidArgument("kst transform needs d > 0");
  const double eps2 = p.k / std::pow(d, static_cast<double>(s) / (s - 1));
  if (!(eps2 > 0) || !(eps2 < 1.0 / (1e5 * t)))
    throw InvalidArgument("kst transform needs 0 < eps2 < 1/(1e5 t)");
  return ExpansionProfile(p.epsilon1, eps2 * d);
}

}  // namespace tksub
