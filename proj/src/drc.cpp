#include "tksub/drc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

namespace tksub {

namespace mp = boost::multiprecision;

DrcParams::DrcParams(int t_, int r_, int c_, int a_) : t(t_), r(r_), c(c_), a(a_) {
  if (t < 1 || r < 1 || c < 1 || a < 1) throw InvalidArgument("DrcParams: all parameters must be >= 1");
  if (r > a) throw InvalidArgument("DrcParams: need r <= a");
}

bool drc_feasible(long long n1, long long n2, const Rational& alpha, const DrcParams& p) {
  if (alpha < 0 || alpha > 1) throw InvalidArgument("drc_feasible: alpha must lie in [0, 1]");
  if (n1 < 0 || n2 < 1) throw InvalidArgument("drc_feasible: need n1 >= 0 and n2 >= 1");
  const mp::cpp_rational a(alpha.numerator(), alpha.denominator());
  mp::cpp_int choose = 0;
  if (n1 >= p.r) {
    choose = 1;
    for (int i = 0; i < p.r; ++i) choose = choose * (n1 - i) / (i + 1);
  }
  mp::cpp_rational alpha_t = 1, ratio_t = 1;
  const mp::cpp_rational ratio(p.c, n2);
  for (int i = 0; i < p.t; ++i) {
    alpha_t *= a;
    ratio_t *= ratio;
  }
  const mp::cpp_rational lhs = alpha_t * n1 - mp::cpp_rational(choose) * ratio_t;
  return lhs >= p.a;
}

namespace {

using Bits = std::vector<std::uint64_t>;

// Bitset of V2-neighbours per vertex, indexed by position in V2.
std::vector<Bits> side_masks(const Graph& g, const VertexSet& v2) {
  const std::size_t words = (v2.size() + 63) / 64;
  std::vector<int> pos(g.vertex_count(), -1);
  for (std::size_t i = 0; i < v2.size(); ++i) pos[v2.members()[i]] = static_cast<int>(i);
  std::vector<Bits> out(g.vertex_count(), Bits(words, 0));
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (Vertex u : g.neighbors(v))
      if (pos[u] >= 0) out[v][pos[u] / 64] |= 1ULL << (pos[u] % 64);
  return out;
}

// Calls f on every r-subset of `items`, stopping early when f returns false.
void for_each_subset(const std::vector<Vertex>& items, int r, const std::function<bool(const std::vector<Vertex>&)>& f) {
  const int n = static_cast<int>(items.size());
  if (r > n) return;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vertex> pick(r);
  while (true) {
    for (int i = 0; i < r; ++i) pick[i] = items[idx[i]];
    if (!f(pick)) return;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int common_count(const std::vector<Bits>& masks, const std::vector<Vertex>& subset) {
  int total = 0;
  const std::size_t words = masks.empty() ? 0 : masks[subset.front()].size();
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t x = ~0ULL;
    for (Vertex v : subset) x &= masks[v][w];
    total += std::popcount(x);
  }
  return total;
}

}  // namespace

bool drc_valid(const Graph& g, const VertexSet& a0, const VertexSet& v2, int r, int c) {
  const auto masks = side_masks(g, v2);
  bool ok = true;
  for_each_subset(a0.members(), r, [&](const std::vector<Vertex>& s) {
    if (common_count(masks, s) < c) ok = false;
    return ok;
  });
  return ok;
}

Outcome<DrcSelection> drc_select(const Graph& g, const VertexSet& v1, const VertexSet& v2,
                                 const DrcParams& p, std::uint64_t seed, int max_retries) {
  require_vertices(g, v1);
  require_vertices(g, v2);
  if (!v1.disjoint_from(v2)) throw InvalidArgument("drc_select: sides overlap");
  const std::vector<char> in1 = mask_of(g.vertex_count(), v1);
  const std::vector<char> in2 = mask_of(g.vertex_count(), v2);
  long long crossing = 0;
  for (const Edge& e : g.edges()) {
    if ((in1[e.first] && in1[e.second]) || (in2[e.first] && in2[e.second]))
      throw InvalidArgument("drc_select: graph is not bipartite over the given sides");
    if ((in1[e.first] && in2[e.second]) || (in2[e.first] && in1[e.second])) ++crossing;
  }
  const long long n1 = static_cast<long long>(v1.size());
  const long long n2 = static_cast<long long>(v2.size());
  if (n1 == 0 || n2 == 0) throw InvalidArgument("drc_select: empty side");
  const Rational alpha(crossing, n1 * n2);
  if (!drc_feasible(n1, n2, alpha, p)) throw InvalidArgument("drc_select: parameters are infeasible");

  const auto masks = side_masks(g, v2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, v2.size() - 1);
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    std::vector<Vertex> sample;
    for (int i = 0; i < p.t; ++i) sample.push_back(v2.members()[pick(rng)]);
    std::vector<Vertex> a;
    for (Vertex x : v1) {
      bool all = true;
      for (Vertex y : sample)
        if (!g.has_edge(x, y)) all = false;
      if (all) a.push_back(x);
    }
    // Delete one vertex from each bad r-subset.
    std::vector<char> gone(g.vertex_count(), 0);
    for_each_subset(a, p.r, [&](const std::vector<Vertex>& s) {
      for (Vertex v : s)
        if (gone[v]) return true;
      if (common_count(masks, s) < p.c) gone[s.back()] = 1;
      return true;
    });
    std::vector<Vertex> kept;
    for (Vertex v : a)
      if (!gone[v]) kept.push_back(v);
    if (static_cast<int>(kept.size()) < p.a) continue;
    VertexSet a0(std::move(kept));
    if (!drc_valid(g, a0, v2, p.r, p.c)) continue;
    return DrcSelection{std::move(a0), attempt};
  }
  return Failure(FailureKind::RetriesExhausted,
                 "no valid set after " + std::to_string(max_retries) + " attempts");
}

namespace {

// Assigns a distinct middle vertex outside the branch set to every branch
// pair by augmenting paths; empty when impossible.
std::optional<std::vector<Vertex>> match_middles(const Graph& g, const std::vector<Vertex>& branch) {
  const int n = g.vertex_count();
  std::vector<char> in_branch(n, 0);
  for (Vertex b : branch) in_branch[b] = 1;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < branch.size(); ++i)
    for (std::size_t j = i + 1; j < branch.size(); ++j) pairs.emplace_back(branch[i], branch[j]);
  std::vector<std::vector<Vertex>> options(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto a = g.neighbors(pairs[i].first);
    const auto b = g.neighbors(pairs[i].second);
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(options[i]));
    std::erase_if(options[i], [&](Vertex v) { return in_branch[v] != 0; });
    if (options[i].empty()) return std::nullopt;
  }
  std::vector<int> owner(n, -1);
  std::vector<Vertex> middle(pairs.size(), -1);
  std::vector<int> seen(n, -1);
  std::function<bool(int, int)> augment = [&](int pi, int stamp) {
    for (Vertex m : options[pi]) {
      if (seen[m] == stamp) continue;
      seen[m] = stamp;
      if (owner[m] == -1 || augment(owner[m], stamp)) {
        owner[m] = pi;
        middle[pi] = m;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!augment(static_cast<int>(i), static_cast<int>(i))) return std::nullopt;
  return middle;
}

SubdivisionCertificate tk2_certificate(const std::vector<Vertex>& branch, const std::vector<Vertex>& middle) {
  SubdivisionCertificate c;
  c.ell = 2;
  c.branch = branch;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < branch.size(); ++i)
    for (std::size_t j = i + 1; j < branch.size(); ++j, ++idx)
      c.paths.push_back({branch[i], branch[j], Path({branch[i], middle[idx], branch[j]})});
  c.canonicalize();
  return c;
}

}  // namespace

Outcome<SubdivisionCertificate> dense_tk2(const Graph& g, int k, std::uint64_t seed, long long node_budget) {
  if (k < 2) throw InvalidArgument("dense_tk2: k must be at least 2");
  const int n = g.vertex_count();
  const long long pairs = static_cast<long long>(k) * (k - 1) / 2;
  if (k + pairs > n) return Failure(FailureKind::NoEmbedding, "fewer than k + C(k,2) vertices");

  auto finish = [&](std::vector<Vertex> branch) -> std::optional<SubdivisionCertificate> {
    std::sort(branch.begin(), branch.end());
    auto middle = match_middles(g, branch);
    if (!middle) return std::nullopt;
    SubdivisionCertificate c = tk2_certificate(branch, *middle);
    if (!verify_subdivision(g, c).passed()) throw std::logic_error("dense_tk2 built an invalid certificate");
    return c;
  };

  // Dependent random choice on bipartite hosts: a set whose pairs all have
  // C(k,2) common neighbours on the other side admits distinct middles.
  if (auto coloring = two_coloring(g)) {
    std::vector<Vertex> sides[2];
    for (Vertex v = 0; v < n; ++v) sides[(*coloring)[v]].push_back(v);
    if (sides[0].size() < sides[1].size()) std::swap(sides[0], sides[1]);
    const long long e = g.edge_count();
    for (int s = 0; s < 2 && e > 0; ++s) {
      const VertexSet v1(sides[s]), v2(sides[1 - s]);
      if (v1.size() < static_cast<std::size_t>(k) || v2.empty()) continue;
      const Rational alpha(e, static_cast<long long>(v1.size() * v2.size()));
      for (int t = 1; t <= 6; ++t) {
        const DrcParams p(t, 2, static_cast<int>(pairs), k);
        if (!drc_feasible(static_cast<long long>(v1.size()), static_cast<long long>(v2.size()), alpha, p))
          continue;
        auto sel = drc_select(g, v1, v2, p, seed + static_cast<std::uint64_t>(t));
        if (sel) {
          std::vector<Vertex> branch(sel->a0.begin(), sel->a0.begin() + k);
          if (auto c = finish(branch)) return *c;
        }
        break;
      }
    }
  }

  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) >= k - 1) candidates.push_back(v);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });

  std::vector<Vertex> branch;
  std::vector<char> mark(n, 0);
  long long nodes = 0;
  bool exhausted = false;
  std::optional<SubdivisionCertificate> found;
  std::function<void(std::size_t)> search = [&](std::size_t start) {
    if (found || exhausted) return;
    if (static_cast<int>(branch.size()) == k) {
      found = finish(branch);
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (candidates.size() - i < static_cast<std::size_t>(k) - branch.size()) return;
      if (++nodes > node_budget) {
        exhausted = true;
        return;
      }
      const Vertex v = candidates[i];
      for (Vertex y : g.neighbors(v)) mark[y] = 1;
      bool ok = true;
      for (Vertex b : branch) {
        bool common = false;
        for (Vertex y : g.neighbors(b))
          if (mark[y] && std::find(branch.begin(), branch.end(), y) == branch.end() && y != v) {
            common = true;
            break;
          }
        if (!common) {
          ok = false;
          break;
        }
      }
      for (Vertex y : g.neighbors(v)) mark[y] = 0;
      if (!ok) continue;
      branch.push_back(v);
      std::vector<Vertex> sorted = branch;
      std::sort(sorted.begin(), sorted.end());
      if (match_middles(g, sorted)) search(i + 1);
      branch.pop_back();
      if (found || exhausted) return;
    }
  };
  search(0);
  if (found) return *found;
  return Failure(FailureKind::NoEmbedding,
                 exhausted ? "search budget exhausted" : "no branch set admits distinct middles");
}

Outcome<SubdivisionCertificate> dense_tk2_max(const Graph& g, std::uint64_t seed, long long node_budget) {
  const int n = g.vertex_count();
  int max_degree = 0;
  for (Vertex v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
  int k = 2;
  while ((k + 1) + (k + 1) * k / 2 <= n && k + 1 <= max_degree + 1) ++k;
  for (; k >= 2; --k) {
    if (k + k * (k - 1) / 2 > n) continue;
    auto r = dense_tk2(g, k, seed, node_budget);
    if (r) return r;
  }
  return Failure(FailureKind::NoEmbedding, "no TK_2^(2) exists");
}

namespace {

// x(x-1)...(x-s+1)/s!, zero below s-1 so the function is monotone.
double general_binomial(double x, int s) {
  if (x < s - 1) return 0.0;
  double v = 1.0;
  for (int i = 0; i < s; ++i) v *= (x - i) / (i + 1);
  return v;
}

}  // namespace

double kst_degree_bound(long long n_a, long long n_b, int s, int t) {
  if (s < 1 || t < 1) throw InvalidArgument("kst_degree_bound: need s, t >= 1");
  if (n_a < 1 || n_b < 0) throw InvalidArgument("kst_degree_bound: need |A| >= 1 and |B| >= 0");
  const double nb = static_cast<double>(n_b);
  const double rhs = static_cast<double>(t) * general_binomial(nb, s);
  auto fits = [&](double d) { return static_cast<double>(n_a) * general_binomial(d, s) <= rhs; };
  if (fits(nb)) return nb;
  double lo = 0.0, hi = nb;
  while (hi - lo > 1e-10) {
    const double mid = (lo + hi) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

Outcome<RobustDegreeVerdict> robust_degree_or_tk2(const Graph& g, const VertexSet& w, const Rational& d,
                                                  int kappa, std::uint64_t seed) {
  require_vertices(g, w);
  const Subgraph rest = delete_vertices(g, w);
  const Rational remaining = average_degree(rest.graph);
  if (remaining >= d / 2) return RobustDegreeVerdict{RobustDegreeVerdict::Kind::DegreeOk, remaining, {}};

  const std::vector<char> in_w = mask_of(g.vertex_count(), w);
  std::vector<Edge> crossing;
  for (const Edge& e : g.edges())
    if (in_w[e.first] != in_w[e.second]) crossing.push_back(e);
  const Graph h = Graph::from_edges(g.vertex_count(), crossing);
  if (kappa >= 2) {
    auto tk = dense_tk2(h, kappa, seed);
    if (tk) return RobustDegreeVerdict{RobustDegreeVerdict::Kind::FoundTk2, remaining, *tk};
  }
  return Failure(FailureKind::InsufficientDegree,
                 "d(G - W) = " + std::to_string(boost::rational_cast<double>(remaining)) +
                     " < d/2 and the crossing graph has no TK_" + std::to_string(kappa) + "^(2)");
}

}  // namespace tksub
