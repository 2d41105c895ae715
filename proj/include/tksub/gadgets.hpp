#pragma once

#include <set>
#include <vector>

#include "tksub/connector.hpp"
#include "tksub/graph.hpp"
#include "tksub/report.hpp"

namespace tksub {

// Center u, first layer S1(u) and one second layer S1(z) per z in S1(u),
// aligned with first_layer.
struct Hub {
  Vertex center = -1;
  std::vector<Vertex> first_layer;
  std::vector<std::vector<Vertex>> second_layers;

  VertexSet ball() const;      // {u} together with S1(u)
  VertexSet exterior() const;  // S2(u)
  VertexSet vertices() const;
};

struct UnitParams {
  int h0 = 1;  // hubs
  int h1 = 1;  // first-layer size
  int h2 = 1;  // second-layer size
  int h3 = 1;  // spoke length bound
};

// Core v joined to the center of hubs[j] by spokes[j].
struct Unit {
  Vertex core = -1;
  std::vector<Hub> hubs;
  std::vector<Path> spokes;  // oriented core -> hub center
  UnitParams params;

  VertexSet exterior() const;
  VertexSet interior() const;
  VertexSet vertices() const;
};

// Every member lies within `radius` of the anchor inside G[vertices].
struct Expansion {
  Vertex anchor = -1;
  VertexSet vertices;
  int radius = 0;

  std::size_t size() const { return vertices.size(); }
};

// Cores v1, v2 with ends F1, F2 and center A. For each i in 0..steps there
// is a v1,v2-path of length base_length + 2i inside G[A + {v1, v2}];
// length_witnesses[i] is one such path.
struct Adjuster {
  Vertex core1 = -1;
  Vertex core2 = -1;
  Expansion end1;
  Expansion end2;
  VertexSet center;
  int base_length = 0;
  int steps = 0;
  int radius_bound = 0;  // m: ends are (D, m)-expansions and |A| <= 10 m steps
  std::vector<Path> length_witnesses;

  const Expansion& end(int i) const { return i == 1 ? end1 : end2; }
  Vertex core(int i) const { return i == 1 ? core1 : core2; }
  VertexSet vertices() const;
  // Same adjuster with the roles of the two cores exchanged.
  Adjuster reversed() const;
};

struct Octopus {
  Adjuster core;
  int attached_end = 1;  // which end of the core plays R
  std::vector<Adjuster> arms;
  std::vector<Path> arm_paths;  // arm_paths[i] runs from R into an end of arms[i]
  int max_path_length = 0;
};

// Hubs -----------------------------------------------------------------------

// Greedy hub on the highest core of G - avoid that supports one.
Outcome<Hub> build_hub(const Graph& g, const VertexSet& avoid, int h1, int h2, bool c4_mode = false);

// Greedy hub centered at u using only vertices whose blocked flag is 0.
std::optional<Hub> grow_hub_at(const Graph& g, const std::vector<char>& blocked, Vertex u, int h1,
                               int h2);

ValidationReport validate_hub(const Graph& g, const Hub& hub);

// Units ----------------------------------------------------------------------

Outcome<Unit> build_unit(const Graph& g, const VertexSet& avoid, const UnitParams& params);
ValidationReport validate_unit(const Graph& g, const Unit& unit);

// Expansions -----------------------------------------------------------------

ValidationReport validate_expansion(const Graph& g, const Expansion& f);

// BFS prefix of F (smallest ids first within a layer) of exactly d_target
// vertices; the radius never grows.
Expansion trim_expansion(const Graph& g, const Expansion& f, int d_target);

// Adjusters ------------------------------------------------------------------

// Shortest even cycle core with cores at distance r-1 on the cycle and two
// BFS-grown ends of size D and radius at most m (at most 2 in c4_mode).
Outcome<Adjuster> build_simple_adjuster(const Graph& g, const VertexSet& avoid, int d, int m,
                                        bool c4_mode = false);

// Joins an end of `a` to an end of `b` by a shortest connecting path.
// Throws InvalidArgument when either adjuster has no steps or they overlap.
Outcome<Adjuster> link_adjusters(const Graph& g, const Adjuster& a, const Adjuster& b,
                                 const VertexSet& avoid);

// Clause A4 is decided exhaustively when |A| <= cap, otherwise from the
// stored length witnesses.
ValidationReport validate_adjuster(const Graph& g, const Adjuster& adj, int exhaustive_cap = 24);

// All v1,v2-path lengths inside G[A + {v1, v2}]. Throws TooLarge above cap.
std::set<int> adjuster_length_menu(const Graph& g, const Adjuster& adj, int exhaustive_cap = 24);

// Octopuses ------------------------------------------------------------------

// pool[0] is the core; arms are attached by paths of length <= r4 leaving
// one of its ends.
Outcome<Octopus> build_octopus(const Graph& g, const std::vector<Adjuster>& pool,
                               const VertexSet& avoid, int r3, int r4);
ValidationReport validate_octopus(const Graph& g, const Octopus& oct);

// Shortest cycle as a closed walk (first vertex repeated at the end), empty
// when acyclic.
Path shortest_cycle(const Graph& g);

}  // namespace tksub
