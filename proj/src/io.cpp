#include "tksub/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

namespace tksub {

namespace {

Json ids(const VertexSet& s) { return Json(s.members()); }

Json paths(const std::vector<Path>& ps) {
  Json out = Json::array();
  for (const Path& p : ps) out.push_back(p.vertices);
  return out;
}

// Field access with parse errors instead of JSON library exceptions.
const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" is not an integer");
  return v.get<int>();
}

std::vector<Vertex> id_list(const Json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " is not an array");
  std::vector<Vertex> out;
  for (const Json& x : v) {
    if (!x.is_number_integer()) throw ParseError(std::string(what) + " holds a non-integer");
    out.push_back(x.get<Vertex>());
  }
  return out;
}

std::vector<Path> path_list(const Json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " is not an array");
  std::vector<Path> out;
  for (const Json& p : v) out.emplace_back(id_list(p, what));
  return out;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string line;
  long long n = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag;
      if (!(ls >> tag >> n) || tag != "n" || n < 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected header \"n <count>\"");
      if (n > 100'000'000) throw ParseError("vertex count too large");
    } else {
      long long u, v;
      if (!(ls >> u >> v))
        throw ParseError("line " + std::to_string(lineno) + ": expected \"u v\"");
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ParseError("line " + std::to_string(lineno) + ": vertex out of range");
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string rest;
    if (ls >> rest) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
  }
  if (n < 0) return Graph(0);
  try {
    return Graph::from_edges(static_cast<int>(n), edges);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string write_edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Json to_json(const SubdivisionCertificate& c) {
  Json j;
  j["ell"] = c.ell;
  j["branch"] = c.branch;
  j["paths"] = Json::array();
  for (const PairPath& p : c.paths) {
    Json e;
    e["u"] = p.u;
    e["v"] = p.v;
    e["vertices"] = p.path.vertices;
    j["paths"].push_back(std::move(e));
  }
  return j;
}

SubdivisionCertificate certificate_from_json(const Json& j) {
  SubdivisionCertificate c;
  c.ell = int_field(j, "ell");
  c.branch = id_list(field(j, "branch"), "branch");
  const Json& ps = field(j, "paths");
  if (!ps.is_array()) throw ParseError("paths is not an array");
  for (const Json& p : ps)
    c.paths.push_back({int_field(p, "u"), int_field(p, "v"), Path(id_list(field(p, "vertices"), "vertices"))});
  return c;
}

Json to_json(const Hub& h) {
  Json j;
  j["center"] = h.center;
  j["first_layer"] = h.first_layer;
  j["second_layers"] = h.second_layers;
  return j;
}

Json to_json(const Unit& u) {
  Json j;
  j["core"] = u.core;
  j["params"] = {{"h0", u.params.h0}, {"h1", u.params.h1}, {"h2", u.params.h2}, {"h3", u.params.h3}};
  j["hubs"] = Json::array();
  for (const Hub& h : u.hubs) j["hubs"].push_back(to_json(h));
  j["spokes"] = paths(u.spokes);
  return j;
}

Json to_json(const Expansion& f) {
  Json j;
  j["anchor"] = f.anchor;
  j["radius"] = f.radius;
  j["vertices"] = ids(f.vertices);
  return j;
}

Json to_json(const Adjuster& a) {
  Json j;
  j["core1"] = a.core1;
  j["core2"] = a.core2;
  j["end1"] = to_json(a.end1);
  j["end2"] = to_json(a.end2);
  j["center"] = ids(a.center);
  j["base_length"] = a.base_length;
  j["steps"] = a.steps;
  j["radius_bound"] = a.radius_bound;
  j["length_witnesses"] = paths(a.length_witnesses);
  return j;
}

Json to_json(const Octopus& o) {
  Json j;
  j["core"] = to_json(o.core);
  j["attached_end"] = o.attached_end;
  j["arms"] = Json::array();
  for (const Adjuster& a : o.arms) j["arms"].push_back(to_json(a));
  j["arm_paths"] = paths(o.arm_paths);
  j["max_path_length"] = o.max_path_length;
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["clauses"] = Json::array();
  for (const ClauseResult& c : r.clauses) {
    Json e;
    e["id"] = c.id;
    e["passed"] = c.passed;
    if (!c.passed) e["witness"] = c.witness;
    j["clauses"].push_back(std::move(e));
  }
  return j;
}

Hub hub_from_json(const Json& j) {
  Hub h;
  h.center = int_field(j, "center");
  h.first_layer = id_list(field(j, "first_layer"), "first_layer");
  const Json& layers = field(j, "second_layers");
  if (!layers.is_array()) throw ParseError("second_layers is not an array");
  for (const Json& l : layers) h.second_layers.push_back(id_list(l, "second_layers"));
  return h;
}

Unit unit_from_json(const Json& j) {
  Unit u;
  u.core = int_field(j, "core");
  const Json& p = field(j, "params");
  u.params = UnitParams{int_field(p, "h0"), int_field(p, "h1"), int_field(p, "h2"), int_field(p, "h3")};
  const Json& hubs = field(j, "hubs");
  if (!hubs.is_array()) throw ParseError("hubs is not an array");
  for (const Json& h : hubs) u.hubs.push_back(hub_from_json(h));
  u.spokes = path_list(field(j, "spokes"), "spokes");
  return u;
}

Expansion expansion_from_json(const Json& j) {
  Expansion f;
  f.anchor = int_field(j, "anchor");
  f.radius = int_field(j, "radius");
  f.vertices = VertexSet(id_list(field(j, "vertices"), "vertices"));
  return f;
}

Adjuster adjuster_from_json(const Json& j) {
  Adjuster a;
  a.core1 = int_field(j, "core1");
  a.core2 = int_field(j, "core2");
  a.end1 = expansion_from_json(field(j, "end1"));
  a.end2 = expansion_from_json(field(j, "end2"));
  a.center = VertexSet(id_list(field(j, "center"), "center"));
  a.base_length = int_field(j, "base_length");
  a.steps = int_field(j, "steps");
  a.radius_bound = int_field(j, "radius_bound");
  a.length_witnesses = path_list(field(j, "length_witnesses"), "length_witnesses");
  return a;
}

Octopus octopus_from_json(const Json& j) {
  Octopus o;
  o.core = adjuster_from_json(field(j, "core"));
  o.attached_end = int_field(j, "attached_end");
  const Json& arms = field(j, "arms");
  if (!arms.is_array()) throw ParseError("arms is not an array");
  for (const Json& a : arms) o.arms.push_back(adjuster_from_json(a));
  o.arm_paths = path_list(field(j, "arm_paths"), "arm_paths");
  o.max_path_length = int_field(j, "max_path_length");
  return o;
}

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  return buf;
}

double round9(double x) { return std::stod(fixed9(x)); }

}  // namespace tksub
