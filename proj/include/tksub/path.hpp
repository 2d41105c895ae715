#pragma once

#include <vector>

namespace tksub {

using Vertex = int;

// An ordered vertex sequence; length counts edges.
struct Path {
  std::vector<Vertex> vertices;

  Path() = default;
  explicit Path(std::vector<Vertex> vs) : vertices(std::move(vs)) {}

  int length() const { return vertices.empty() ? -1 : static_cast<int>(vertices.size()) - 1; }
  bool empty() const { return vertices.empty(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }

  Path reversed() const { return Path({vertices.rbegin(), vertices.rend()}); }

  // Concatenate, sharing the junction vertex (this->back() == next.front()).
  Path joined(const Path& next) const;

  friend bool operator==(const Path&, const Path&) = default;
};

}  // namespace tksub
