#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace prismconn {

struct Edge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

// Undirected graph as a pair list; each edge is stored once.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
};

// Union by size with path halving.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

struct Connectivity {
  bool connected = false;
  std::size_t component_count = 0;
  std::size_t min_degree = 0;
};

/// Exact connectivity decision. A single vertex counts as connected.
inline Connectivity is_connected(const Graph& g) {
  if (g.vertex_count == 0) throw std::invalid_argument("graph has no vertices");
  DisjointSet ds(g.vertex_count);
  std::vector<std::size_t> degree(g.vertex_count, 0);
  for (const Edge& e : g.edges) {
    if (e.a >= g.vertex_count || e.b >= g.vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.a == e.b) throw std::invalid_argument("self-loops are not allowed");
    ++degree[e.a];
    ++degree[e.b];
    ds.unite(e.a, e.b);
  }
  Connectivity c;
  c.component_count = ds.components();
  c.connected = c.component_count == 1;
  c.min_degree = *std::min_element(degree.begin(), degree.end());
  return c;
}

}  // namespace prismconn
