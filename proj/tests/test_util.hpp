#pragma once

// Shared helpers and independent oracles for the test suites. Everything
// here is deliberately naive (linear scans, triple loops) so it cannot
// share a bug with the library's fast paths.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcim/bitvector.hpp"
#include "tcim/graph.hpp"
#include "tcim/slicing.hpp"

namespace tcim::testing {

// "0110" -> bits 1 and 2 set; character position == bit index.
inline BitVector bitvec_from_string(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '1') v.set(i);
  return v;
}

inline SlicePayload payload_from_string(std::string_view s) {
  SlicePayload p;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '1') p.words[i / 64] |= std::uint64_t{1} << (i % 64);
  return p;
}

// The 4-vertex, 5-edge, 2-triangle demo graph used throughout.
inline Graph tiny_graph() {
  return graph_from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
}

inline const char* tiny_graph_text() {
  return "0 1\n0 2\n1 2\n1 3\n2 3\n";
}

inline Graph complete_graph(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return graph_from_edges(n, pairs);
}

inline Graph path_graph(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return graph_from_edges(n, pairs);
}

// Erdos-Renyi G(n, p) with a fixed seed.
inline Graph er_graph(VertexId n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      if (coin(rng)) pairs.emplace_back(i, j);
  return graph_from_edges(n, pairs);
}

// Exhaustive triple-loop triangle count; cubic, test-only oracle.
inline std::uint64_t brute_force_triangles(const Graph& g) {
  std::set<std::pair<VertexId, VertexId>> adj;
  for (const Edge& e : g.edges) adj.insert({e.u, e.v});
  auto connected = [&](VertexId a, VertexId b) {
    return adj.count({std::min(a, b), std::max(a, b)}) > 0;
  };
  std::uint64_t count = 0;
  for (VertexId i = 0; i < g.num_vertices; ++i)
    for (VertexId j = i + 1; j < g.num_vertices; ++j)
      for (VertexId k = j + 1; k < g.num_vertices; ++k)
        if (connected(i, j) && connected(j, k) && connected(i, k)) ++count;
  return count;
}

// Window-by-window validity check straight from the definition: a window is
// valid iff some position in [k*s, (k+1)*s) within the line is set.
inline bool window_has_set_bit(const BitVector& line, std::uint32_t k,
                               std::uint32_t s) {
  for (std::uint64_t t = std::uint64_t{k} * s;
       t < std::uint64_t{k + 1} * s && t < line.size(); ++t)
    if (line.test(t)) return true;
  return false;
}

// Reference LRU over abstract keys: plain vector, most recent at front.
class RefLru {
 public:
  explicit RefLru(std::size_t capacity) : capacity_(capacity) {}

  struct Outcome {
    bool hit = false;
    bool evicted = false;
    std::uint64_t victim = 0;
  };

  Outcome touch(std::uint64_t key) {
    Outcome out;
    auto it = std::find(order_.begin(), order_.end(), key);
    if (it != order_.end()) {
      out.hit = true;
      order_.erase(it);
      order_.insert(order_.begin(), key);
      return out;
    }
    if (order_.size() >= capacity_) {
      out.evicted = true;
      out.victim = order_.back();
      order_.pop_back();
    }
    order_.insert(order_.begin(), key);
    return out;
  }

  std::size_t size() const { return order_.size(); }

 private:
  std::size_t capacity_;
  std::vector<std::uint64_t> order_;
};

}  // namespace tcim::testing
