#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tcim/bitmatrix.hpp"
#include "tcim/bitvector.hpp"
#include "tcim/graph.hpp"
#include "tcim/slicing.hpp"

namespace tcim {

// Triangle count plus, on request, each oriented edge's contribution
// (the number of triangles whose (min, max) vertex pair is that edge).
struct TcResult {
  std::uint64_t triangle_count = 0;
  std::optional<std::vector<std::pair<Edge, std::uint64_t>>> per_edge;
};

// Byte-at-a-time popcount through a 256-entry lookup table. The fast paths
// below use native popcount; this table defines the count they must match
// and the unit of LUT-access accounting.
class BitCounter {
 public:
  BitCounter();
  std::uint8_t lut(std::uint8_t byte) const { return lut_[byte]; }
  std::uint64_t count_bytes(std::span<const std::uint8_t> bytes) const;
  std::uint64_t count_word(std::uint64_t word) const;

 private:
  std::array<std::uint8_t, 256> lut_;
};

// Number of set bits in v.
std::uint64_t bitcount(const BitVector& v);

// 8-bit LUT accesses a hardware bit counter spends on a width-bit vector.
constexpr std::uint64_t bitcount_lut_accesses(std::uint64_t width_bits) {
  return (width_bits + 7) / 8;
}

// popcount(a AND b). Slices must have equal widths (ContractError).
std::uint64_t and_bitcount(const SlicePayload& a, std::uint32_t a_width,
                           const SlicePayload& b, std::uint32_t b_width);

// Counts triangles over the oriented matrix: for every oriented edge (i, j),
// accumulates popcount(row i AND column j). Exact for the undirected graph.
TcResult count_triangles_bitwise(const BitMatrix& m, bool want_per_edge = false);

// Same count over the compressed form; only aligned valid slice pairs
// (row i slice k, column j slice k) are touched.
TcResult count_triangles_bitwise(const CompressedGraph& cg,
                                 bool want_per_edge = false);

// trace(A^3)/6 over the symmetric adjacency matrix. Refuses graphs larger
// than max_vertices (SizeError); a trace not divisible by 6 raises
// ContractError.
std::uint64_t oracle_trace_a3(const Graph& g, VertexId max_vertices = 4096);

// Edge iterator with sorted forward-neighbor list intersection; scales to
// large sparse graphs.
std::uint64_t oracle_edge_intersection(const Graph& g);

}  // namespace tcim
