#include "tcim/bitmatrix.hpp"

#include <new>
#include <string>

#include "tcim/errors.hpp"

namespace tcim {

BitMatrix::BitMatrix(VertexId n, std::vector<BitVector> rows,
                     std::vector<BitVector> cols)
    : n_(n), rows_(std::move(rows)), cols_(std::move(cols)) {}

std::uint64_t BitMatrix::num_set_bits() const {
  std::uint64_t total = 0;
  for (const BitVector& r : rows_) total += r.popcount();
  return total;
}

BitMatrix to_bitmatrix(const Graph& g, std::uint64_t max_bytes) {
  const std::uint64_t n = g.num_vertices;
  const std::uint64_t words_per_line = (n + 63) / 64;
  const std::uint64_t need = 2 * n * words_per_line * 8;
  if (need > max_bytes) {
    throw ResourceError("dense bit matrix for " + std::to_string(n) +
                        " vertices needs " + std::to_string(need) +
                        " bytes (limit " + std::to_string(max_bytes) + ")");
  }
  try {
    std::vector<BitVector> rows(n, BitVector(n));
    std::vector<BitVector> cols(n, BitVector(n));
    for (const Edge& e : g.edges) {
      rows[e.u].set(e.v);
      cols[e.v].set(e.u);
    }
    return BitMatrix(g.num_vertices, std::move(rows), std::move(cols));
  } catch (const std::bad_alloc&) {
    throw ResourceError("allocation failed for dense bit matrix of " +
                        std::to_string(n) + " vertices");
  }
}

}  // namespace tcim
