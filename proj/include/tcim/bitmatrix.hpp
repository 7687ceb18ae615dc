#pragma once

#include <cstdint>
#include <vector>

#include "tcim/bitvector.hpp"
#include "tcim/graph.hpp"

namespace tcim {

// Strictly upper-triangular adjacency bit matrix: bit (i, j) is set iff
// (i, j) is an edge and i < j. Keeps both row-major and column-major views;
// they agree by construction (col(j).test(i) == row(i).test(j)). Immutable
// after construction.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(VertexId n, std::vector<BitVector> rows,
            std::vector<BitVector> cols);

  VertexId n() const { return n_; }
  const BitVector& row(VertexId i) const { return rows_[i]; }
  const BitVector& col(VertexId j) const { return cols_[j]; }
  bool test(VertexId i, VertexId j) const { return rows_[i].test(j); }

  // Set edges, equal to the source graph's edge count.
  std::uint64_t num_set_bits() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  VertexId n_ = 0;
  std::vector<BitVector> rows_;
  std::vector<BitVector> cols_;
};

// Builds the oriented matrix for g. The two dense views need
// 2*n*ceil(n/64)*8 bytes; requests beyond max_bytes raise ResourceError
// instead of attempting the allocation.
BitMatrix to_bitmatrix(const Graph& g,
                       std::uint64_t max_bytes = std::uint64_t{4} << 30);

}  // namespace tcim
