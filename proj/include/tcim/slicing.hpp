#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcim/bitmatrix.hpp"
#include "tcim/bitvector.hpp"
#include "tcim/graph.hpp"

namespace tcim {

inline constexpr std::array<std::uint32_t, 5> kSupportedSliceSizes{8, 16, 32,
                                                                   64, 128};

constexpr bool is_supported_slice_size(std::uint32_t s) {
  return s == 8 || s == 16 || s == 32 || s == 64 || s == 128;
}

// Content of one slice window, up to 128 bits. Window bit t sits in
// words[t/64] at position t%64; bits past the slice size stay zero.
struct SlicePayload {
  std::array<std::uint64_t, 2> words{0, 0};

  bool any() const { return (words[0] | words[1]) != 0; }
  std::uint64_t popcount() const {
    return std::popcount(words[0]) + std::popcount(words[1]);
  }
  friend SlicePayload operator&(const SlicePayload& a, const SlicePayload& b) {
    return SlicePayload{{a.words[0] & b.words[0], a.words[1] & b.words[1]}};
  }
  friend bool operator==(const SlicePayload&, const SlicePayload&) = default;
};

enum class LineKind : std::uint8_t { row = 0, column = 1 };

// A valid slice of one line: window index k plus its nonzero payload.
struct SliceEntry {
  std::uint32_t k = 0;
  SlicePayload payload;
  friend bool operator==(const SliceEntry&, const SliceEntry&) = default;
};

// Cuts a line of bits into slice_size-bit windows and returns the valid
// (nonzero) ones in ascending k. The last window is zero-padded.
// slice_size must be one of kSupportedSliceSizes (ConfigError otherwise).
std::vector<SliceEntry> slice_line(const BitVector& bits,
                                   std::uint32_t slice_size);

// Sparsity-compressed oriented adjacency matrix: exactly the valid slices of
// every row and every column, plus the oriented edge list in row-major
// order. Lossless, deterministic, immutable once built.
class CompressedGraph {
 public:
  CompressedGraph() = default;

  VertexId n() const { return n_; }
  std::uint32_t slice_size() const { return slice_size_; }
  // Windows per line: ceil(n / slice_size).
  std::uint32_t windows_per_line() const { return windows_per_line_; }

  std::uint64_t n_row_slices() const { return row_entries_.size(); }
  std::uint64_t n_col_slices() const { return col_entries_.size(); }
  // N_VS: row and column slices counted jointly.
  std::uint64_t n_valid_slices() const {
    return n_row_slices() + n_col_slices();
  }

  std::span<const Edge> edges() const { return edges_; }

  // Valid slices of one line, ascending in k.
  std::span<const SliceEntry> row_slices(VertexId i) const {
    return {row_entries_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const SliceEntry> col_slices(VertexId j) const {
    return {col_entries_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
  }

  // Payload of slice (line, k), or nullptr when that window is invalid.
  const SlicePayload* find_row_slice(VertexId i, std::uint32_t k) const;
  const SlicePayload* find_col_slice(VertexId j, std::uint32_t k) const;

  // Largest per-row valid-slice count; sizing hint for the array row region.
  std::uint32_t max_row_slices() const;

  friend bool operator==(const CompressedGraph&,
                         const CompressedGraph&) = default;

  static CompressedGraph build(VertexId n, std::uint32_t slice_size,
                               std::vector<std::uint64_t> row_ptr,
                               std::vector<SliceEntry> row_entries,
                               std::vector<std::uint64_t> col_ptr,
                               std::vector<SliceEntry> col_entries,
                               std::vector<Edge> edges);

 private:
  VertexId n_ = 0;
  std::uint32_t slice_size_ = 64;
  std::uint32_t windows_per_line_ = 0;
  // CSR over lines: slices of line i live at entries[ptr[i]..ptr[i+1]).
  std::vector<std::uint64_t> row_ptr_;
  std::vector<SliceEntry> row_entries_;
  std::vector<std::uint64_t> col_ptr_;
  std::vector<SliceEntry> col_entries_;
  std::vector<Edge> edges_;
};

// Compresses a dense oriented matrix.
CompressedGraph compress(const BitMatrix& m, std::uint32_t slice_size);

// Same result as compress(to_bitmatrix(g), slice_size) without materializing
// the dense matrix; this is the path for large graphs.
CompressedGraph compress(const Graph& g, std::uint32_t slice_size);

// Rebuilds the dense matrix; row and column views are each reconstructed
// from their own slice set.
BitMatrix decompress(const CompressedGraph& cg);

// Storage footprint: N_VS * (slice_size/8 + 4) bytes, with a flat 4-byte
// index per valid slice.
std::uint64_t compressed_size(const CompressedGraph& cg);

// N_VS over all possible row+column windows: N_VS / (2 * n * ceil(n/|S|)).
// Zero for an empty matrix.
double valid_slice_fraction(const CompressedGraph& cg);

// Binary serialization; byte-exact layout documented in docs/formats.md.
void save_compressed(const CompressedGraph& cg, std::ostream& out);
void save_compressed(const CompressedGraph& cg, const std::string& path);
CompressedGraph load_compressed(std::istream& in);
CompressedGraph load_compressed(const std::string& path);

}  // namespace tcim
