#include "tcim/tc_engine.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "tcim/errors.hpp"

namespace tcim {

BitCounter::BitCounter() {
  for (unsigned b = 0; b < 256; ++b)
    lut_[b] = static_cast<std::uint8_t>(std::popcount(b));
}

std::uint64_t BitCounter::count_bytes(
    std::span<const std::uint8_t> bytes) const {
  std::uint64_t total = 0;
  for (std::uint8_t b : bytes) total += lut_[b];
  return total;
}

std::uint64_t BitCounter::count_word(std::uint64_t word) const {
  std::uint64_t total = 0;
  for (int i = 0; i < 8; ++i)
    total += lut_[static_cast<std::uint8_t>(word >> (8 * i))];
  return total;
}

std::uint64_t bitcount(const BitVector& v) { return v.popcount(); }

std::uint64_t and_bitcount(const SlicePayload& a, std::uint32_t a_width,
                           const SlicePayload& b, std::uint32_t b_width) {
  if (a_width != b_width) {
    throw ContractError("and_bitcount width mismatch: " +
                        std::to_string(a_width) + " vs " +
                        std::to_string(b_width));
  }
  return (a & b).popcount();
}

namespace {

std::uint64_t and_popcount(const BitVector& a, const BitVector& b) {
  std::uint64_t total = 0;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w)
    total += std::popcount(wa[w] & wb[w]);
  return total;
}

}  // namespace

TcResult count_triangles_bitwise(const BitMatrix& m, bool want_per_edge) {
  TcResult result;
  if (want_per_edge) result.per_edge.emplace();
  for (VertexId i = 0; i < m.n(); ++i) {
    m.row(i).for_each_set_bit([&](std::size_t j) {
      const std::uint64_t c =
          and_popcount(m.row(i), m.col(static_cast<VertexId>(j)));
      result.triangle_count += c;
      if (result.per_edge)
        result.per_edge->emplace_back(Edge{i, static_cast<VertexId>(j)}, c);
    });
  }
  return result;
}

TcResult count_triangles_bitwise(const CompressedGraph& cg,
                                 bool want_per_edge) {
  TcResult result;
  if (want_per_edge) result.per_edge.emplace();
  for (const Edge& e : cg.edges()) {
    const auto row = cg.row_slices(e.u);
    const auto col = cg.col_slices(e.v);
    std::uint64_t c = 0;
    std::size_t a = 0, b = 0;
    while (a < row.size() && b < col.size()) {
      if (row[a].k < col[b].k) {
        ++a;
      } else if (row[a].k > col[b].k) {
        ++b;
      } else {
        c += (row[a].payload & col[b].payload).popcount();
        ++a;
        ++b;
      }
    }
    result.triangle_count += c;
    if (result.per_edge) result.per_edge->emplace_back(e, c);
  }
  return result;
}

std::uint64_t oracle_trace_a3(const Graph& g, VertexId max_vertices) {
  if (g.num_vertices > max_vertices) {
    throw SizeError("oracle_trace_a3: " + std::to_string(g.num_vertices) +
                    " vertices exceeds the dense guard of " +
                    std::to_string(max_vertices) +
                    "; use oracle_edge_intersection");
  }
  // Symmetric adjacency rows; A^2[i][j] = popcount(row_i AND row_j), so
  // trace(A^3) = sum over ordered adjacent pairs = 2 * sum over edges.
  std::vector<BitVector> rows(g.num_vertices, BitVector(g.num_vertices));
  for (const Edge& e : g.edges) {
    rows[e.u].set(e.v);
    rows[e.v].set(e.u);
  }
  std::uint64_t trace = 0;
  for (const Edge& e : g.edges) trace += 2 * and_popcount(rows[e.u], rows[e.v]);
  if (trace % 6 != 0) {
    throw ContractError("trace(A^3) = " + std::to_string(trace) +
                        " is not divisible by 6");
  }
  return trace / 6;
}

std::uint64_t oracle_edge_intersection(const Graph& g) {
  // Forward-neighbor lists: N+(v) = { w > v : (v, w) in E }, sorted.
  std::vector<std::uint32_t> head(std::uint64_t{g.num_vertices} + 1, 0);
  for (const Edge& e : g.edges) ++head[std::uint64_t{e.u} + 1];
  for (VertexId v = 0; v < g.num_vertices; ++v)
    head[std::uint64_t{v} + 1] += head[v];
  std::vector<VertexId> fwd(g.edges.size());
  {
    std::vector<std::uint32_t> cursor(head.begin(), head.end() - 1);
    for (const Edge& e : g.edges) fwd[cursor[e.u]++] = e.v;  // sorted input
  }

  std::uint64_t triangles = 0;
  for (const Edge& e : g.edges) {
    std::uint32_t a = head[e.u], a_end = head[std::uint64_t{e.u} + 1];
    std::uint32_t b = head[e.v], b_end = head[std::uint64_t{e.v} + 1];
    while (a < a_end && b < b_end) {
      if (fwd[a] < fwd[b]) {
        ++a;
      } else if (fwd[a] > fwd[b]) {
        ++b;
      } else {
        ++triangles;
        ++a;
        ++b;
      }
    }
  }
  return triangles;
}

}  // namespace tcim
