#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tcim {

using VertexId = std::uint32_t;

// Undirected edge stored canonically with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// How raw file vertex ids are mapped to [0, num_vertices).
//   identity:          ids are kept; num_vertices = max id + 1.
//   dense_compaction:  sorted distinct ids -> 0..n-1 (default; SNAP ids are
//                      often sparse).
//   degree_descending: ids ordered by (degree desc, original id asc).
enum class RelabelMode { identity, dense_compaction, degree_descending };

const char* to_string(RelabelMode mode);
RelabelMode relabel_mode_from_string(std::string_view name);

// Deduplicated simple undirected graph. Edges are canonical (u < v), sorted
// row-major, unique, with no self-loops. Immutable after construction and
// safe to share read-only across threads.
struct Graph {
  VertexId num_vertices = 0;
  std::vector<Edge> edges;

  std::uint64_t num_edges() const { return edges.size(); }
};

// Parses a plain-text edge list: one `u v` pair per line, arbitrary
// whitespace separators, lines whose first non-blank byte is '#' are
// comments. Self-loops are dropped; duplicate and reversed edges merge.
// Throws ParseError (with line number) on malformed tokens or negative ids,
// and rejects ids that would need more than 2^31 vertices.
Graph parse_edge_list(std::istream& in,
                      RelabelMode mode = RelabelMode::dense_compaction);
Graph parse_edge_list(std::string_view text,
                      RelabelMode mode = RelabelMode::dense_compaction);
Graph load_edge_list(const std::string& path,
                     RelabelMode mode = RelabelMode::dense_compaction);

// Builds a Graph from raw pairs: canonicalizes, drops self-loops, dedupes.
// Vertex ids must be < num_vertices.
Graph graph_from_edges(VertexId num_vertices,
                       const std::vector<std::pair<VertexId, VertexId>>& pairs);

// Per-vertex degree over the deduplicated undirected edge set.
std::vector<std::uint32_t> vertex_degrees(const Graph& g);

}  // namespace tcim
