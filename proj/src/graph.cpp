#include "tcim/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "tcim/errors.hpp"

namespace tcim {

namespace {

constexpr std::int64_t kMaxVertexId = (std::int64_t{1} << 31) - 1;

struct RawPairs {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // self-loops kept
  std::vector<std::int64_t> ids;                             // every endpoint
};

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

bool is_comment(std::string_view line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return false;
}

std::int64_t parse_id(std::string_view token, std::uint64_t line_no) {
  if (token.empty() || token[0] == '-') {
    throw ParseError("line " + std::to_string(line_no) +
                     ": negative or empty vertex id '" + std::string(token) +
                     "'");
  }
  std::int64_t value = 0;
  for (char c : token) {
    if (c < '0' || c > '9') {
      throw ParseError("line " + std::to_string(line_no) +
                       ": malformed vertex id '" + std::string(token) + "'");
    }
    value = value * 10 + (c - '0');
    if (value > kMaxVertexId) {
      throw ParseError("line " + std::to_string(line_no) + ": vertex id '" +
                       std::string(token) + "' exceeds the 2^31 vertex cap");
    }
  }
  return value;
}

RawPairs read_pairs(std::istream& in) {
  RawPairs raw;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || is_comment(line)) continue;
    std::istringstream tokens(line);
    std::string a, b, extra;
    tokens >> a >> b;
    if (b.empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two vertex ids");
    }
    if (tokens >> extra) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two vertex ids, got extra token '" + extra +
                       "'");
    }
    const std::int64_t u = parse_id(a, line_no);
    const std::int64_t v = parse_id(b, line_no);
    raw.pairs.emplace_back(u, v);
    raw.ids.push_back(u);
    raw.ids.push_back(v);
  }
  return raw;
}

std::vector<Edge> canonical_edges(
    std::vector<Edge>&& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return std::move(edges);
}

// Maps raw ids through `new_id` and canonicalizes. Self-loops dropped here.
std::vector<Edge> map_edges(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
    const std::unordered_map<std::int64_t, VertexId>& new_id) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    VertexId u = new_id.at(a);
    VertexId v = new_id.at(b);
    if (u > v) std::swap(u, v);
    edges.push_back(Edge{u, v});
  }
  return canonical_edges(std::move(edges));
}

Graph build_graph(const RawPairs& raw, RelabelMode mode) {
  std::vector<std::int64_t> distinct = raw.ids;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  std::unordered_map<std::int64_t, VertexId> new_id;
  new_id.reserve(distinct.size());
  VertexId num_vertices = 0;

  switch (mode) {
    case RelabelMode::identity: {
      for (std::int64_t id : distinct)
        new_id.emplace(id, static_cast<VertexId>(id));
      num_vertices =
          distinct.empty() ? 0 : static_cast<VertexId>(distinct.back() + 1);
      break;
    }
    case RelabelMode::dense_compaction: {
      for (std::size_t i = 0; i < distinct.size(); ++i)
        new_id.emplace(distinct[i], static_cast<VertexId>(i));
      num_vertices = static_cast<VertexId>(distinct.size());
      break;
    }
    case RelabelMode::degree_descending: {
      // Degrees are taken over the deduplicated simple graph, so parallel
      // and reversed duplicates in the file do not skew the ordering.
      std::unordered_map<std::int64_t, VertexId> compact;
      compact.reserve(distinct.size());
      for (std::size_t i = 0; i < distinct.size(); ++i)
        compact.emplace(distinct[i], static_cast<VertexId>(i));
      const std::vector<Edge> simple = map_edges(raw.pairs, compact);
      std::vector<std::uint32_t> degree(distinct.size(), 0);
      for (const Edge& e : simple) {
        ++degree[e.u];
        ++degree[e.v];
      }
      std::vector<std::size_t> order(distinct.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         if (degree[a] != degree[b])
                           return degree[a] > degree[b];
                         return distinct[a] < distinct[b];
                       });
      for (std::size_t rank = 0; rank < order.size(); ++rank)
        new_id.emplace(distinct[order[rank]], static_cast<VertexId>(rank));
      num_vertices = static_cast<VertexId>(distinct.size());
      break;
    }
  }

  Graph g;
  g.num_vertices = num_vertices;
  g.edges = map_edges(raw.pairs, new_id);
  return g;
}

}  // namespace

const char* to_string(RelabelMode mode) {
  switch (mode) {
    case RelabelMode::identity:
      return "identity";
    case RelabelMode::dense_compaction:
      return "dense-compaction";
    case RelabelMode::degree_descending:
      return "degree-descending";
  }
  return "unknown";
}

RelabelMode relabel_mode_from_string(std::string_view name) {
  if (name == "identity") return RelabelMode::identity;
  if (name == "dense-compaction") return RelabelMode::dense_compaction;
  if (name == "degree-descending") return RelabelMode::degree_descending;
  throw ConfigError("unknown relabel mode '" + std::string(name) +
                    "' (expected identity, dense-compaction or "
                    "degree-descending)");
}

Graph parse_edge_list(std::istream& in, RelabelMode mode) {
  return build_graph(read_pairs(in), mode);
}

Graph parse_edge_list(std::string_view text, RelabelMode mode) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, mode);
}

Graph load_edge_list(const std::string& path, RelabelMode mode) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_edge_list(in, mode);
}

Graph graph_from_edges(
    VertexId num_vertices,
    const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a >= num_vertices || b >= num_vertices)
      throw ConfigError("edge endpoint out of range");
    if (a == b) continue;
    edges.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  Graph g;
  g.num_vertices = num_vertices;
  g.edges = canonical_edges(std::move(edges));
  return g;
}

std::vector<std::uint32_t> vertex_degrees(const Graph& g) {
  std::vector<std::uint32_t> degree(g.num_vertices, 0);
  for (const Edge& e : g.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  return degree;
}

}  // namespace tcim
