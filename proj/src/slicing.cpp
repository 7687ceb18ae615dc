#include "tcim/slicing.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "tcim/errors.hpp"

namespace tcim {

namespace {

void require_slice_size(std::uint32_t s) {
  if (!is_supported_slice_size(s)) {
    throw ConfigError("unsupported slice size " + std::to_string(s) +
                      " (expected 8, 16, 32, 64 or 128)");
  }
}

std::uint32_t windows_for(VertexId n, std::uint32_t s) {
  return static_cast<std::uint32_t>((std::uint64_t{n} + s - 1) / s);
}

// Bits [k*s, (k+1)*s) of `bits`, zero-padded past size(). Supported sizes
// never straddle a word boundary: s <= 64 divides 64 and windows start at
// multiples of s; s == 128 covers two aligned words.
SlicePayload extract_window(const BitVector& bits, std::uint32_t k,
                            std::uint32_t s) {
  SlicePayload p;
  const std::uint64_t start = std::uint64_t{k} * s;
  const std::size_t w = static_cast<std::size_t>(start / 64);
  if (s == 128) {
    if (w < bits.num_words()) p.words[0] = bits.word(w);
    if (w + 1 < bits.num_words()) p.words[1] = bits.word(w + 1);
  } else if (s == 64) {
    if (w < bits.num_words()) p.words[0] = bits.word(w);
  } else {
    if (w < bits.num_words()) {
      const std::uint32_t shift = start % 64;
      const std::uint64_t mask = (std::uint64_t{1} << s) - 1;
      p.words[0] = (bits.word(w) >> shift) & mask;
    }
  }
  return p;
}

struct CsrBuilder {
  std::vector<std::uint64_t> ptr;
  std::vector<SliceEntry> entries;

  explicit CsrBuilder(VertexId n) : ptr(std::uint64_t{n} + 1, 0) {}

  // Lines must be finished in ascending order.
  void finish_line(VertexId line) { ptr[std::uint64_t{line} + 1] = entries.size(); }

  void seal(VertexId n) {
    for (VertexId i = 0; i < n; ++i)
      ptr[std::uint64_t{i} + 1] = std::max(ptr[std::uint64_t{i} + 1], ptr[i]);
  }
};

// Groups (line, position) pairs, already sorted by (line, position), into
// valid slices. Positions are offsets along the line.
void accumulate_slices(const std::vector<std::pair<VertexId, VertexId>>& hits,
                       std::uint32_t s, CsrBuilder& csr) {
  SlicePayload acc;
  std::uint32_t acc_k = 0;
  VertexId acc_line = 0;
  bool open = false;

  auto flush = [&]() {
    if (open && acc.any()) {
      csr.entries.push_back(SliceEntry{acc_k, acc});
      csr.ptr[std::uint64_t{acc_line} + 1] = csr.entries.size();
    }
    acc = SlicePayload{};
  };

  for (const auto& [line, pos] : hits) {
    const std::uint32_t k = pos / s;
    if (!open || line != acc_line || k != acc_k) {
      flush();
      acc_line = line;
      acc_k = k;
      open = true;
    }
    const std::uint32_t t = pos % s;
    acc.words[t / 64] |= std::uint64_t{1} << (t % 64);
  }
  flush();
}

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw ParseError("compressed graph stream truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw ParseError("compressed graph stream truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

constexpr char kMagic[4] = {'T', 'C', 'S', 'G'};
constexpr std::uint32_t kFormatVersion = 1;

void write_record(std::ostream& out, LineKind kind, VertexId line,
                  const SliceEntry& e, std::uint32_t s) {
  const char kind_byte = static_cast<char>(kind);
  out.put(kind_byte);
  write_u32(out, line);
  write_u32(out, e.k);
  for (std::uint32_t byte = 0; byte < s / 8; ++byte) {
    const std::uint64_t word = e.payload.words[byte / 8];
    out.put(static_cast<char>((word >> (8 * (byte % 8))) & 0xff));
  }
}

const SlicePayload* find_in(std::span<const SliceEntry> entries,
                            std::uint32_t k) {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), k,
      [](const SliceEntry& e, std::uint32_t key) { return e.k < key; });
  if (it == entries.end() || it->k != k) return nullptr;
  return &it->payload;
}

}  // namespace

std::vector<SliceEntry> slice_line(const BitVector& bits,
                                   std::uint32_t slice_size) {
  require_slice_size(slice_size);
  std::vector<SliceEntry> out;
  const std::uint32_t windows =
      windows_for(static_cast<VertexId>(bits.size()), slice_size);
  for (std::uint32_t k = 0; k < windows; ++k) {
    SlicePayload p = extract_window(bits, k, slice_size);
    if (p.any()) out.push_back(SliceEntry{k, p});
  }
  return out;
}

const SlicePayload* CompressedGraph::find_row_slice(VertexId i,
                                                    std::uint32_t k) const {
  return find_in(row_slices(i), k);
}

const SlicePayload* CompressedGraph::find_col_slice(VertexId j,
                                                    std::uint32_t k) const {
  return find_in(col_slices(j), k);
}

std::uint32_t CompressedGraph::max_row_slices() const {
  std::uint32_t best = 0;
  for (VertexId i = 0; i < n_; ++i) {
    best = std::max(best,
                    static_cast<std::uint32_t>(row_ptr_[i + 1] - row_ptr_[i]));
  }
  return best;
}

CompressedGraph CompressedGraph::build(VertexId n, std::uint32_t slice_size,
                                       std::vector<std::uint64_t> row_ptr,
                                       std::vector<SliceEntry> row_entries,
                                       std::vector<std::uint64_t> col_ptr,
                                       std::vector<SliceEntry> col_entries,
                                       std::vector<Edge> edges) {
  require_slice_size(slice_size);
  CompressedGraph cg;
  cg.n_ = n;
  cg.slice_size_ = slice_size;
  cg.windows_per_line_ = windows_for(n, slice_size);
  cg.row_ptr_ = std::move(row_ptr);
  cg.row_entries_ = std::move(row_entries);
  cg.col_ptr_ = std::move(col_ptr);
  cg.col_entries_ = std::move(col_entries);
  cg.edges_ = std::move(edges);
  return cg;
}

CompressedGraph compress(const BitMatrix& m, std::uint32_t slice_size) {
  require_slice_size(slice_size);
  const VertexId n = m.n();

  CsrBuilder rows(n);
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i) {
    for (const SliceEntry& e : slice_line(m.row(i), slice_size))
      rows.entries.push_back(e);
    rows.finish_line(i);
    m.row(i).for_each_set_bit([&](std::size_t j) {
      edges.push_back(Edge{i, static_cast<VertexId>(j)});
    });
  }

  CsrBuilder cols(n);
  for (VertexId j = 0; j < n; ++j) {
    for (const SliceEntry& e : slice_line(m.col(j), slice_size))
      cols.entries.push_back(e);
    cols.finish_line(j);
  }

  return CompressedGraph::build(n, slice_size, std::move(rows.ptr),
                                std::move(rows.entries), std::move(cols.ptr),
                                std::move(cols.entries), std::move(edges));
}

CompressedGraph compress(const Graph& g, std::uint32_t slice_size) {
  require_slice_size(slice_size);
  const VertexId n = g.num_vertices;

  // Row side: edges are already sorted by (u, v); bit j of row u is set.
  std::vector<std::pair<VertexId, VertexId>> hits;
  hits.reserve(g.edges.size());
  for (const Edge& e : g.edges) hits.emplace_back(e.u, e.v);
  CsrBuilder rows(n);
  accumulate_slices(hits, slice_size, rows);
  rows.seal(n);

  // Column side: bit i of column v is set; resort by (v, u).
  for (auto& h : hits) std::swap(h.first, h.second);
  std::sort(hits.begin(), hits.end());
  CsrBuilder cols(n);
  accumulate_slices(hits, slice_size, cols);
  cols.seal(n);

  return CompressedGraph::build(n, slice_size, std::move(rows.ptr),
                                std::move(rows.entries), std::move(cols.ptr),
                                std::move(cols.entries), g.edges);
}

BitMatrix decompress(const CompressedGraph& cg) {
  const VertexId n = cg.n();
  const std::uint32_t s = cg.slice_size();
  std::vector<BitVector> rows(n, BitVector(n));
  std::vector<BitVector> cols(n, BitVector(n));
  auto restore = [&](std::span<const SliceEntry> entries, BitVector& line) {
    for (const SliceEntry& e : entries) {
      for (std::uint32_t t = 0; t < s; ++t) {
        if ((e.payload.words[t / 64] >> (t % 64)) & 1)
          line.set(std::uint64_t{e.k} * s + t);
      }
    }
  };
  for (VertexId i = 0; i < n; ++i) restore(cg.row_slices(i), rows[i]);
  for (VertexId j = 0; j < n; ++j) restore(cg.col_slices(j), cols[j]);
  return BitMatrix(n, std::move(rows), std::move(cols));
}

std::uint64_t compressed_size(const CompressedGraph& cg) {
  return cg.n_valid_slices() * (cg.slice_size() / 8 + 4);
}

double valid_slice_fraction(const CompressedGraph& cg) {
  const std::uint64_t windows =
      2 * std::uint64_t{cg.n()} * cg.windows_per_line();
  if (windows == 0) return 0.0;
  return static_cast<double>(cg.n_valid_slices()) /
         static_cast<double>(windows);
}

void save_compressed(const CompressedGraph& cg, std::ostream& out) {
  out.write(kMagic, 4);
  write_u32(out, kFormatVersion);
  write_u32(out, cg.n());
  write_u32(out, cg.slice_size());
  write_u64(out, cg.n_valid_slices());
  for (VertexId i = 0; i < cg.n(); ++i)
    for (const SliceEntry& e : cg.row_slices(i))
      write_record(out, LineKind::row, i, e, cg.slice_size());
  for (VertexId j = 0; j < cg.n(); ++j)
    for (const SliceEntry& e : cg.col_slices(j))
      write_record(out, LineKind::column, j, e, cg.slice_size());
  if (!out) throw ResourceError("write failed while saving compressed graph");
}

void save_compressed(const CompressedGraph& cg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot open '" + path + "' for writing");
  save_compressed(cg, out);
}

CompressedGraph load_compressed(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic))
    throw ParseError("not a compressed graph stream (bad magic)");
  const std::uint32_t version = read_u32(in);
  if (version != kFormatVersion)
    throw ParseError("unsupported compressed graph version " +
                     std::to_string(version));
  const VertexId n = read_u32(in);
  const std::uint32_t s = read_u32(in);
  require_slice_size(s);
  const std::uint64_t n_vs = read_u64(in);
  const std::uint32_t windows = windows_for(n, s);

  CsrBuilder rows(n);
  CsrBuilder cols(n);
  std::vector<Edge> edges;

  int last_kind = -1;
  std::int64_t last_line = -1;
  std::int64_t last_k = -1;
  for (std::uint64_t rec = 0; rec < n_vs; ++rec) {
    const int kind = in.get();
    if (kind == std::char_traits<char>::eof())
      throw ParseError("compressed graph stream truncated");
    if (kind != 0 && kind != 1)
      throw ParseError("bad record kind byte in compressed graph stream");
    const VertexId line = read_u32(in);
    const std::uint32_t k = read_u32(in);
    if (line >= n || k >= windows)
      throw ParseError("slice index out of range in compressed graph stream");
    if (kind < last_kind ||
        (kind == last_kind &&
         (line < last_line || (std::int64_t{line} == last_line &&
                               std::int64_t{k} <= last_k))))
      throw ParseError("slice records out of order in compressed graph stream");
    last_kind = kind;
    last_line = line;
    last_k = k;

    SlicePayload p;
    for (std::uint32_t byte = 0; byte < s / 8; ++byte) {
      const int c = in.get();
      if (c == std::char_traits<char>::eof())
        throw ParseError("compressed graph stream truncated");
      p.words[byte / 8] |= std::uint64_t{static_cast<unsigned char>(c)}
                           << (8 * (byte % 8));
    }
    if (!p.any())
      throw ParseError("zero payload stored in compressed graph stream");
    // Padding bits past n in the final window must be zero.
    const std::uint64_t base = std::uint64_t{k} * s;
    for (std::uint32_t t = 0; t < s; ++t) {
      if (base + t >= n && ((p.words[t / 64] >> (t % 64)) & 1))
        throw ParseError("payload bit beyond matrix size in stream");
    }

    CsrBuilder& side = kind == 0 ? rows : cols;
    side.entries.push_back(SliceEntry{k, p});
    side.ptr[std::uint64_t{line} + 1] = side.entries.size();
    if (kind == 0) {
      for (std::uint32_t t = 0; t < s; ++t) {
        if ((p.words[t / 64] >> (t % 64)) & 1)
          edges.push_back(Edge{line, static_cast<VertexId>(base + t)});
      }
    }
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw ParseError("trailing bytes after compressed graph records");

  rows.seal(n);
  cols.seal(n);
  return CompressedGraph::build(n, s, std::move(rows.ptr),
                                std::move(rows.entries), std::move(cols.ptr),
                                std::move(cols.entries), std::move(edges));
}

CompressedGraph load_compressed(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_compressed(in);
}

}  // namespace tcim
