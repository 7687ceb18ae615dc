#include <doctest.h>

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tcim/errors.hpp"
#include "tcim/slicing.hpp"
#include "test_util.hpp"

using namespace tcim;
using namespace tcim::testing;

TEST_CASE("slice_line keeps only nonzero windows, ascending in k") {
  BitVector bits(384);
  for (std::uint64_t t = 192; t < 256; ++t) bits.set(t);
  for (std::uint64_t t = 320; t < 384; ++t) bits.set(t);
  auto slices = slice_line(bits, 64);
  REQUIRE(slices.size() == 2);
  CHECK(slices[0].k == 3);
  CHECK(slices[0].payload.words[0] == ~std::uint64_t{0});
  CHECK(slices[1].k == 5);
  CHECK(slices[1].payload.words[0] == ~std::uint64_t{0});
}

TEST_CASE("slice_line of an all-zero line is empty") {
  CHECK(slice_line(BitVector(512), 64).empty());
  CHECK(slice_line(BitVector(0), 64).empty());
}

TEST_CASE("slice_line zero-pads the trailing window") {
  // 20 bits, slice size 16: window 1 covers bits 16..31 but only 16..19 exist.
  BitVector bits(20);
  bits.set(17);
  auto slices = slice_line(bits, 16);
  REQUIRE(slices.size() == 1);
  CHECK(slices[0].k == 1);
  CHECK(slices[0].payload.words[0] == (std::uint64_t{1} << 1));
}

TEST_CASE("slice_line rejects unsupported slice sizes") {
  BitVector bits(32);
  bits.set(0);
  for (std::uint32_t s : {0u, 4u, 7u, 12u, 256u})
    CHECK_THROWS_AS(slice_line(bits, s), ConfigError);
  for (std::uint32_t s : kSupportedSliceSizes)
    CHECK_NOTHROW(slice_line(bits, s));
}

TEST_CASE("slice_line windows concatenate back to the original line") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint64_t n = 1 + rng() % 300;
    BitVector bits(n);
    for (std::uint64_t t = 0; t < n; ++t)
      if (rng() & 1) bits.set(t);
    for (std::uint32_t s : kSupportedSliceSizes) {
      auto slices = slice_line(bits, s);
      BitVector rebuilt(n);
      for (const SliceEntry& e : slices) {
        CHECK(e.payload.any());
        for (std::uint32_t b = 0; b < s; ++b) {
          bool bit = (e.payload.words[b / 64] >> (b % 64)) & 1;
          std::uint64_t t = std::uint64_t{e.k} * s + b;
          if (bit) {
            REQUIRE(t < n);  // padding bits must stay clear
            rebuilt.set(t);
          }
        }
      }
      CHECK(rebuilt == bits);
    }
  }
}

TEST_CASE("demo graph compresses to three row and three column slices") {
  CompressedGraph cg = compress(tiny_graph(), 8);
  CHECK(cg.n() == 4);
  CHECK(cg.windows_per_line() == 1);
  CHECK(cg.n_row_slices() == 3);
  CHECK(cg.n_col_slices() == 3);
  CHECK(cg.n_valid_slices() == 6);

  REQUIRE(cg.row_slices(0).size() == 1);
  CHECK(cg.row_slices(0)[0].payload == payload_from_string("0110"));
  CHECK(cg.row_slices(1)[0].payload == payload_from_string("0011"));
  CHECK(cg.row_slices(2)[0].payload == payload_from_string("0001"));
  CHECK(cg.row_slices(3).empty());

  CHECK(cg.col_slices(0).empty());
  CHECK(cg.col_slices(1)[0].payload == payload_from_string("1000"));
  CHECK(cg.col_slices(2)[0].payload == payload_from_string("1100"));
  CHECK(cg.col_slices(3)[0].payload == payload_from_string("0110"));

  CHECK(cg.max_row_slices() == 1);
  REQUIRE(cg.edges().size() == 5);
  CHECK(cg.edges()[0] == Edge{0, 1});
  CHECK(cg.edges()[4] == Edge{2, 3});
}

TEST_CASE("an edgeless graph compresses to nothing") {
  CompressedGraph cg = compress(Graph{6, {}}, 64);
  CHECK(cg.n_valid_slices() == 0);
  CHECK(cg.edges().empty());
  CHECK(cg.max_row_slices() == 0);
  CHECK(compressed_size(cg) == 0);
  CHECK(valid_slice_fraction(cg) == 0.0);
}

TEST_CASE("sparse and dense compression paths agree") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Graph g = er_graph(90, 0.05, seed);
    for (std::uint32_t s : kSupportedSliceSizes) {
      CompressedGraph from_graph = compress(g, s);
      CompressedGraph from_matrix = compress(to_bitmatrix(g), s);
      CHECK(from_graph == from_matrix);
    }
  }
}

TEST_CASE("decompress inverts compress on random matrices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = er_graph(70, 0.15, seed + 100);
    BitMatrix m = to_bitmatrix(g);
    for (std::uint32_t s : kSupportedSliceSizes)
      CHECK(decompress(compress(m, s)) == m);
  }
}

TEST_CASE("stored windows are exactly the windows holding a set bit") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Graph g = er_graph(50, 0.08, seed + 40);
    BitMatrix m = to_bitmatrix(g);
    for (std::uint32_t s : {8u, 16u}) {
      CompressedGraph cg = compress(m, s);
      for (VertexId i = 0; i < g.num_vertices; ++i) {
        for (std::uint32_t k = 0; k < cg.windows_per_line(); ++k) {
          bool row_want = window_has_set_bit(m.row(i), k, s);
          bool col_want = window_has_set_bit(m.col(i), k, s);
          CHECK((cg.find_row_slice(i, k) != nullptr) == row_want);
          CHECK((cg.find_col_slice(i, k) != nullptr) == col_want);
        }
      }
    }
  }
}

TEST_CASE("compressed size charges slice_size/8 + 4 bytes per valid slice") {
  // 1000 single-bit rows at 64-bit slices: 1000 * (8 + 4) = 12000 bytes.
  std::vector<std::uint64_t> row_ptr(1001);
  std::vector<SliceEntry> row_entries(1000);
  for (std::uint32_t i = 0; i < 1000; ++i) {
    row_ptr[i + 1] = i + 1;
    row_entries[i] = SliceEntry{0, SlicePayload{{1, 0}}};
  }
  CompressedGraph cg = CompressedGraph::build(
      1000, 64, std::move(row_ptr), std::move(row_entries),
      std::vector<std::uint64_t>(1001), {}, {});
  CHECK(cg.n_valid_slices() == 1000);
  CHECK(compressed_size(cg) == 12000);

  CompressedGraph demo = compress(tiny_graph(), 8);
  CHECK(compressed_size(demo) == 6 * (8 / 8 + 4));
}

TEST_CASE("valid slice fraction of a complete graph on |S| vertices") {
  // All rows but the last and all columns but the first hold bits, and each
  // line is exactly one window: (2n-2) / (2n).
  for (std::uint32_t s : {8u, 16u, 32u, 64u}) {
    Graph g = complete_graph(s);
    CompressedGraph cg = compress(g, s);
    CHECK(cg.windows_per_line() == 1);
    CHECK(cg.n_valid_slices() == 2 * s - 2);
    CHECK(valid_slice_fraction(cg) ==
          doctest::Approx((2.0 * s - 2.0) / (2.0 * s)).epsilon(1e-12));
  }
}

TEST_CASE("valid slice fraction matches a window-by-window recount") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Graph g = er_graph(77, 0.1, seed + 900);
    BitMatrix m = to_bitmatrix(g);
    for (std::uint32_t s : {8u, 32u, 128u}) {
      CompressedGraph cg = compress(m, s);
      std::uint64_t valid = 0;
      for (VertexId i = 0; i < g.num_vertices; ++i)
        for (std::uint32_t k = 0; k < cg.windows_per_line(); ++k)
          valid += window_has_set_bit(m.row(i), k, s) +
                   window_has_set_bit(m.col(i), k, s);
      std::uint64_t total =
          2ull * g.num_vertices * cg.windows_per_line();
      CHECK(cg.n_valid_slices() == valid);
      CHECK(valid_slice_fraction(cg) ==
            doctest::Approx(double(valid) / double(total)).epsilon(1e-12));
    }
  }
}

TEST_CASE("removing an edge never adds valid slices") {
  Graph g = er_graph(60, 0.2, 5);
  CompressedGraph full = compress(g, 32);
  for (std::size_t drop = 0; drop < g.edges.size(); drop += 7) {
    Graph smaller = g;
    smaller.edges.erase(smaller.edges.begin() + drop);
    CompressedGraph cg = compress(smaller, 32);
    CHECK(cg.n_valid_slices() <= full.n_valid_slices());
  }
}

TEST_CASE("serialized demo graph matches the documented byte layout") {
  CompressedGraph cg = compress(tiny_graph(), 8);
  std::ostringstream out(std::ios::binary);
  save_compressed(cg, out);
  std::string bytes = out.str();

  const unsigned char want[] = {
      'T', 'C', 'S', 'G',            // magic
      1,   0,   0,   0,              // version 1
      4,   0,   0,   0,              // n = 4
      8,   0,   0,   0,              // slice size = 8
      6,   0,   0,   0, 0, 0, 0, 0,  // 6 valid slices
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0x06,  // row 0, k 0, payload 0110
      0, 1, 0, 0, 0, 0, 0, 0, 0, 0x0C,  // row 1, k 0, payload 0011
      0, 2, 0, 0, 0, 0, 0, 0, 0, 0x08,  // row 2, k 0, payload 0001
      1, 1, 0, 0, 0, 0, 0, 0, 0, 0x01,  // col 1, k 0, payload 1000
      1, 2, 0, 0, 0, 0, 0, 0, 0, 0x03,  // col 2, k 0, payload 1100
      1, 3, 0, 0, 0, 0, 0, 0, 0, 0x06,  // col 3, k 0, payload 0110
  };
  REQUIRE(bytes.size() == sizeof(want));
  for (std::size_t i = 0; i < sizeof(want); ++i)
    CHECK(static_cast<unsigned char>(bytes[i]) == want[i]);
}

TEST_CASE("save/load round-trips compressed graphs bit-exactly") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = er_graph(130, 0.04, seed + 60);
    for (std::uint32_t s : kSupportedSliceSizes) {
      CompressedGraph cg = compress(g, s);
      std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
      save_compressed(cg, buf);
      CompressedGraph back = load_compressed(buf);
      CHECK(back == cg);
      CHECK(decompress(back) == to_bitmatrix(g));
    }
  }
}

TEST_CASE("loader rejects corrupted streams") {
  CompressedGraph cg = compress(tiny_graph(), 8);
  std::ostringstream out(std::ios::binary);
  save_compressed(cg, out);
  std::string good = out.str();

  auto load_bytes = [](std::string bytes) {
    std::istringstream in(std::move(bytes), std::ios::binary);
    return load_compressed(in);
  };

  SUBCASE("bad magic") {
    std::string bad = good;
    bad[0] = 'X';
    CHECK_THROWS_AS(load_bytes(bad), ParseError);
  }
  SUBCASE("unknown version") {
    std::string bad = good;
    bad[4] = 9;
    CHECK_THROWS_AS(load_bytes(bad), ParseError);
  }
  SUBCASE("truncated record") {
    CHECK_THROWS_AS(load_bytes(good.substr(0, good.size() - 3)), ParseError);
  }
  SUBCASE("trailing bytes") {
    CHECK_THROWS_AS(load_bytes(good + "x"), ParseError);
  }
  SUBCASE("zero payload") {
    std::string bad = good;
    bad[33] = 0;  // first record's payload byte
    CHECK_THROWS_AS(load_bytes(bad), ParseError);
  }
  SUBCASE("out-of-order records") {
    std::string bad = good;
    // Swap the two leading row records (10 bytes each at offset 24).
    std::swap_ranges(bad.begin() + 24, bad.begin() + 34, bad.begin() + 34);
    CHECK_THROWS_AS(load_bytes(bad), ParseError);
  }
  SUBCASE("unsupported slice size") {
    std::string bad = good;
    bad[12] = 7;
    CHECK_THROWS_AS(load_bytes(bad), ParseError);
  }
  SUBCASE("good bytes still load") { CHECK(load_bytes(good) == cg); }
}

TEST_CASE("compress validates the slice size") {
  CHECK_THROWS_AS(compress(tiny_graph(), 12), ConfigError);
  CHECK_THROWS_AS(compress(to_bitmatrix(tiny_graph()), 0), ConfigError);
}
