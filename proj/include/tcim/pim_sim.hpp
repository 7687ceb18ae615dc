#pragma once

#include <cstdint>
#include <iosfwd>
#include <list>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcim/slicing.hpp"
#include "tcim/tc_engine.hpp"

namespace tcim {

// Latency/energy charged per operation, in user-defined units.
struct OpCost {
  double latency = 1.0;
  double energy = 1.0;
  friend bool operator==(const OpCost&, const OpCost&) = default;
};

// Per-operation cost table. Values are configuration, not measurements;
// the shipped defaults are placeholder units (all 1.0).
struct CostModel {
  OpCost slice_write;
  OpCost slice_read;
  OpCost and_compute;  // one dual-word-line activation + sense per slice
  OpCost lut_access;
  OpCost buffer_access;

  // Flat text format, one `op_name latency energy` per line, '#' comments.
  // Missing ops keep their defaults; unknown names or negative/non-finite
  // values raise ConfigError.
  static CostModel from_stream(std::istream& in);
  static CostModel from_file(const std::string& path);

  void validate() const;
  friend bool operator==(const CostModel&, const CostModel&) = default;
};

// Simulated computational-array shape.
struct ArrayConfig {
  std::uint64_t capacity_bytes = std::uint64_t{16} << 20;  // 16 MiB
  std::uint32_t slice_size = 64;                           // bits
  // Slots reserved for the current row's slices. 0 = auto: run_tcim sizes
  // the region to the widest row of the input (clamped to capacity); a raw
  // Simulator tracks the currently loaded row instead.
  std::uint32_t row_region_slots = 0;
  enum class Replacement { lru };
  Replacement replacement = Replacement::lru;

  std::uint64_t slot_bytes() const { return slice_size / 8; }
  std::uint64_t total_slots() const { return capacity_bytes / slot_bytes(); }

  // capacity must leave at least one column slot beyond the row region.
  void validate() const;
};

// Counters accumulated by a simulation run plus cost totals derived from
// them. Row and column writes are kept separate so write-savings can be
// read either with or without row traffic.
struct SimStats {
  std::uint64_t row_writes = 0;
  std::uint64_t col_writes = 0;
  std::uint64_t reads = 0;
  std::uint64_t and_ops = 0;
  std::uint64_t lut_accesses = 0;
  std::uint64_t buffer_accesses = 0;
  std::uint64_t col_hits = 0;
  std::uint64_t col_misses = 0;
  std::uint64_t evictions = 0;
  std::uint64_t slice_pairs_processed = 0;  // aligned valid pairs computed
  std::uint64_t slice_pairs_total = 0;      // edges * windows_per_line
  std::uint64_t triangle_count = 0;
  double total_latency = 0.0;
  double total_energy = 0.0;

  std::uint64_t writes() const { return row_writes + col_writes; }
  std::uint64_t col_requests() const { return col_hits + col_misses; }
  // Fraction of column-slice WRITE operations avoided by reuse.
  double hit_ratio() const {
    return col_requests() == 0
               ? 0.0
               : static_cast<double>(col_hits) /
                     static_cast<double>(col_requests());
  }
  double eviction_per_miss() const {
    return col_misses == 0 ? 0.0
                           : static_cast<double>(evictions) /
                                 static_cast<double>(col_misses);
  }
  double eviction_per_request() const {
    return col_requests() == 0 ? 0.0
                               : static_cast<double>(evictions) /
                                     static_cast<double>(col_requests());
  }
  double valid_pair_fraction() const {
    return slice_pairs_total == 0
               ? 0.0
               : static_cast<double>(slice_pairs_processed) /
                     static_cast<double>(slice_pairs_total);
  }

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

// (latency, energy): the linear combination of counters and per-op costs.
std::pair<double, double> estimate_cost(const SimStats& stats,
                                        const CostModel& costs);

// Bounded slice store with a row region that the current row overwrites and
// an LRU-replaced column region. Single-threaded by design; independent
// instances may run concurrently.
class Simulator {
 public:
  enum class Access { hit, miss };

  Simulator(ArrayConfig cfg, CostModel costs);

  const ArrayConfig& config() const { return cfg_; }

  // Column slots available under the current row load.
  std::uint64_t column_capacity_slots() const;

  // Replaces the row region with `slices` (the valid slices of row `row`).
  // Rows must arrive in ascending order; reloading the same row is the
  // spill path for rows wider than the region. No eviction is recorded for
  // the overwritten row, but in auto mode a wider row can force column
  // evictions to make room.
  void load_row_slices(VertexId row, std::span<const SliceEntry> slices);

  // Loads column slice (col, k) unless already resident. A hit refreshes
  // its LRU position; a miss writes it, evicting the least recently used
  // column slice when the region is full.
  Access request_column_slice(VertexId col, std::uint32_t k,
                              const SlicePayload& payload);

  // AND + BitCount over the aligned resident pair (row slice k, column
  // slice (col, k)). Both operands must be resident (ContractError).
  std::uint64_t compute_and(std::uint32_t k, VertexId col);

  bool row_slice_resident(std::uint32_t k) const;
  bool col_slice_resident(VertexId col, std::uint32_t k) const;

  // Counters with cost totals filled in.
  SimStats stats() const;

  SimStats& mutable_stats() { return stats_; }

 private:
  using ColKey = std::uint64_t;  // col << 32 | k
  static ColKey key(VertexId col, std::uint32_t k) {
    return (std::uint64_t{col} << 32) | k;
  }

  void evict_lru();

  ArrayConfig cfg_;
  CostModel costs_;
  SimStats stats_;

  std::int64_t current_row_ = -1;
  std::unordered_map<std::uint32_t, SlicePayload> row_resident_;

  // Most recently used at the front.
  std::list<std::pair<ColKey, SlicePayload>> lru_;
  std::unordered_map<ColKey, std::list<std::pair<ColKey, SlicePayload>>::iterator>
      col_index_;
};

// Runs the full in-memory flow over a compressed graph: edges grouped by
// row in ascending order, one row load per row (chunked when the row region
// is narrower than the row), column requests and AND computes for every
// aligned valid slice pair. The count always equals
// count_triangles_bitwise(cg).
std::pair<TcResult, SimStats> run_tcim(const CompressedGraph& cg,
                                       const ArrayConfig& cfg,
                                       const CostModel& costs,
                                       bool want_per_edge = false);

}  // namespace tcim
