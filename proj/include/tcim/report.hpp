#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tcim/graph.hpp"
#include "tcim/pim_sim.hpp"
#include "tcim/slicing.hpp"

namespace tcim {

inline constexpr int kReportSchemaVersion = 1;

enum class RunMode { bitwise, pim, oracle_matmul, oracle_intersect };

const char* to_string(RunMode mode);
RunMode run_mode_from_string(std::string_view name);

// "16MiB" / "1GiB" / "4096" (bytes) -> bytes. Binary units only.
std::uint64_t parse_capacity(std::string_view text);

struct SliceStats {
  std::uint64_t n_valid_slices = 0;
  std::uint64_t n_row_slices = 0;
  std::uint64_t n_col_slices = 0;
  double valid_fraction = 0.0;
  std::uint64_t compressed_bytes = 0;
  friend bool operator==(const SliceStats&, const SliceStats&) = default;
};

// Everything needed to reproduce a run bit-identically (except wall clock).
struct ConfigEcho {
  std::uint32_t slice_size = 64;
  std::uint64_t capacity_bytes = std::uint64_t{16} << 20;
  std::uint32_t row_region_slots = 0;
  std::string relabel = "dense-compaction";
  std::string cost_model;  // path; empty = built-in unit costs
  std::uint64_t seed = 0;
  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct RunReport {
  std::string dataset;
  std::string mode;  // bitwise | pim | oracle-matmul | oracle-intersect | stats
  std::uint32_t num_vertices = 0;
  std::uint64_t num_edges = 0;
  std::optional<std::uint64_t> triangle_count;  // absent for stats-only runs
  std::optional<SliceStats> slices;
  std::optional<SimStats> sim;
  double wall_seconds = 0.0;
  ConfigEcho config;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const SimStats& stats);
SimStats sim_stats_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

// Fixed, versioned CSV schema; column list documented in docs/formats.md.
std::string csv_header();
std::string to_csv_row(const RunReport& report);

struct RunOptions {
  RunMode mode = RunMode::bitwise;
  std::uint32_t slice_size = 64;
  std::uint64_t capacity_bytes = std::uint64_t{16} << 20;
  std::uint32_t row_region_slots = 0;  // 0 = auto
  RelabelMode relabel = RelabelMode::dense_compaction;
  std::string cost_model_path;  // empty = unit costs
  std::uint64_t seed = 0;
};

// Parse + count (and simulate, in pim mode) one file.
RunReport run_count(const std::string& path, const RunOptions& opts);

// Slicing statistics only; no triangle count.
RunReport run_stats(const std::string& path, const RunOptions& opts);

// Grid sweep in pim mode: slice sizes outer, capacities inner, both in the
// given order (empty lists fall back to the single value in opts). Each
// finished report is handed to on_report before the next point starts, so
// partial results survive an aborted grid. Triangle counts must agree
// across the grid (ContractError otherwise).
std::vector<RunReport> run_sweep(
    const std::string& path, const RunOptions& opts,
    std::vector<std::uint32_t> slice_sizes,
    std::vector<std::uint64_t> capacities,
    const std::function<void(const RunReport&)>& on_report = nullptr);

}  // namespace tcim
