#include "tcim/pim_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "tcim/errors.hpp"

namespace tcim {

namespace {

void check_cost(const char* name, const OpCost& c) {
  if (!(std::isfinite(c.latency) && std::isfinite(c.energy)) ||
      c.latency < 0.0 || c.energy < 0.0) {
    throw ConfigError(std::string("cost model entry '") + name +
                      "' must be non-negative and finite");
  }
}

}  // namespace

void CostModel::validate() const {
  check_cost("slice_write", slice_write);
  check_cost("slice_read", slice_read);
  check_cost("and_compute", and_compute);
  check_cost("lut_access", lut_access);
  check_cost("buffer_access", buffer_access);
}

CostModel CostModel::from_stream(std::istream& in) {
  CostModel model;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string op;
    if (!(tokens >> op)) continue;
    double latency = 0.0, energy = 0.0;
    std::string extra;
    if (!(tokens >> latency >> energy) || (tokens >> extra)) {
      throw ConfigError("cost model line " + std::to_string(line_no) +
                        ": expected '<op> <latency> <energy>'");
    }
    const OpCost cost{latency, energy};
    if (op == "slice_write") {
      model.slice_write = cost;
    } else if (op == "slice_read") {
      model.slice_read = cost;
    } else if (op == "and_compute") {
      model.and_compute = cost;
    } else if (op == "lut_access") {
      model.lut_access = cost;
    } else if (op == "buffer_access") {
      model.buffer_access = cost;
    } else {
      throw ConfigError("cost model line " + std::to_string(line_no) +
                        ": unknown operation '" + op + "'");
    }
  }
  model.validate();
  return model;
}

CostModel CostModel::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cost model file '" + path + "'");
  return from_stream(in);
}

void ArrayConfig::validate() const {
  if (!is_supported_slice_size(slice_size)) {
    throw ConfigError("unsupported slice size " + std::to_string(slice_size));
  }
  if (capacity_bytes < slot_bytes()) {
    throw ConfigError("array capacity of " + std::to_string(capacity_bytes) +
                      " bytes cannot hold a single " +
                      std::to_string(slice_size) + "-bit slice");
  }
  if (total_slots() < std::uint64_t{row_region_slots} + 1) {
    throw ConfigError("array capacity of " + std::to_string(total_slots()) +
                      " slots leaves no column slot beside a row region of " +
                      std::to_string(row_region_slots));
  }
}

std::pair<double, double> estimate_cost(const SimStats& stats,
                                        const CostModel& costs) {
  const double writes = static_cast<double>(stats.writes());
  const double latency = writes * costs.slice_write.latency +
                         static_cast<double>(stats.reads) * costs.slice_read.latency +
                         static_cast<double>(stats.and_ops) * costs.and_compute.latency +
                         static_cast<double>(stats.lut_accesses) * costs.lut_access.latency +
                         static_cast<double>(stats.buffer_accesses) * costs.buffer_access.latency;
  const double energy = writes * costs.slice_write.energy +
                        static_cast<double>(stats.reads) * costs.slice_read.energy +
                        static_cast<double>(stats.and_ops) * costs.and_compute.energy +
                        static_cast<double>(stats.lut_accesses) * costs.lut_access.energy +
                        static_cast<double>(stats.buffer_accesses) * costs.buffer_access.energy;
  return {latency, energy};
}

Simulator::Simulator(ArrayConfig cfg, CostModel costs)
    : cfg_(cfg), costs_(costs) {
  cfg_.validate();
  costs_.validate();
}

std::uint64_t Simulator::column_capacity_slots() const {
  const std::uint64_t reserved = cfg_.row_region_slots > 0
                                     ? cfg_.row_region_slots
                                     : row_resident_.size();
  return cfg_.total_slots() - std::min(cfg_.total_slots(), reserved);
}

void Simulator::load_row_slices(VertexId row,
                                std::span<const SliceEntry> slices) {
  if (std::int64_t{row} < current_row_) {
    throw ContractError("rows must be loaded in ascending order (row " +
                        std::to_string(row) + " after " +
                        std::to_string(current_row_) + ")");
  }
  const std::uint64_t region = cfg_.row_region_slots > 0
                                   ? cfg_.row_region_slots
                                   : cfg_.total_slots() - 1;
  if (slices.size() > region) {
    throw ContractError("row " + std::to_string(row) + " has " +
                        std::to_string(slices.size()) +
                        " valid slices but the row region holds " +
                        std::to_string(region) + "; chunk the row");
  }
  current_row_ = row;
  row_resident_.clear();
  for (const SliceEntry& e : slices) row_resident_.emplace(e.k, e.payload);
  stats_.row_writes += slices.size();
  // In auto mode a wider row shrinks the column region; trim to fit.
  while (lru_.size() > column_capacity_slots()) evict_lru();
}

void Simulator::evict_lru() {
  col_index_.erase(lru_.back().first);
  lru_.pop_back();
  ++stats_.evictions;
}

Simulator::Access Simulator::request_column_slice(VertexId col,
                                                  std::uint32_t k,
                                                  const SlicePayload& payload) {
  const ColKey key_ = key(col, k);
  if (auto it = col_index_.find(key_); it != col_index_.end()) {
    if (it->second->second != payload) {
      throw ContractError("column slice (" + std::to_string(col) + ", " +
                          std::to_string(k) +
                          ") requested with a different payload than resident");
    }
    lru_.splice(lru_.begin(), lru_, it->second);
    ++stats_.col_hits;
    ++stats_.buffer_accesses;
    return Access::hit;
  }
  ++stats_.col_misses;
  const std::uint64_t capacity = column_capacity_slots();
  if (capacity == 0) {
    throw ContractError("no column slot available in the array");
  }
  while (lru_.size() >= capacity) evict_lru();
  lru_.emplace_front(key_, payload);
  col_index_.emplace(key_, lru_.begin());
  ++stats_.col_writes;
  return Access::miss;
}

std::uint64_t Simulator::compute_and(std::uint32_t k, VertexId col) {
  const auto row_it = row_resident_.find(k);
  if (row_it == row_resident_.end()) {
    throw ContractError("row slice " + std::to_string(k) +
                        " is not resident in the array");
  }
  const auto col_it = col_index_.find(key(col, k));
  if (col_it == col_index_.end()) {
    throw ContractError("column slice (" + std::to_string(col) + ", " +
                        std::to_string(k) + ") is not resident in the array");
  }
  ++stats_.and_ops;
  stats_.lut_accesses += bitcount_lut_accesses(cfg_.slice_size);
  return (row_it->second & col_it->second->second).popcount();
}

bool Simulator::row_slice_resident(std::uint32_t k) const {
  return row_resident_.contains(k);
}

bool Simulator::col_slice_resident(VertexId col, std::uint32_t k) const {
  return col_index_.contains(key(col, k));
}

SimStats Simulator::stats() const {
  SimStats out = stats_;
  const auto [latency, energy] = estimate_cost(out, costs_);
  out.total_latency = latency;
  out.total_energy = energy;
  return out;
}

std::pair<TcResult, SimStats> run_tcim(const CompressedGraph& cg,
                                       const ArrayConfig& cfg,
                                       const CostModel& costs,
                                       bool want_per_edge) {
  if (cfg.slice_size != cg.slice_size()) {
    throw ConfigError("array slice size " + std::to_string(cfg.slice_size) +
                      " does not match compressed graph slice size " +
                      std::to_string(cg.slice_size()));
  }

  // Resolve the auto row region to the widest row, clamped so at least one
  // column slot remains; rows wider than the region are processed in chunks.
  ArrayConfig resolved = cfg;
  if (resolved.row_region_slots == 0) {
    const std::uint64_t widest = std::max<std::uint64_t>(1, cg.max_row_slices());
    const std::uint64_t cap = std::max<std::uint64_t>(1, cfg.total_slots() - 1);
    resolved.row_region_slots = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(widest, cap));
  }

  Simulator sim(resolved, costs);
  TcResult result;
  if (want_per_edge) result.per_edge.emplace();

  const auto edges = cg.edges();
  std::size_t row_begin = 0;
  while (row_begin < edges.size()) {
    const VertexId i = edges[row_begin].u;
    std::size_t row_end = row_begin;
    while (row_end < edges.size() && edges[row_end].u == i) ++row_end;

    const auto row = cg.row_slices(i);
    const std::size_t chunk = resolved.row_region_slots;
    std::vector<std::uint64_t> edge_counts(row_end - row_begin, 0);

    for (std::size_t base = 0; base < row.size() || base == 0;
         base += chunk) {
      const auto resident =
          row.subspan(base, std::min(chunk, row.size() - base));
      sim.load_row_slices(i, resident);
      for (std::size_t e = row_begin; e < row_end; ++e) {
        const VertexId j = edges[e].v;
        const auto col = cg.col_slices(j);
        // Aligned merge over the resident row chunk and the column's
        // valid slices.
        std::size_t a = 0, b = 0;
        while (a < resident.size() && b < col.size()) {
          if (resident[a].k < col[b].k) {
            ++a;
          } else if (resident[a].k > col[b].k) {
            ++b;
          } else {
            sim.request_column_slice(j, col[b].k, col[b].payload);
            edge_counts[e - row_begin] += sim.compute_and(col[b].k, j);
            ++sim.mutable_stats().slice_pairs_processed;
            ++a;
            ++b;
          }
        }
      }
      if (row.empty()) break;
    }

    for (std::size_t e = row_begin; e < row_end; ++e) {
      result.triangle_count += edge_counts[e - row_begin];
      if (result.per_edge)
        result.per_edge->emplace_back(edges[e], edge_counts[e - row_begin]);
    }
    sim.mutable_stats().slice_pairs_total +=
        std::uint64_t{row_end - row_begin} * cg.windows_per_line();
    row_begin = row_end;
  }

  SimStats stats = sim.stats();
  stats.triangle_count = result.triangle_count;
  return {std::move(result), stats};
}

}  // namespace tcim
