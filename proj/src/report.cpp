#include "tcim/report.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "tcim/errors.hpp"
#include "tcim/tc_engine.hpp"

namespace tcim {

using nlohmann::json;

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::bitwise:
      return "bitwise";
    case RunMode::pim:
      return "pim";
    case RunMode::oracle_matmul:
      return "oracle-matmul";
    case RunMode::oracle_intersect:
      return "oracle-intersect";
  }
  return "unknown";
}

RunMode run_mode_from_string(std::string_view name) {
  if (name == "bitwise") return RunMode::bitwise;
  if (name == "pim") return RunMode::pim;
  if (name == "oracle-matmul") return RunMode::oracle_matmul;
  if (name == "oracle-intersect") return RunMode::oracle_intersect;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected bitwise, pim, oracle-matmul or "
                    "oracle-intersect)");
}

std::uint64_t parse_capacity(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  if (pos == 0) {
    throw ConfigError("capacity '" + std::string(text) +
                      "': expected <number>[KiB|MiB|GiB]");
  }
  std::uint64_t value = 0;
  for (char c : text.substr(0, pos)) {
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
    if (value > (std::uint64_t{1} << 52)) {
      throw ConfigError("capacity '" + std::string(text) + "' is too large");
    }
  }
  const std::string_view suffix = text.substr(pos);
  if (suffix.empty()) return value;
  if (suffix == "KiB") return value << 10;
  if (suffix == "MiB") return value << 20;
  if (suffix == "GiB") return value << 30;
  throw ConfigError("capacity '" + std::string(text) +
                    "': unknown suffix '" + std::string(suffix) +
                    "' (binary units KiB/MiB/GiB)");
}

json to_json(const SimStats& stats) {
  return json{{"row_writes", stats.row_writes},
              {"col_writes", stats.col_writes},
              {"writes", stats.writes()},
              {"reads", stats.reads},
              {"and_ops", stats.and_ops},
              {"lut_accesses", stats.lut_accesses},
              {"buffer_accesses", stats.buffer_accesses},
              {"col_hits", stats.col_hits},
              {"col_misses", stats.col_misses},
              {"col_requests", stats.col_requests()},
              {"evictions", stats.evictions},
              {"hit_ratio", stats.hit_ratio()},
              {"eviction_per_miss", stats.eviction_per_miss()},
              {"eviction_per_request", stats.eviction_per_request()},
              {"slice_pairs_processed", stats.slice_pairs_processed},
              {"slice_pairs_total", stats.slice_pairs_total},
              {"valid_pair_fraction", stats.valid_pair_fraction()},
              {"triangle_count", stats.triangle_count},
              {"total_latency", stats.total_latency},
              {"total_energy", stats.total_energy}};
}

SimStats sim_stats_from_json(const json& j) {
  SimStats s;
  s.row_writes = j.at("row_writes").get<std::uint64_t>();
  s.col_writes = j.at("col_writes").get<std::uint64_t>();
  s.reads = j.at("reads").get<std::uint64_t>();
  s.and_ops = j.at("and_ops").get<std::uint64_t>();
  s.lut_accesses = j.at("lut_accesses").get<std::uint64_t>();
  s.buffer_accesses = j.at("buffer_accesses").get<std::uint64_t>();
  s.col_hits = j.at("col_hits").get<std::uint64_t>();
  s.col_misses = j.at("col_misses").get<std::uint64_t>();
  s.evictions = j.at("evictions").get<std::uint64_t>();
  s.slice_pairs_processed = j.at("slice_pairs_processed").get<std::uint64_t>();
  s.slice_pairs_total = j.at("slice_pairs_total").get<std::uint64_t>();
  s.triangle_count = j.at("triangle_count").get<std::uint64_t>();
  s.total_latency = j.at("total_latency").get<double>();
  s.total_energy = j.at("total_energy").get<double>();
  return s;
}

namespace {

json to_json(const SliceStats& slices) {
  return json{{"n_valid_slices", slices.n_valid_slices},
              {"n_row_slices", slices.n_row_slices},
              {"n_col_slices", slices.n_col_slices},
              {"valid_fraction", slices.valid_fraction},
              {"compressed_bytes", slices.compressed_bytes}};
}

SliceStats slice_stats_from_json(const json& j) {
  SliceStats s;
  s.n_valid_slices = j.at("n_valid_slices").get<std::uint64_t>();
  s.n_row_slices = j.at("n_row_slices").get<std::uint64_t>();
  s.n_col_slices = j.at("n_col_slices").get<std::uint64_t>();
  s.valid_fraction = j.at("valid_fraction").get<double>();
  s.compressed_bytes = j.at("compressed_bytes").get<std::uint64_t>();
  return s;
}

json to_json(const ConfigEcho& c) {
  return json{{"slice_size", c.slice_size},
              {"capacity_bytes", c.capacity_bytes},
              {"row_region_slots", c.row_region_slots},
              {"relabel", c.relabel},
              {"cost_model", c.cost_model},
              {"seed", c.seed}};
}

ConfigEcho config_from_json(const json& j) {
  ConfigEcho c;
  c.slice_size = j.at("slice_size").get<std::uint32_t>();
  c.capacity_bytes = j.at("capacity_bytes").get<std::uint64_t>();
  c.row_region_slots = j.at("row_region_slots").get<std::uint32_t>();
  c.relabel = j.at("relabel").get<std::string>();
  c.cost_model = j.at("cost_model").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  json j = v;
  return j.dump();
}

ConfigEcho echo_from_options(const RunOptions& opts) {
  ConfigEcho echo;
  echo.slice_size = opts.slice_size;
  echo.capacity_bytes = opts.capacity_bytes;
  echo.row_region_slots = opts.row_region_slots;
  echo.relabel = to_string(opts.relabel);
  echo.cost_model = opts.cost_model_path;
  echo.seed = opts.seed;
  return echo;
}

SliceStats slice_stats_of(const CompressedGraph& cg) {
  SliceStats s;
  s.n_valid_slices = cg.n_valid_slices();
  s.n_row_slices = cg.n_row_slices();
  s.n_col_slices = cg.n_col_slices();
  s.valid_fraction = valid_slice_fraction(cg);
  s.compressed_bytes = compressed_size(cg);
  return s;
}

std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

CostModel load_costs(const RunOptions& opts) {
  return opts.cost_model_path.empty()
             ? CostModel{}
             : CostModel::from_file(opts.cost_model_path);
}

class WallTimer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace

json to_json(const RunReport& r) {
  json j{{"schema_version", kReportSchemaVersion},
         {"dataset", r.dataset},
         {"mode", r.mode},
         {"num_vertices", r.num_vertices},
         {"num_edges", r.num_edges},
         {"wall_seconds", r.wall_seconds},
         {"config", to_json(r.config)}};
  if (r.triangle_count) j["triangle_count"] = *r.triangle_count;
  if (r.slices) j["slices"] = to_json(*r.slices);
  if (r.sim) j["sim"] = to_json(*r.sim);
  return j;
}

RunReport report_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
    throw ParseError("unsupported report schema version");
  }
  RunReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.num_vertices = j.at("num_vertices").get<std::uint32_t>();
  r.num_edges = j.at("num_edges").get<std::uint64_t>();
  if (j.contains("triangle_count"))
    r.triangle_count = j.at("triangle_count").get<std::uint64_t>();
  if (j.contains("slices")) r.slices = slice_stats_from_json(j.at("slices"));
  if (j.contains("sim")) r.sim = sim_stats_from_json(j.at("sim"));
  r.wall_seconds = j.at("wall_seconds").get<double>();
  r.config = config_from_json(j.at("config"));
  return r;
}

std::string csv_header() {
  return "schema_version,dataset,mode,num_vertices,num_edges,triangle_count,"
         "slice_size,capacity_bytes,row_region_slots,relabel,cost_model,seed,"
         "n_valid_slices,n_row_slices,n_col_slices,valid_fraction,"
         "compressed_bytes,row_writes,col_writes,writes,reads,and_ops,"
         "lut_accesses,buffer_accesses,col_hits,col_misses,evictions,"
         "hit_ratio,eviction_per_miss,eviction_per_request,"
         "slice_pairs_processed,slice_pairs_total,valid_pair_fraction,"
         "total_latency,total_energy,wall_seconds";
}

std::string to_csv_row(const RunReport& r) {
  std::ostringstream out;
  out << kReportSchemaVersion << ',' << csv_escape(r.dataset) << ','
      << csv_escape(r.mode) << ',' << r.num_vertices << ',' << r.num_edges
      << ',';
  if (r.triangle_count) out << *r.triangle_count;
  out << ',' << r.config.slice_size << ',' << r.config.capacity_bytes << ','
      << r.config.row_region_slots << ',' << csv_escape(r.config.relabel)
      << ',' << csv_escape(r.config.cost_model) << ',' << r.config.seed << ',';
  if (r.slices) {
    out << r.slices->n_valid_slices << ',' << r.slices->n_row_slices << ','
        << r.slices->n_col_slices << ','
        << format_double(r.slices->valid_fraction) << ','
        << r.slices->compressed_bytes;
  } else {
    out << ",,,,";
  }
  out << ',';
  if (r.sim) {
    const SimStats& s = *r.sim;
    out << s.row_writes << ',' << s.col_writes << ',' << s.writes() << ','
        << s.reads << ',' << s.and_ops << ',' << s.lut_accesses << ','
        << s.buffer_accesses << ',' << s.col_hits << ',' << s.col_misses << ','
        << s.evictions << ',' << format_double(s.hit_ratio()) << ','
        << format_double(s.eviction_per_miss()) << ','
        << format_double(s.eviction_per_request()) << ','
        << s.slice_pairs_processed << ',' << s.slice_pairs_total << ','
        << format_double(s.valid_pair_fraction()) << ','
        << format_double(s.total_latency) << ','
        << format_double(s.total_energy);
  } else {
    out << ",,,,,,,,,,,,,,,,,";
  }
  out << ',' << format_double(r.wall_seconds);
  return out.str();
}

RunReport run_count(const std::string& path, const RunOptions& opts) {
  WallTimer timer;
  const Graph g = load_edge_list(path, opts.relabel);

  RunReport report;
  report.dataset = dataset_name(path);
  report.mode = to_string(opts.mode);
  report.num_vertices = g.num_vertices;
  report.num_edges = g.num_edges();
  report.config = echo_from_options(opts);

  switch (opts.mode) {
    case RunMode::bitwise: {
      const CompressedGraph cg = compress(g, opts.slice_size);
      report.slices = slice_stats_of(cg);
      report.triangle_count = count_triangles_bitwise(cg).triangle_count;
      break;
    }
    case RunMode::pim: {
      const CompressedGraph cg = compress(g, opts.slice_size);
      report.slices = slice_stats_of(cg);
      ArrayConfig cfg;
      cfg.capacity_bytes = opts.capacity_bytes;
      cfg.slice_size = opts.slice_size;
      cfg.row_region_slots = opts.row_region_slots;
      const auto [result, stats] = run_tcim(cg, cfg, load_costs(opts));
      report.triangle_count = result.triangle_count;
      report.sim = stats;
      break;
    }
    case RunMode::oracle_matmul:
      report.triangle_count = oracle_trace_a3(g);
      break;
    case RunMode::oracle_intersect:
      report.triangle_count = oracle_edge_intersection(g);
      break;
  }
  report.wall_seconds = timer.seconds();
  return report;
}

RunReport run_stats(const std::string& path, const RunOptions& opts) {
  WallTimer timer;
  const Graph g = load_edge_list(path, opts.relabel);
  const CompressedGraph cg = compress(g, opts.slice_size);

  RunReport report;
  report.dataset = dataset_name(path);
  report.mode = "stats";
  report.num_vertices = g.num_vertices;
  report.num_edges = g.num_edges();
  report.slices = slice_stats_of(cg);
  report.config = echo_from_options(opts);
  report.wall_seconds = timer.seconds();
  return report;
}

std::vector<RunReport> run_sweep(
    const std::string& path, const RunOptions& opts,
    std::vector<std::uint32_t> slice_sizes,
    std::vector<std::uint64_t> capacities,
    const std::function<void(const RunReport&)>& on_report) {
  if (slice_sizes.empty()) slice_sizes.push_back(opts.slice_size);
  if (capacities.empty()) capacities.push_back(opts.capacity_bytes);

  const Graph g = load_edge_list(path, opts.relabel);
  const std::string dataset = dataset_name(path);
  const CostModel costs = load_costs(opts);

  std::vector<RunReport> reports;
  std::optional<std::uint64_t> expected_count;
  for (const std::uint32_t slice_size : slice_sizes) {
    const CompressedGraph cg = compress(g, slice_size);
    for (const std::uint64_t capacity : capacities) {
      WallTimer timer;
      ArrayConfig cfg;
      cfg.capacity_bytes = capacity;
      cfg.slice_size = slice_size;
      cfg.row_region_slots = opts.row_region_slots;
      const auto [result, stats] = run_tcim(cg, cfg, costs);

      RunReport report;
      report.dataset = dataset;
      report.mode = to_string(RunMode::pim);
      report.num_vertices = g.num_vertices;
      report.num_edges = g.num_edges();
      report.triangle_count = result.triangle_count;
      report.slices = slice_stats_of(cg);
      report.sim = stats;
      report.config = echo_from_options(opts);
      report.config.slice_size = slice_size;
      report.config.capacity_bytes = capacity;
      report.wall_seconds = timer.seconds();

      reports.push_back(report);
      if (on_report) on_report(report);
      if (!expected_count) {
        expected_count = result.triangle_count;
      } else if (*expected_count != result.triangle_count) {
        throw ContractError(
            "sweep produced diverging triangle counts: " +
            std::to_string(*expected_count) + " vs " +
            std::to_string(result.triangle_count) + " at slice size " +
            std::to_string(slice_size) + ", capacity " +
            std::to_string(capacity));
      }
    }
  }
  return reports;
}

}  // namespace tcim
