#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "uavsim/harness.hpp"
#include "uavsim/heatmap.hpp"

namespace uavsim {

// Everything a run configuration file can carry: the SimConfig fields plus
// optional sweep axes and the replicate protocol.
struct RunFile {
  SimConfig sim;
  SweepAxes axes;
  int reps = 30;
  std::uint64_t seed_base = 1;
};

// JSON with the SimConfig field names; absent keys keep their defaults.
// Throws ConfigError on malformed input and IoError when unreadable.
RunFile load_run_file(const std::filesystem::path& path);
RunFile parse_run_file(std::string_view json_text);
std::string run_file_schema();

std::string to_json(const SimConfig& config, int indent = 2);

inline constexpr std::string_view kResultsHeader =
    "strategy,n_drones,speed,radius,reps,rc_mean,dc_mean,accuracy_mean,accuracy_std,"
    "energy_mean_wh";
inline constexpr std::string_view kMetricsHeader =
    "strategy,n_drones,speed,radius,formation_radius,dt,ticks,seed,rc,dc,accuracy,energy_wh,"
    "score_red,score_blue,wall_ticks";

// Sweep rows sorted by (strategy, n_drones, speed, radius) plus a JSON
// sidecar `<path>.json` with the base config. Throws IoError with the path.
void export_results(const SweepResult& result, const SimConfig& base,
                    const std::filesystem::path& path);
void write_results_csv(const SweepResult& result, std::ostream& out);

void write_metrics_csv(std::span<const MetricsRecord> records, std::ostream& out);
void export_metrics(std::span<const MetricsRecord> records, const std::filesystem::path& path);

void write_group_summary_csv(std::span<const GroupBest> rows, std::ostream& out);

// Columns tick,x,y,player_a,player_b,detected.
void write_collisions_csv(std::span<const CollisionEvent> events, std::ostream& out);

// Columns drone_id,x,y.
void write_positions_csv(std::span<const Vec2> positions, std::ostream& out);

// Header x_q,y_q,count, one row per cell, y outer and x inner.
void write_heatmap_csv(const HeatmapGrid& grid, std::ostream& out);
// Binary P5 graymap, row 0 = largest y so the image is upright; intensity
// scales linearly with the cell count.
void write_heatmap_pgm(const HeatmapGrid& grid, std::ostream& out);

// Builds the full-field frequency map of the log and writes `<stem>.csv`
// and `<stem>.pgm`. Returns the grid. An empty log writes a zero grid and
// logs a warning to stderr.
HeatmapGrid export_heatmap(std::span<const CollisionEvent> log, const FieldConfig& field,
                           const std::filesystem::path& stem);

}  // namespace uavsim
