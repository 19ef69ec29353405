#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavsim/game.hpp"
#include "uavsim/power.hpp"
#include "uavsim/strategies.hpp"

namespace uavsim {

struct SimConfig {
  StrategyMode strategy = StrategyMode::FollowPlayers;
  int n_drones = 12;
  double v_max = 8.0;
  double detect_radius_r = 8.0;
  double formation_radius_R = 8.0;
  double dt = 0.1;
  std::int64_t ticks = 10'000;
  std::uint64_t seed = 1;
  AllocationPolicy allocation_policy = AllocationPolicy::Halving;
  double d_in = 3.0;
  double d_out = 15.0;
  double collision_threshold = 1.5;
  // Length of the separate match whose collision log trains Fixed mode.
  std::int64_t burn_in_ticks = 10'000;
  // Random-mode separation distance; unset means 2 * detect_radius_r.
  std::optional<double> d_safe;
  FieldConfig field;
  MatchRules rules;
  PowerParams power;

  // Throws ConfigError for non-positive counts, lengths or speeds.
  void validate() const;
  double effective_d_safe() const { return d_safe.value_or(2.0 * detect_radius_r); }
};

struct MetricsRecord {
  SimConfig config;
  std::int64_t rc = 0;
  std::int64_t dc = 0;
  // Missing when rc == 0.
  std::optional<double> accuracy;
  double energy_wh = 0.0;
  int score_red = 0;
  int score_blue = 0;
  std::int64_t wall_ticks = 0;
};

struct RunArtifacts {
  MetricsRecord metrics;
  std::vector<CollisionEvent> collisions;
  std::vector<Vec2> fixed_positions;
  std::vector<Drone> final_fleet;
};

// One seeded match with one drone strategy. Fixed mode first plays a
// burn-in match on an independent seed stream and freezes its placement.
MetricsRecord run_simulation(const SimConfig& config);
RunArtifacts run_simulation_detailed(const SimConfig& config);

// Collision positions of the burn-in match used to train Fixed mode.
std::vector<Vec2> burn_in_collisions(const SimConfig& config);

struct AggregatedRecord {
  SimConfig config;
  int reps = 0;
  // Replicates with rc > 0; only these enter the accuracy statistics.
  int valid_reps = 0;
  int excluded_reps = 0;
  double rc_mean = 0.0;
  double dc_mean = 0.0;
  double energy_mean_wh = 0.0;
  std::optional<double> accuracy_mean;
  // Sample standard deviation; 0 for a single valid replicate.
  std::optional<double> accuracy_std;
  std::optional<double> accuracy_min;
  std::optional<double> accuracy_max;
  std::vector<std::string> errors;
};

// Aggregates an already executed set of runs.
AggregatedRecord aggregate(const SimConfig& config, const std::vector<MetricsRecord>& runs,
                           std::vector<std::string> errors = {});

// Seeds seed_base .. seed_base + n_reps - 1. threads == 0 picks the
// hardware concurrency. Output does not depend on the thread count.
AggregatedRecord run_replicates(const SimConfig& config, int n_reps, std::uint64_t seed_base,
                                unsigned threads = 0);

struct SweepAxes {
  std::vector<StrategyMode> strategies;
  std::vector<int> n_drones;
  std::vector<double> speeds;
  // Each value sets both the detection and the formation radius.
  std::vector<double> radii;

  std::size_t cell_count() const {
    return strategies.size() * n_drones.size() * speeds.size() * radii.size();
  }
};

struct SweepResult {
  std::vector<AggregatedRecord> rows;
};

// Cartesian product of the axes, each cell run through run_replicates.
// Throws ConfigError for an empty axis. Failing cells keep their error
// messages and the sweep carries on.
SweepResult sweep(const SimConfig& base, const SweepAxes& axes, int n_reps,
                  std::uint64_t seed_base, unsigned threads = 0);

// UAV-number groups 4-7, 7-13, 13-16, 16-20; shared boundaries belong to
// the lower group. Empty outside [4, 20].
std::optional<std::string_view> uav_group_label(int n_drones);

struct GroupBest {
  StrategyMode strategy = StrategyMode::Fixed;
  std::string group;
  int n_drones = 0;
  double speed = 0.0;
  double radius = 0.0;
  double accuracy = 0.0;
};

// Highest mean accuracy per (strategy, group) pair, in strategy then group
// order. Cells without an accuracy are skipped.
std::vector<GroupBest> best_per_group(const SweepResult& result);

struct ScenarioPreset {
  int id = 0;
  std::string name;
  double radius = 0.0;
  double speed = 0.0;
  std::vector<int> n_drones;
};

// The four fixed (radius, speed) scenarios, each sweeping 1..35 drones.
std::vector<ScenarioPreset> scenario_presets();
SweepAxes scenario_axes(const ScenarioPreset& preset);

// 6 strategies x 4..20 drones x {0.1, 2.1, ..., 10.1} m/s x 3..8 m.
SweepAxes main_grid_axes();
// Follow-players, 12 drones, 8 m/s, radius 2..15 in 0.5 m steps.
SweepAxes radius_study_axes();

}  // namespace uavsim
