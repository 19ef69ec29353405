#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uavsim/game.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

enum class StrategyMode : std::uint8_t {
  Fixed,
  FollowBall,
  Repulsive,
  FollowPlayers,
  DensityBased,
  Random,
};

inline constexpr std::array<StrategyMode, 6> kAllStrategies = {
    StrategyMode::Fixed,         StrategyMode::FollowBall,   StrategyMode::Repulsive,
    StrategyMode::FollowPlayers, StrategyMode::DensityBased, StrategyMode::Random,
};

// CLI spelling: fixed, follow-ball, repulsive, follow-players, density, random.
std::string_view strategy_name(StrategyMode mode);
std::optional<StrategyMode> parse_strategy(std::string_view name);

enum class AllocationPolicy : std::uint8_t { Proportional, Halving };

std::string_view allocation_name(AllocationPolicy policy);
std::optional<AllocationPolicy> parse_allocation(std::string_view name);

struct Drone {
  int id = 0;
  Vec2 position;
  double v_max = 8.0;
  double detect_radius_r = 8.0;
  double formation_radius_R = 8.0;
  // Density-mode slot: cluster level and index within that cluster's ring.
  int follow_level = -1;
  int follow_idx = -1;
  std::optional<Vec2> target;
};

struct ClusterInfo {
  Vec2 centroid;
  PlayerId centre = 0;
  int density = 0;
  std::vector<PlayerId> members;
  int assigned_drones = 0;
};

// Kinematic step: advance at most v_max * dt toward target without
// overshooting, then clamp into the field.
Drone move_toward(Drone drone, Vec2 target, double dt, const FieldConfig& field);

// count points evenly spaced on a circle; point i sits at angle 2*pi*i/count.
std::vector<Vec2> ring_targets(Vec2 centre, int count, double radius);

// Follow-ball ring: drone i (0-based) gets angle 2*pi*i/N around the ball.
std::vector<Vec2> follow_ball_targets(std::size_t fleet_size, Vec2 ball, double formation_radius);

// Moves each drone toward its target; targets.size() must equal fleet.size().
void apply_targets(std::span<Drone> fleet, std::span<const Vec2> targets, double dt,
                   const FieldConfig& field);

// Phase 1 chases the ball. Phase 2 pushes every drone with neighbours
// inside 2r directly away from their centre of mass by a random distance in
// [0, 2r - d_mean], limited to the displacement budget left after phase 1 so
// a tick never moves a drone more than v_max * dt. Drones are processed in
// index order against the current positions of the others.
void repulsive_step(std::span<Drone> fleet, Vec2 ball, double r, Rng& rng, double dt,
                    const FieldConfig& field);

// Ring around the high-risk player when a contest yields one, otherwise the
// follow-ball ring.
std::vector<Vec2> follow_players_targets(std::size_t fleet_size, const GameState& state,
                                         double formation_radius, double d_in, double d_out);

// Greedy density centres: repeatedly take the non-excluded player with the
// most non-excluded players within detect_radius (itself included), then
// exclude that neighbourhood. Ties go to the lowest player id. Player ids
// are indices into `players`.
std::vector<ClusterInfo> find_density_centers(std::span<const Vec2> players, double detect_radius,
                                              int max_centers = 4);

// Sets assigned_drones on each cluster (clusters must be in level order).
// Both policies hand out exactly n_drones. Throws ConfigError when
// n_drones < 1, clusters is empty or the total density is zero.
void allocate_drones(std::span<ClusterInfo> clusters, int n_drones, AllocationPolicy policy);

// Density-mode targets. Drones are given (follow_level, follow_idx) slots in
// id order; the slots are only reassigned when the per-level allocation
// changes. With no players every drone keeps its position.
std::vector<Vec2> density_targets(std::span<Drone> fleet, const GameState& state, double r,
                                  AllocationPolicy policy);

struct RandomModeParams {
  double v_max = 8.0;
  double d_safe = 16.0;
  double heading_jitter_rad = 10.0 * kPi / 180.0;
  double arrival_tolerance_m = 0.5;
  int max_target_attempts = 100;
};

// Inverse-cube repulsion from drones closer than d_safe. Coincident drones
// contribute nothing since they define no direction.
Vec2 repulsion(std::span<const Drone> fleet, std::size_t self, double d_safe);

void random_step(std::span<Drone> fleet, const FieldConfig& field, const RandomModeParams& params,
                 Rng& rng, double dt);

// Flags each event detected when some drone is within r (inclusive) of it.
// Returns how many events were flagged by this call.
std::int64_t count_detected(std::span<CollisionEvent> events, std::span<const Drone> fleet,
                            double r);

struct StrategyParams {
  StrategyMode mode = StrategyMode::FollowPlayers;
  FieldConfig field;
  double formation_radius = 8.0;
  double detect_radius = 8.0;
  double d_in = 3.0;
  double d_out = 15.0;
  AllocationPolicy allocation = AllocationPolicy::Halving;
  double d_safe = 16.0;
  // Frozen placement for Fixed mode.
  std::vector<Vec2> fixed_positions;
};

// One drone controller per run. step() is called after the match has
// advanced and sees only the observable game state.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual StrategyMode mode() const = 0;
  virtual void step(std::span<Drone> fleet, const GameState& state, double dt) = 0;
};

std::unique_ptr<Strategy> make_strategy(const StrategyParams& params, Rng rng);

// Starting positions: Fixed drones sit on their placement (spares at the
// field centre); everything else starts on a 10 m circle around the centre.
std::vector<Drone> make_fleet(int n_drones, double v_max, double detect_radius,
                              double formation_radius, const FieldConfig& field,
                              std::span<const Vec2> fixed_positions = {});

}  // namespace uavsim
