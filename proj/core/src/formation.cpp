#include <algorithm>
#include <cmath>

#include "uavsim/errors.hpp"
#include "uavsim/strategies.hpp"

namespace uavsim {

Drone move_toward(Drone drone, Vec2 target, double dt, const FieldConfig& field) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  drone.target = target;
  const Vec2 delta = target - drone.position;
  const double dist = delta.norm();
  const double reach = drone.v_max * dt;
  if (dist <= reach) {
    drone.position = target;
  } else {
    drone.position += delta * (reach / dist);
  }
  drone.position = field.clamp(drone.position);
  return drone;
}

std::vector<Vec2> ring_targets(Vec2 centre, int count, double radius) {
  std::vector<Vec2> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  const double step = kTwoPi / count;
  for (int i = 0; i < count; ++i) {
    const double theta = step * i;
    out.push_back({centre.x + radius * std::cos(theta), centre.y + radius * std::sin(theta)});
  }
  return out;
}

std::vector<Vec2> follow_ball_targets(std::size_t fleet_size, Vec2 ball, double formation_radius) {
  return ring_targets(ball, static_cast<int>(fleet_size), formation_radius);
}

void apply_targets(std::span<Drone> fleet, std::span<const Vec2> targets, double dt,
                   const FieldConfig& field) {
  if (targets.size() != fleet.size()) throw DomainError("one target per drone required");
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    fleet[i] = move_toward(fleet[i], targets[i], dt, field);
  }
}

std::vector<Vec2> follow_players_targets(std::size_t fleet_size, const GameState& state,
                                         double formation_radius, double d_in, double d_out) {
  const auto hr = find_high_risk(state.players, state.ball.position, d_in, d_out);
  const Vec2 centre = hr ? state.player(*hr).position : state.ball.position;
  return ring_targets(centre, static_cast<int>(fleet_size), formation_radius);
}

std::vector<Drone> make_fleet(int n_drones, double v_max, double detect_radius,
                              double formation_radius, const FieldConfig& field,
                              std::span<const Vec2> fixed_positions) {
  if (n_drones < 1) throw ConfigError("fleet needs at least one drone");
  if (!(v_max > 0.0) || !(detect_radius > 0.0) || !(formation_radius > 0.0)) {
    throw ConfigError("drone speed and radii must be positive");
  }
  std::vector<Drone> fleet;
  fleet.reserve(static_cast<std::size_t>(n_drones));
  const auto start = ring_targets(field.centre(), n_drones, 10.0);
  for (int i = 0; i < n_drones; ++i) {
    Drone d;
    d.id = i;
    d.v_max = v_max;
    d.detect_radius_r = detect_radius;
    d.formation_radius_R = formation_radius;
    if (!fixed_positions.empty()) {
      d.position = static_cast<std::size_t>(i) < fixed_positions.size()
                       ? fixed_positions[static_cast<std::size_t>(i)]
                       : field.centre();
    } else {
      d.position = start[static_cast<std::size_t>(i)];
    }
    d.position = field.clamp(d.position);
    fleet.push_back(d);
  }
  return fleet;
}

}  // namespace uavsim
