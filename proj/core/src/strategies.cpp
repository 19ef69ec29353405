#include "uavsim/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uavsim/errors.hpp"

namespace uavsim {

std::string_view strategy_name(StrategyMode mode) {
  switch (mode) {
    case StrategyMode::Fixed: return "fixed";
    case StrategyMode::FollowBall: return "follow-ball";
    case StrategyMode::Repulsive: return "repulsive";
    case StrategyMode::FollowPlayers: return "follow-players";
    case StrategyMode::DensityBased: return "density";
    case StrategyMode::Random: return "random";
  }
  return "unknown";
}

std::optional<StrategyMode> parse_strategy(std::string_view name) {
  for (StrategyMode m : kAllStrategies) {
    if (strategy_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view allocation_name(AllocationPolicy policy) {
  return policy == AllocationPolicy::Halving ? "halving" : "proportional";
}

std::optional<AllocationPolicy> parse_allocation(std::string_view name) {
  if (name == "halving") return AllocationPolicy::Halving;
  if (name == "proportional") return AllocationPolicy::Proportional;
  return std::nullopt;
}

void repulsive_step(std::span<Drone> fleet, Vec2 ball, double r, Rng& rng, double dt,
                    const FieldConfig& field) {
  if (!(r > 0.0)) throw DomainError("repulsive radius must be positive");
  std::vector<double> used(fleet.size(), 0.0);
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const Vec2 before = fleet[i].position;
    fleet[i] = move_toward(fleet[i], ball, dt, field);
    used[i] = distance(before, fleet[i].position);
  }

  const double reach = 2.0 * r;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    Drone& d = fleet[i];
    Vec2 sum;
    int near = 0;
    for (std::size_t j = 0; j < fleet.size(); ++j) {
      if (j == i || distance(d.position, fleet[j].position) > reach) continue;
      sum += fleet[j].position;
      ++near;
    }
    if (near == 0) continue;
    const Vec2 com = sum * (1.0 / near);
    const double d_mean = distance(d.position, com);
    if (d_mean >= reach) continue;
    const double theta = std::atan2(d.position.y - com.y, d.position.x - com.x);
    double d_move = rng.uniform(0.0, reach - d_mean);
    d_move = std::min(d_move, std::max(0.0, d.v_max * dt - used[i]));
    d.position = field.clamp(d.position + unit_from_angle(theta) * d_move);
  }
}

std::vector<ClusterInfo> find_density_centers(std::span<const Vec2> players, double detect_radius,
                                              int max_centers) {
  if (!(detect_radius > 0.0)) throw DomainError("density radius must be positive");
  if (max_centers < 1) throw DomainError("need at least one density centre");
  const double r_sq = detect_radius * detect_radius;
  const std::size_t n = players.size();
  std::vector<std::uint8_t> excluded(n, 0);
  std::vector<ClusterInfo> clusters;

  for (int level = 0; level < max_centers; ++level) {
    std::optional<std::size_t> best;
    int best_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (excluded[i]) continue;
      int count = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!excluded[j] && distance_sq(players[i], players[j]) <= r_sq) ++count;
      }
      if (count > best_count) {
        best_count = count;
        best = i;
      }
    }
    if (!best) break;

    ClusterInfo c;
    c.centre = static_cast<PlayerId>(*best);
    c.centroid = players[*best];
    for (std::size_t j = 0; j < n; ++j) {
      if (!excluded[j] && distance_sq(players[*best], players[j]) <= r_sq) {
        c.members.push_back(static_cast<PlayerId>(j));
        excluded[j] = 1;
      }
    }
    c.density = static_cast<int>(c.members.size());
    clusters.push_back(std::move(c));
  }
  return clusters;
}

void allocate_drones(std::span<ClusterInfo> clusters, int n_drones, AllocationPolicy policy) {
  if (n_drones < 1) throw ConfigError("need at least one drone to allocate");
  if (clusters.empty()) throw ConfigError("no clusters to allocate drones to");
  long total = 0;
  for (const ClusterInfo& c : clusters) {
    if (c.density < 0) throw ConfigError("negative cluster density");
    total += c.density;
  }
  if (total == 0) throw ConfigError("total cluster density is zero");

  if (policy == AllocationPolicy::Halving) {
    int remaining = n_drones;
    for (std::size_t j = 0; j + 1 < clusters.size(); ++j) {
      clusters[j].assigned_drones = remaining / 2;
      remaining -= clusters[j].assigned_drones;
    }
    clusters.back().assigned_drones = remaining;
    return;
  }

  int given = 0;
  for (ClusterInfo& c : clusters) {
    c.assigned_drones = static_cast<int>(static_cast<long>(n_drones) * c.density / total);
    given += c.assigned_drones;
  }
  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clusters[a].density > clusters[b].density;
  });
  for (std::size_t k = 0; given < n_drones; k = (k + 1) % order.size()) {
    ++clusters[order[k]].assigned_drones;
    ++given;
  }
}

std::vector<Vec2> density_targets(std::span<Drone> fleet, const GameState& state, double r,
                                  AllocationPolicy policy) {
  std::vector<Vec2> targets;
  targets.reserve(fleet.size());
  if (state.players.empty() || fleet.empty()) {
    for (const Drone& d : fleet) targets.push_back(d.position);
    return targets;
  }
  std::vector<Vec2> positions;
  positions.reserve(state.players.size());
  for (const Player& p : state.players) positions.push_back(p.position);

  auto clusters = find_density_centers(positions, r);
  allocate_drones(clusters, static_cast<int>(fleet.size()), policy);

  // Slots are handed out in drone-id order, so they are identical from tick
  // to tick for as long as the allocation vector is.
  std::size_t k = 0;
  for (std::size_t level = 0; level < clusters.size(); ++level) {
    const auto ring = ring_targets(clusters[level].centroid, clusters[level].assigned_drones, r);
    for (std::size_t idx = 0; idx < ring.size(); ++idx, ++k) {
      fleet[k].follow_level = static_cast<int>(level);
      fleet[k].follow_idx = static_cast<int>(idx);
      targets.push_back(ring[idx]);
    }
  }
  return targets;
}

Vec2 repulsion(std::span<const Drone> fleet, std::size_t self, double d_safe) {
  Vec2 total;
  const Vec2 p = fleet[self].position;
  for (std::size_t j = 0; j < fleet.size(); ++j) {
    if (j == self) continue;
    const Vec2 diff = p - fleet[j].position;
    const double d = diff.norm();
    if (d <= 0.0 || d >= d_safe) continue;
    total += diff * (1.0 / (d * d * d));
  }
  return total;
}

void random_step(std::span<Drone> fleet, const FieldConfig& field, const RandomModeParams& params,
                 Rng& rng, double dt) {
  if (!(params.v_max > 0.0) || !(params.d_safe > 0.0)) {
    throw DomainError("random mode needs positive v_max and d_safe");
  }
  const double safe_sq = params.d_safe * params.d_safe;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    Drone& d = fleet[i];
    const bool reached =
        d.target && distance(d.position, *d.target) <= params.arrival_tolerance_m;
    if (!d.target || reached) {
      std::optional<Vec2> pick;
      Vec2 last;
      for (int attempt = 0; attempt < params.max_target_attempts && !pick; ++attempt) {
        last = {rng.uniform(0.0, field.width_m), rng.uniform(0.0, field.height_m)};
        bool clear = true;
        for (std::size_t j = 0; j < fleet.size() && clear; ++j) {
          if (j != i && distance_sq(last, fleet[j].position) < safe_sq) clear = false;
        }
        if (clear) pick = last;
      }
      if (pick) {
        d.target = pick;
      } else if (!d.target) {
        d.target = last;
      }
    }

    Vec2 dir = *d.target - d.position;
    const double len = dir.norm();
    dir = len > 0.0 ? dir * (1.0 / len) : Vec2{};
    dir = rotate(dir, rng.uniform(-params.heading_jitter_rad, params.heading_jitter_rad));
    const Vec2 velocity = dir * params.v_max + repulsion(fleet, i, params.d_safe);
    d.position = field.clamp(d.position + velocity * dt);
  }
}

std::int64_t count_detected(std::span<CollisionEvent> events, std::span<const Drone> fleet,
                            double r) {
  if (!(r > 0.0)) throw DomainError("detection radius must be positive");
  const double r_sq = r * r;
  std::int64_t flagged = 0;
  for (CollisionEvent& e : events) {
    if (e.detected) continue;
    for (const Drone& d : fleet) {
      if (distance_sq(d.position, e.position) <= r_sq) {
        e.detected = true;
        ++flagged;
        break;
      }
    }
  }
  return flagged;
}

namespace {

class FixedStrategy final : public Strategy {
 public:
  explicit FixedStrategy(StrategyParams p) : p_(std::move(p)) {}
  StrategyMode mode() const override { return StrategyMode::Fixed; }
  void step(std::span<Drone> fleet, const GameState&, double dt) override {
    for (std::size_t i = 0; i < fleet.size(); ++i) {
      const Vec2 spot = i < p_.fixed_positions.size() ? p_.fixed_positions[i] : p_.field.centre();
      fleet[i] = move_toward(fleet[i], spot, dt, p_.field);
    }
  }

 private:
  StrategyParams p_;
};

class FollowBallStrategy final : public Strategy {
 public:
  explicit FollowBallStrategy(StrategyParams p) : p_(std::move(p)) {}
  StrategyMode mode() const override { return StrategyMode::FollowBall; }
  void step(std::span<Drone> fleet, const GameState& state, double dt) override {
    const auto targets = follow_ball_targets(fleet.size(), state.ball.position, p_.formation_radius);
    apply_targets(fleet, targets, dt, p_.field);
  }

 private:
  StrategyParams p_;
};

class RepulsiveStrategy final : public Strategy {
 public:
  RepulsiveStrategy(StrategyParams p, Rng rng) : p_(std::move(p)), rng_(rng) {}
  StrategyMode mode() const override { return StrategyMode::Repulsive; }
  void step(std::span<Drone> fleet, const GameState& state, double dt) override {
    repulsive_step(fleet, state.ball.position, p_.detect_radius, rng_, dt, p_.field);
  }

 private:
  StrategyParams p_;
  Rng rng_;
};

class FollowPlayersStrategy final : public Strategy {
 public:
  explicit FollowPlayersStrategy(StrategyParams p) : p_(std::move(p)) {}
  StrategyMode mode() const override { return StrategyMode::FollowPlayers; }
  void step(std::span<Drone> fleet, const GameState& state, double dt) override {
    const auto targets =
        follow_players_targets(fleet.size(), state, p_.formation_radius, p_.d_in, p_.d_out);
    apply_targets(fleet, targets, dt, p_.field);
  }

 private:
  StrategyParams p_;
};

class DensityStrategy final : public Strategy {
 public:
  explicit DensityStrategy(StrategyParams p) : p_(std::move(p)) {}
  StrategyMode mode() const override { return StrategyMode::DensityBased; }
  void step(std::span<Drone> fleet, const GameState& state, double dt) override {
    const auto targets = density_targets(fleet, state, p_.detect_radius, p_.allocation);
    apply_targets(fleet, targets, dt, p_.field);
  }

 private:
  StrategyParams p_;
};

class RandomStrategy final : public Strategy {
 public:
  RandomStrategy(StrategyParams p, Rng rng) : p_(std::move(p)), rng_(rng) {}
  StrategyMode mode() const override { return StrategyMode::Random; }
  void step(std::span<Drone> fleet, const GameState&, double dt) override {
    if (fleet.empty()) return;
    RandomModeParams rp;
    rp.v_max = fleet.front().v_max;
    rp.d_safe = p_.d_safe;
    random_step(fleet, p_.field, rp, rng_, dt);
  }

 private:
  StrategyParams p_;
  Rng rng_;
};

}  // namespace

std::unique_ptr<Strategy> make_strategy(const StrategyParams& params, Rng rng) {
  switch (params.mode) {
    case StrategyMode::Fixed: return std::make_unique<FixedStrategy>(params);
    case StrategyMode::FollowBall: return std::make_unique<FollowBallStrategy>(params);
    case StrategyMode::Repulsive: return std::make_unique<RepulsiveStrategy>(params, rng);
    case StrategyMode::FollowPlayers: return std::make_unique<FollowPlayersStrategy>(params);
    case StrategyMode::DensityBased: return std::make_unique<DensityStrategy>(params);
    case StrategyMode::Random: return std::make_unique<RandomStrategy>(params, rng);
  }
  throw ConfigError("unknown strategy mode");
}

}  // namespace uavsim
