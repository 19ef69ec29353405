#include "uavsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "uavsim/errors.hpp"
#include "uavsim/heatmap.hpp"

namespace uavsim {
namespace {

// A drone that moved less than this during a tick counts as hovering.
constexpr double kHoverEpsilonM = 1e-6;

MatchRules effective_rules(const SimConfig& c) {
  MatchRules rules = c.rules;
  rules.collision_threshold_m = c.collision_threshold;
  rules.high_risk_d_in_m = c.d_in;
  rules.high_risk_d_out_m = c.d_out;
  return rules;
}

// Runs fn(0) .. fn(count - 1) on a small worker pool. Each index is
// processed exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

struct RunOutcome {
  std::optional<MetricsRecord> record;
  std::string error;
};

RunOutcome run_guarded(const SimConfig& config) {
  try {
    return {run_simulation(config), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, "seed " + std::to_string(config.seed) + ": " + e.what()};
  }
}

}  // namespace

void SimConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
  };
  if (n_drones < 1) throw ConfigError("n_drones must be at least 1");
  if (ticks < 1) throw ConfigError("ticks must be at least 1");
  if (burn_in_ticks < 0) throw ConfigError("burn_in_ticks must be non-negative");
  positive(v_max, "speed");
  positive(detect_radius_r, "radius");
  positive(formation_radius_R, "formation radius");
  positive(dt, "dt");
  positive(d_in, "d_in");
  positive(d_out, "d_out");
  positive(collision_threshold, "collision threshold");
  if (d_in >= d_out) throw ConfigError("d_in must be smaller than d_out");
  if (d_safe) positive(*d_safe, "d_safe");
  field.validate();
  effective_rules(*this).validate();
  try {
    power.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<Vec2> burn_in_collisions(const SimConfig& config) {
  GameState state = setup_match(derive_seed(config.seed, "fixed-burn-in"), config.field,
                                effective_rules(config));
  for (std::int64_t t = 0; t < config.burn_in_ticks; ++t) state = step_game(std::move(state), config.dt);
  std::vector<Vec2> points;
  points.reserve(state.collisions.size());
  for (const CollisionEvent& e : state.collisions) points.push_back(e.position);
  return points;
}

RunArtifacts run_simulation_detailed(const SimConfig& config) {
  config.validate();

  RunArtifacts out;
  if (config.strategy == StrategyMode::Fixed) {
    out.fixed_positions = fixed_positions(burn_in_collisions(config), config.n_drones,
                                          config.detect_radius_r, config.field);
  }

  GameState state = setup_match(config.seed, config.field, effective_rules(config));
  std::vector<Drone> fleet = make_fleet(config.n_drones, config.v_max, config.detect_radius_r,
                                        config.formation_radius_R, config.field, out.fixed_positions);

  StrategyParams sp;
  sp.mode = config.strategy;
  sp.field = config.field;
  sp.formation_radius = config.formation_radius_R;
  sp.detect_radius = config.detect_radius_r;
  sp.d_in = config.d_in;
  sp.d_out = config.d_out;
  sp.allocation = config.allocation_policy;
  sp.d_safe = config.effective_d_safe();
  sp.fixed_positions = out.fixed_positions;
  auto strategy = make_strategy(sp, Rng(config.seed, "strategy"));

  const double hover_w = p_hovering(config.power);
  double energy_j = 0.0;
  std::vector<Vec2> before(fleet.size());
  std::int64_t dc = 0;

  for (std::int64_t t = 0; t < config.ticks; ++t) {
    const std::size_t logged = state.collisions.size();
    state = step_game(std::move(state), config.dt);

    for (std::size_t i = 0; i < fleet.size(); ++i) before[i] = fleet[i].position;
    strategy->step(fleet, state, config.dt);

    dc += count_detected(std::span(state.collisions).subspan(logged), fleet, config.detect_radius_r);

    for (std::size_t i = 0; i < fleet.size(); ++i) {
      const double moved = distance(before[i], fleet[i].position);
      const double watts =
          moved > kHoverEpsilonM ? p_moderate(config.power, moved / config.dt) : hover_w;
      energy_j += watts * config.dt;
    }
  }

  MetricsRecord& m = out.metrics;
  m.config = config;
  m.rc = static_cast<std::int64_t>(state.collisions.size());
  m.dc = dc;
  if (m.rc > 0) m.accuracy = static_cast<double>(m.dc) / static_cast<double>(m.rc);
  m.energy_wh = energy_j / 3600.0;
  m.score_red = state.score.red;
  m.score_blue = state.score.blue;
  m.wall_ticks = config.ticks;
  out.collisions = std::move(state.collisions);
  out.final_fleet = std::move(fleet);
  return out;
}

MetricsRecord run_simulation(const SimConfig& config) { return run_simulation_detailed(config).metrics; }

AggregatedRecord aggregate(const SimConfig& config, const std::vector<MetricsRecord>& runs,
                           std::vector<std::string> errors) {
  AggregatedRecord a;
  a.config = config;
  a.reps = static_cast<int>(runs.size() + errors.size());
  a.errors = std::move(errors);
  if (runs.empty()) return a;

  std::vector<double> acc;
  for (const MetricsRecord& r : runs) {
    a.rc_mean += static_cast<double>(r.rc);
    a.dc_mean += static_cast<double>(r.dc);
    a.energy_mean_wh += r.energy_wh;
    if (r.accuracy) acc.push_back(*r.accuracy);
  }
  const auto n = static_cast<double>(runs.size());
  a.rc_mean /= n;
  a.dc_mean /= n;
  a.energy_mean_wh /= n;
  a.valid_reps = static_cast<int>(acc.size());
  a.excluded_reps = static_cast<int>(runs.size() - acc.size());
  if (acc.empty()) return a;

  double sum = 0.0;
  for (double v : acc) sum += v;
  const double mean = sum / static_cast<double>(acc.size());
  double ss = 0.0;
  for (double v : acc) ss += (v - mean) * (v - mean);
  a.accuracy_mean = mean;
  a.accuracy_std = acc.size() > 1 ? std::sqrt(ss / static_cast<double>(acc.size() - 1)) : 0.0;
  a.accuracy_min = *std::min_element(acc.begin(), acc.end());
  a.accuracy_max = *std::max_element(acc.begin(), acc.end());
  return a;
}

AggregatedRecord run_replicates(const SimConfig& config, int n_reps, std::uint64_t seed_base,
                                unsigned threads) {
  if (n_reps < 1) throw ConfigError("n_reps must be at least 1");
  config.validate();
  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(n_reps));
  parallel_for(outcomes.size(), threads, [&](std::size_t i) {
    SimConfig c = config;
    c.seed = seed_base + i;
    outcomes[i] = run_guarded(c);
  });
  std::vector<MetricsRecord> runs;
  std::vector<std::string> errors;
  for (RunOutcome& o : outcomes) {
    if (o.record) {
      runs.push_back(std::move(*o.record));
    } else {
      errors.push_back(std::move(o.error));
    }
  }
  return aggregate(config, runs, std::move(errors));
}

SweepResult sweep(const SimConfig& base, const SweepAxes& axes, int n_reps, std::uint64_t seed_base,
                  unsigned threads) {
  if (axes.cell_count() == 0) throw ConfigError("sweep axes must all be non-empty");
  if (n_reps < 1) throw ConfigError("n_reps must be at least 1");

  std::vector<SimConfig> cells;
  cells.reserve(axes.cell_count());
  for (StrategyMode s : axes.strategies) {
    for (int n : axes.n_drones) {
      for (double v : axes.speeds) {
        for (double r : axes.radii) {
          SimConfig c = base;
          c.strategy = s;
          c.n_drones = n;
          c.v_max = v;
          c.detect_radius_r = r;
          c.formation_radius_R = r;
          cells.push_back(c);
        }
      }
    }
  }

  const auto reps = static_cast<std::size_t>(n_reps);
  std::vector<RunOutcome> outcomes(cells.size() * reps);
  parallel_for(outcomes.size(), threads, [&](std::size_t k) {
    SimConfig c = cells[k / reps];
    c.seed = seed_base + k % reps;
    outcomes[k] = run_guarded(c);
  });

  SweepResult result;
  result.rows.reserve(cells.size());
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    std::vector<MetricsRecord> runs;
    std::vector<std::string> errors;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      RunOutcome& o = outcomes[cell * reps + rep];
      if (o.record) {
        runs.push_back(std::move(*o.record));
      } else {
        errors.push_back(std::move(o.error));
      }
    }
    result.rows.push_back(aggregate(cells[cell], runs, std::move(errors)));
  }
  return result;
}

std::optional<std::string_view> uav_group_label(int n) {
  if (n < 4 || n > 20) return std::nullopt;
  if (n <= 7) return "4-7";
  if (n <= 13) return "7-13";
  if (n <= 16) return "13-16";
  return "16-20";
}

std::vector<GroupBest> best_per_group(const SweepResult& result) {
  static constexpr std::string_view kGroups[] = {"4-7", "7-13", "13-16", "16-20"};
  std::vector<GroupBest> out;
  for (StrategyMode s : kAllStrategies) {
    for (std::string_view g : kGroups) {
      const AggregatedRecord* best = nullptr;
      for (const AggregatedRecord& row : result.rows) {
        if (row.config.strategy != s || !row.accuracy_mean) continue;
        if (uav_group_label(row.config.n_drones) != g) continue;
        if (best == nullptr || *row.accuracy_mean > *best->accuracy_mean) best = &row;
      }
      if (best == nullptr) continue;
      out.push_back(GroupBest{s, std::string(g), best->config.n_drones, best->config.v_max,
                              best->config.detect_radius_r, *best->accuracy_mean});
    }
  }
  return out;
}

std::vector<ScenarioPreset> scenario_presets() {
  std::vector<int> sizes(35);
  for (int i = 0; i < 35; ++i) sizes[static_cast<std::size_t>(i)] = i + 1;
  return {
      {1, "scenario-1", 8.0, 8.1, sizes},
      {2, "scenario-2", 8.0, 6.1, sizes},
      {3, "scenario-3", 5.0, 10.1, sizes},
      {4, "scenario-4", 3.0, 2.1, sizes},
  };
}

SweepAxes scenario_axes(const ScenarioPreset& preset) {
  return {{kAllStrategies.begin(), kAllStrategies.end()}, preset.n_drones, {preset.speed}, {preset.radius}};
}

SweepAxes main_grid_axes() {
  SweepAxes axes;
  axes.strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
  for (int n = 4; n <= 20; ++n) axes.n_drones.push_back(n);
  for (int k = 0; k < 6; ++k) axes.speeds.push_back(0.1 + 2.0 * k);
  for (int r = 3; r <= 8; ++r) axes.radii.push_back(r);
  return axes;
}

SweepAxes radius_study_axes() {
  SweepAxes axes;
  axes.strategies = {StrategyMode::FollowPlayers};
  axes.n_drones = {12};
  axes.speeds = {8.0};
  for (int k = 0; k <= 26; ++k) axes.radii.push_back(2.0 + 0.5 * k);
  return axes;
}

}  // namespace uavsim
