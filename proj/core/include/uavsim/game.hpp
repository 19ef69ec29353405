#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavsim/geometry.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

enum class Team : std::uint8_t { Red, Blue };

inline constexpr int kPlayersPerTeam = 15;

// +1 for Red (attacks +x), -1 for Blue.
constexpr double attack_sign(Team t) { return t == Team::Red ? 1.0 : -1.0; }
constexpr Team opponent(Team t) { return t == Team::Red ? Team::Blue : Team::Red; }
const char* team_name(Team t);

using PlayerId = std::int32_t;

// Per-decision action probabilities. Shooting is only considered near the
// opposing goal and passing only far from it; leftover mass means "keep
// running with the ball".
struct BehaviorProfile {
  double shoot_prob = 0.0;
  double dribble_prob = 0.0;
  double pass_prob_far = 0.0;

  static constexpr BehaviorProfile team_player() { return {0.10, 0.40, 0.20}; }
  static constexpr BehaviorProfile selfish() { return {0.30, 0.40, 0.05}; }

  void validate() const;
};

struct Player {
  PlayerId id = 0;
  Team team = Team::Red;
  bool defensive = false;
  bool teamplayer = false;
  bool holding_ball = false;
  Vec2 position;
  double heading = 0.0;
  double run_speed = 0.0;
  double shoot_speed = 0.0;
  double pass_speed = 0.0;
  bool high_risk = false;

  // Kickoff spot; its y coordinate is the player's running lane.
  Vec2 home;
  double jitter_rad = 0.0;
  double dribble_rad = 0.0;
  double dribble_time_left_s = 0.0;
  // Time left on the ground after being tackled; a grounded player neither
  // moves nor plays the ball.
  double grounded_s = 0.0;

  BehaviorProfile behavior() const {
    return teamplayer ? BehaviorProfile::team_player() : BehaviorProfile::selfish();
  }
};

// Table of sampling ranges for player attributes (m/s).
struct PlayerSpeedRanges {
  static constexpr double kRunMin = 5.5, kRunMax = 9.5;
  static constexpr double kShootMin = 14.0, kShootMax = 14.8;
  static constexpr double kPassMin = 25.0, kPassMax = 25.8;
};

struct Ball {
  Vec2 position;
  std::optional<PlayerId> owner;
  bool flying = false;
  std::optional<Vec2> target;
  double speed = 0.0;
};

struct CollisionEvent {
  std::int64_t tick = 0;
  Vec2 position;
  PlayerId player_a = 0;  // always < player_b
  PlayerId player_b = 0;
  bool detected = false;

  friend bool operator==(const CollisionEvent&, const CollisionEvent&) = default;
};

struct PassRecord {
  std::int64_t tick = 0;
  PlayerId passer = 0;
  PlayerId receiver = 0;
  Team team = Team::Red;
  Vec2 from;
  Vec2 target;
};

struct Score {
  int red = 0;
  int blue = 0;
  friend bool operator==(Score, Score) = default;
};

// Behavioural constants of the match model. Everything the agent rules
// leave unquantified lives here with its default.
struct MatchRules {
  double collision_threshold_m = 1.5;
  double contest_range_m = 1.0;
  double high_risk_d_in_m = 3.0;
  double high_risk_d_out_m = 15.0;
  // Ball holders pick a new action once per interval of simulated time.
  double action_interval_s = 1.0;
  double jitter_interval_s = 1.0;
  double heading_jitter_rad = 10.0 * kPi / 180.0;
  double dribble_max_rad = 45.0 * kPi / 180.0;
  // Poisson rate at which an opponent in contact range dislodges the ball.
  double tackle_rate_per_s = 8.0;
  double tackle_grounded_s = 1.5;
  // A tackled carrier presents the ball this far behind them.
  double ruck_offset_m = 1.5;
  // Probability that the tackled side keeps the ball at the breakdown.
  double ruck_retention = 0.85;
  // How many players per team run at a loose or flying ball.
  int loose_ball_chasers = 2;
  // How many defenders converge on the ball carrier.
  int defenders_chasing = 2;
  // Defensive-role players of the defending side sweep this far behind the
  // gain line.
  double cover_depth_m = 12.0;
  // Upper bound on how far ahead a chasing defender leads the carrier.
  double max_lead_s = 2.0;
  double support_depth_attack_m = 4.0;
  double support_depth_defence_m = 12.0;
  double defensive_line_gap_m = 2.0;
  // Lateral offset between the red and blue running lanes.
  double lane_offset_m = 0.0;
  double shot_lateral_error_m = 8.0;

  void validate() const;
};

struct GameState {
  std::int64_t tick = 0;
  FieldConfig field;
  MatchRules rules;
  std::vector<Player> players;
  Ball ball;
  Score score;
  std::vector<CollisionEvent> collisions;
  std::vector<PassRecord> passes;
  Team kicking_team = Team::Red;
  Team possession_team = Team::Red;
  std::optional<PlayerId> high_risk;
  // Tick at which the last kickoff reset happened (-1 = none yet).
  std::int64_t last_reset_tick = -1;
  double action_clock_s = 0.0;
  double jitter_clock_s = 0.0;
  // Row-major players x players flags: pair within the collision threshold
  // at the end of the previous tick.
  std::vector<std::uint8_t> contacts;
  Rng rng;

  const Player& player(PlayerId id) const { return players.at(static_cast<std::size_t>(id)); }
  Player& player(PlayerId id) { return players.at(static_cast<std::size_t>(id)); }
  // Where play is: the holder, the landing point of a flying ball, or the
  // resting ball.
  Vec2 focus() const;
};

// Builds the kickoff state: 15 red players in the left half, 15 blue in the
// right, speeds drawn from the seeded "players" stream, ball with Red's
// designated kicker. Throws ConfigError on an invalid field or rules.
GameState setup_match(std::uint64_t seed, const FieldConfig& field, const MatchRules& rules = {});

// Advances one tick: possession contest, holder action, movement, ball
// flight, collision detection, high-risk marking, scoring. Throws
// InvariantViolation if the incoming state is corrupt and DomainError for
// dt <= 0.
GameState step_game(GameState state, double dt);

// Throws InvariantViolation on broken ownership, team sizes or positions.
void check_invariants(const GameState& state);

// Rising-edge proximity test between opposing players. New events are
// appended to state.collisions (detected = false) and also returned.
std::vector<CollisionEvent> detect_player_collisions(GameState& state, double threshold);

// Pure high-risk selection over a player set. A contest is active when
// players of both teams are within d_in of the ball.
std::optional<PlayerId> find_high_risk(std::span<const Player> players, Vec2 ball, double d_in,
                                       double d_out);

// Runs find_high_risk on the state and updates the players' high_risk flags.
std::optional<PlayerId> mark_high_risk(GameState& state, double d_in, double d_out);

// Awards a try (holder over the opposing try line) or a goal (ownerless ball
// resting in a goal area) and resets to kickoff with the other team kicking.
// Returns true if a score happened.
bool apply_scoring_and_reset(GameState& state);

// Puts every player back on its kickoff spot; `kicking` receives the ball.
void reset_to_kickoff(GameState& state, Team kicking);

}  // namespace uavsim
