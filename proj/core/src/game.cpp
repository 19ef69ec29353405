#include "uavsim/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavsim/errors.hpp"

namespace uavsim {
namespace {

enum class Role { DefenceTeam, AttackTeam, DefenceSelfish, AttackSelfish };

// Roles cycle across the lanes so each team gets 4/4/4/3 of the four
// Table-III role types and both flanks mix defenders and attackers.
Role role_for_slot(int slot) { return static_cast<Role>(slot % 4); }

// Slot of the player who takes the kickoff (the centre lane).
constexpr int kKickerSlot = kPlayersPerTeam / 2;

PlayerId kicker_id(Team team) {
  return (team == Team::Red ? 0 : kPlayersPerTeam) + kKickerSlot;
}

double base_heading(Team team) { return team == Team::Red ? 0.0 : kPi; }

Vec2 formation_spot(const FieldConfig& field, Team team, int slot, bool defensive, double lane_offset) {
  const double margin = 0.1 * field.height_m;
  const double lane_gap = (field.height_m - 2.0 * margin) / (kPlayersPerTeam - 1);
  const double shift = team == Team::Red ? -0.5 * lane_offset : 0.5 * lane_offset;
  const double y = margin + lane_gap * slot + shift;
  // Attackers on the 10 m line, defenders a further 12 m back.
  const double depth = field.ten_m_line_m + (defensive ? 12.0 : 0.0);
  const double x = team == Team::Red ? field.halfway() - depth : field.halfway() + depth;
  return field.clamp({x, y});
}

void take_possession(GameState& state, Player& p) {
  p.holding_ball = true;
  p.dribble_rad = 0.0;
  p.dribble_time_left_s = 0.0;
  state.ball.owner = p.id;
  state.ball.position = p.position;
  state.ball.flying = false;
  state.ball.target.reset();
  state.ball.speed = 0.0;
  state.possession_team = p.team;
  state.action_clock_s = 0.0;
}

// Loose ball: one of the players inside contest range picks it up. The
// candidate list is in id order and the PRNG picks among it.
void award_loose_ball(GameState& state, std::optional<PlayerId> excluded) {
  const double range_sq = state.rules.contest_range_m * state.rules.contest_range_m;
  std::vector<PlayerId> candidates;
  for (const Player& p : state.players) {
    if ((excluded && p.id == *excluded) || p.grounded_s > 0.0) continue;
    if (distance_sq(p.position, state.ball.position) <= range_sq) candidates.push_back(p.id);
  }
  if (candidates.empty()) return;
  const PlayerId winner = candidates[state.rng.below(candidates.size())];
  take_possession(state, state.player(winner));
}

void contest_possession(GameState& state, double dt) {
  Ball& ball = state.ball;
  if (ball.owner) {
    Player& holder = state.player(*ball.owner);
    const double range_sq = state.rules.contest_range_m * state.rules.contest_range_m;
    Player* tackler = nullptr;
    double nearest = range_sq;
    for (Player& p : state.players) {
      if (p.team == holder.team || p.grounded_s > 0.0) continue;
      const double d = distance_sq(p.position, holder.position);
      if (d <= nearest) {
        nearest = d;
        tackler = &p;
      }
    }
    if (tackler == nullptr) return;
    if (!state.rng.chance(1.0 - std::exp(-state.rules.tackle_rate_per_s * dt))) return;
    // Both players go to ground; the tackler has to release before playing on.
    tackler->grounded_s = state.rules.tackle_grounded_s;
    holder.holding_ball = false;
    holder.dribble_rad = 0.0;
    holder.dribble_time_left_s = 0.0;
    holder.grounded_s = state.rules.tackle_grounded_s;
    ball.owner.reset();
    ball.position = state.field.clamp(
        holder.position - Vec2{attack_sign(holder.team) * state.rules.ruck_offset_m, 0.0});
    // The breakdown: the nearest standing player of whichever side wins the
    // ruck picks the ball up.
    const Team winners = state.rng.chance(state.rules.ruck_retention) ? holder.team : opponent(holder.team);
    Player* receiver = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (Player& p : state.players) {
      if (p.team != winners || p.grounded_s > 0.0) continue;
      const double d = distance_sq(p.position, ball.position);
      if (d < best) {
        best = d;
        receiver = &p;
      }
    }
    if (receiver != nullptr) take_possession(state, *receiver);
    return;
  }
  if (ball.flying) return;
  award_loose_ball(state, std::nullopt);
}

void launch_ball(GameState& state, Player& holder, Vec2 target, double speed) {
  holder.holding_ball = false;
  holder.dribble_rad = 0.0;
  holder.dribble_time_left_s = 0.0;
  Ball& ball = state.ball;
  ball.owner.reset();
  ball.position = holder.position;
  ball.flying = true;
  ball.target = target;
  ball.speed = speed;
}

// Nearest teammate strictly behind the holder relative to the attacking
// direction. Returns false when nobody is behind.
bool try_pass(GameState& state, Player& holder) {
  const double sign = attack_sign(holder.team);
  const Player* receiver = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const Player& p : state.players) {
    if (p.team != holder.team || p.id == holder.id) continue;
    if (sign * (p.position.x - holder.position.x) >= 0.0) continue;
    const double d = distance_sq(p.position, holder.position);
    if (d < best) {
      best = d;
      receiver = &p;
    }
  }
  if (receiver == nullptr) return false;
  state.passes.push_back(PassRecord{state.tick, holder.id, receiver->id, holder.team,
                                    holder.position, receiver->position});
  launch_ball(state, holder, receiver->position, holder.pass_speed);
  return true;
}

void shoot(GameState& state, Player& holder) {
  const FieldConfig& f = state.field;
  const double x = holder.team == Team::Red ? 0.5 * (f.right_try_line() + f.width_m)
                                            : 0.5 * f.left_try_line();
  const double err = state.rules.shot_lateral_error_m;
  const double y = f.height_m * 0.5 + state.rng.uniform(-err, err);
  launch_ball(state, holder, f.clamp({x, y}), holder.shoot_speed);
}

void start_dribble(GameState& state, Player& holder) {
  const double m = state.rules.dribble_max_rad;
  holder.dribble_rad = state.rng.uniform(-m, m);
  holder.dribble_time_left_s = state.rules.action_interval_s;
}

void holder_action(GameState& state, double dt) {
  if (!state.ball.owner) return;
  state.action_clock_s += dt;
  if (state.action_clock_s + 1e-9 < state.rules.action_interval_s) return;
  state.action_clock_s -= state.rules.action_interval_s;

  Player& holder = state.player(*state.ball.owner);
  const BehaviorProfile prof = holder.behavior();
  const FieldConfig& f = state.field;
  const bool near_goal = holder.team == Team::Red
                             ? holder.position.x >= f.right_try_line() - f.twenty_two_m_line_m
                             : holder.position.x <= f.left_try_line() + f.twenty_two_m_line_m;

  const double u = state.rng.uniform();
  if (u < prof.shoot_prob) {
    if (near_goal) {
      shoot(state, holder);
      return;
    }
  } else if (u < prof.shoot_prob + prof.dribble_prob) {
    start_dribble(state, holder);
    return;
  } else if (u < prof.shoot_prob + prof.dribble_prob + prof.pass_prob_far) {
    if (!near_goal) {
      if (!try_pass(state, holder)) start_dribble(state, holder);
      return;
    }
  }
  // Keep running straight for the try line.
  holder.dribble_rad = 0.0;
  holder.dribble_time_left_s = 0.0;
}

void move_players(GameState& state, double dt) {
  const MatchRules& rules = state.rules;
  const FieldConfig& field = state.field;
  const Vec2 focus = state.focus();
  const Team attack = state.possession_team;
  const double sign = attack_sign(attack);

  state.jitter_clock_s += dt;
  if (state.jitter_clock_s + 1e-9 >= rules.jitter_interval_s) {
    state.jitter_clock_s -= rules.jitter_interval_s;
    for (Player& p : state.players) {
      p.jitter_rad = state.rng.uniform(-rules.heading_jitter_rad, rules.heading_jitter_rad);
    }
  }

  // Loose ball: the nearest few of each team run at it. Owned ball: the
  // nearest few defenders converge on the holder.
  std::vector<std::uint8_t> chasing(state.players.size(), 0);
  auto mark_nearest = [&](Team team, int count, bool front_first) {
    std::vector<std::pair<double, PlayerId>> order;
    for (const Player& p : state.players) {
      if (p.team == team && p.grounded_s <= 0.0 && !p.holding_ball) {
        double key = distance_sq(p.position, focus);
        // Defenders already beaten by the carrier only help out when nobody
        // is left in front.
        if (front_first && sign * (p.position.x - focus.x) < 0.0) key += 1e6;
        order.emplace_back(key, p.id);
      }
    }
    const auto k = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(count, 0)));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    for (std::size_t i = 0; i < k; ++i) chasing[static_cast<std::size_t>(order[i].second)] = 1;
  };
  if (state.ball.owner) {
    mark_nearest(opponent(attack), rules.defenders_chasing, true);
  } else {
    mark_nearest(Team::Red, rules.loose_ball_chasers, false);
    mark_nearest(Team::Blue, rules.loose_ball_chasers, false);
  }

  std::optional<Vec2> carrier_velocity;
  if (state.ball.owner) {
    const Player& h = state.player(*state.ball.owner);
    if (h.grounded_s <= 0.0) {
      carrier_velocity = unit_from_angle(base_heading(h.team) + h.dribble_rad) * h.run_speed;
    }
  }

  for (Player& p : state.players) {
    if (p.grounded_s > 0.0) {
      p.grounded_s = std::max(0.0, p.grounded_s - dt);
      continue;
    }
    const double max_step = p.run_speed * dt;
    if (p.holding_ball) {
      p.heading = base_heading(p.team) + p.dribble_rad;
      p.position = field.clamp(p.position + unit_from_angle(p.heading) * max_step);
      if (p.dribble_time_left_s > 0.0) {
        p.dribble_time_left_s -= dt;
        if (p.dribble_time_left_s <= 0.0) p.dribble_rad = 0.0;
      }
      continue;
    }

    Vec2 target;
    if (chasing[static_cast<std::size_t>(p.id)]) {
      target = focus;
      if (carrier_velocity) {
        // Run at where the carrier will be rather than where they are.
        const double closing = p.run_speed + carrier_velocity->norm();
        const double lead = std::min(distance(p.position, focus) / closing, rules.max_lead_s);
        target = focus + *carrier_velocity * lead;
      }
    } else if (p.team == attack) {
      const double depth = p.defensive ? rules.support_depth_defence_m : rules.support_depth_attack_m;
      target = {focus.x - sign * depth, p.home.y};
    } else if (p.defensive) {
      target = {focus.x + sign * rules.cover_depth_m, p.home.y};
    } else {
      // Line defenders come up to the gain line but never back off it. Once
      // the ball is past them they run back round to get onside.
      const double ahead = sign * (p.position.x - focus.x);
      if (ahead >= 0.0 && ahead <= rules.defensive_line_gap_m) {
        target = {p.position.x, p.home.y};
      } else {
        target = {focus.x + sign * rules.defensive_line_gap_m, p.home.y};
      }
    }
    target = field.clamp(target);

    const Vec2 delta = target - p.position;
    const double dist = delta.norm();
    if (dist < 1e-9) continue;
    const double step = std::min(max_step, dist);
    // No jitter on the final approach so players settle on their spot.
    const double heading = std::atan2(delta.y, delta.x) + (dist > max_step ? p.jitter_rad : 0.0);
    p.heading = heading;
    p.position = field.clamp(p.position + unit_from_angle(heading) * step);
  }
}

void update_ball(GameState& state, double dt) {
  Ball& ball = state.ball;
  if (ball.owner) {
    ball.position = state.player(*ball.owner).position;
    return;
  }
  if (!ball.flying) return;
  const Vec2 target = *ball.target;
  const Vec2 delta = target - ball.position;
  const double dist = delta.norm();
  const double step = ball.speed * dt;
  if (dist <= step) {
    ball.position = target;
    ball.flying = false;
    ball.target.reset();
    ball.speed = 0.0;
  } else {
    ball.position += delta * (step / dist);
  }
}

}  // namespace

const char* team_name(Team t) { return t == Team::Red ? "red" : "blue"; }

void BehaviorProfile::validate() const {
  for (double p : {shoot_prob, dribble_prob, pass_prob_far}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("behaviour probability outside [0, 1]");
  }
  if (shoot_prob + dribble_prob + pass_prob_far > 1.0 + 1e-12) {
    throw ConfigError("behaviour probabilities sum above 1");
  }
}

void MatchRules::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(collision_threshold_m, "collision_threshold");
  positive(contest_range_m, "contest_range");
  positive(high_risk_d_in_m, "d_in");
  positive(high_risk_d_out_m, "d_out");
  positive(action_interval_s, "action_interval");
  positive(jitter_interval_s, "jitter_interval");
  if (high_risk_d_in_m >= high_risk_d_out_m) throw ConfigError("d_in must be smaller than d_out");
  if (heading_jitter_rad < 0.0 || tackle_grounded_s < 0.0 || ruck_offset_m < 0.0 || dribble_max_rad < 0.0 || tackle_rate_per_s < 0.0 ||
      support_depth_attack_m < 0.0 || support_depth_defence_m < 0.0 || lane_offset_m < 0.0 || cover_depth_m < 0.0 || max_lead_s < 0.0 ||
      !(ruck_retention >= 0.0 && ruck_retention <= 1.0) ||
      defenders_chasing < 0 ||
      defensive_line_gap_m < 0.0 || shot_lateral_error_m < 0.0 || loose_ball_chasers < 0) {
    throw ConfigError("match rule constants must be non-negative");
  }
}

Vec2 GameState::focus() const {
  if (ball.owner) return player(*ball.owner).position;
  if (ball.flying && ball.target) return *ball.target;
  return ball.position;
}

GameState setup_match(std::uint64_t seed, const FieldConfig& field, const MatchRules& rules) {
  field.validate();
  rules.validate();

  GameState state;
  state.field = field;
  state.rules = rules;
  state.rng = Rng(seed, "match");
  Rng roster(seed, "players");

  state.players.reserve(2 * kPlayersPerTeam);
  for (Team team : {Team::Red, Team::Blue}) {
    for (int slot = 0; slot < kPlayersPerTeam; ++slot) {
      Player p;
      p.id = static_cast<PlayerId>(state.players.size());
      p.team = team;
      const Role role = role_for_slot(slot);
      p.defensive = role == Role::DefenceTeam || role == Role::DefenceSelfish;
      p.teamplayer = role == Role::DefenceTeam || role == Role::AttackTeam;
      p.home = formation_spot(field, team, slot, p.defensive, rules.lane_offset_m);
      p.run_speed = roster.uniform(PlayerSpeedRanges::kRunMin, PlayerSpeedRanges::kRunMax);
      p.shoot_speed = roster.uniform(PlayerSpeedRanges::kShootMin, PlayerSpeedRanges::kShootMax);
      p.pass_speed = roster.uniform(PlayerSpeedRanges::kPassMin, PlayerSpeedRanges::kPassMax);
      state.players.push_back(p);
    }
  }
  reset_to_kickoff(state, Team::Red);
  state.last_reset_tick = -1;
  return state;
}

void reset_to_kickoff(GameState& state, Team kicking) {
  const FieldConfig& f = state.field;
  for (Player& p : state.players) {
    p.position = p.home;
    p.heading = base_heading(p.team);
    p.holding_ball = false;
    p.high_risk = false;
    p.jitter_rad = 0.0;
    p.dribble_rad = 0.0;
    p.dribble_time_left_s = 0.0;
    p.grounded_s = 0.0;
  }
  Player& kicker = state.player(kicker_id(kicking));
  kicker.position = {f.halfway() - attack_sign(kicking) * 0.5, f.height_m * 0.5};
  state.ball = Ball{};
  take_possession(state, kicker);
  state.kicking_team = kicking;
  state.high_risk.reset();
  state.jitter_clock_s = 0.0;
  state.contacts.assign(state.players.size() * state.players.size(), 0);
  state.last_reset_tick = state.tick;
}

void check_invariants(const GameState& state) {
  if (state.players.size() != static_cast<std::size_t>(2 * kPlayersPerTeam)) {
    throw InvariantViolation("match must have 15 players per team");
  }
  int red = 0;
  int holders = 0;
  for (std::size_t i = 0; i < state.players.size(); ++i) {
    const Player& p = state.players[i];
    if (p.id != static_cast<PlayerId>(i)) throw InvariantViolation("player ids must match their index");
    if (p.team == Team::Red) ++red;
    if (p.holding_ball) {
      ++holders;
      if (!state.ball.owner || *state.ball.owner != p.id) {
        throw InvariantViolation("holding_ball flag disagrees with ball owner");
      }
    }
    if (!p.position.finite() || !state.field.contains(p.position)) {
      throw InvariantViolation("player " + std::to_string(p.id) + " outside the field");
    }
  }
  if (red != kPlayersPerTeam) throw InvariantViolation("match must have 15 players per team");
  if (holders > 1) throw InvariantViolation("more than one player holds the ball");
  const Ball& b = state.ball;
  if (b.owner && holders == 0) throw InvariantViolation("ball owner is not holding the ball");
  if (b.flying && (b.owner || !b.target)) {
    throw InvariantViolation("flying ball must have a target and no owner");
  }
}

GameState step_game(GameState state, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  check_invariants(state);

  ++state.tick;
  contest_possession(state, dt);
  holder_action(state, dt);
  move_players(state, dt);
  update_ball(state, dt);
  detect_player_collisions(state, state.rules.collision_threshold_m);
  mark_high_risk(state, state.rules.high_risk_d_in_m, state.rules.high_risk_d_out_m);
  apply_scoring_and_reset(state);
  return state;
}

std::vector<CollisionEvent> detect_player_collisions(GameState& state, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("collision threshold must be positive");
  const std::size_t n = state.players.size();
  if (state.contacts.size() != n * n) state.contacts.assign(n * n, 0);
  const double thr_sq = threshold * threshold;

  std::vector<CollisionEvent> fresh;
  for (std::size_t i = 0; i < n; ++i) {
    const Player& a = state.players[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Player& b = state.players[j];
      if (a.team == b.team) continue;
      const bool touching = distance_sq(a.position, b.position) <= thr_sq;
      std::uint8_t& was = state.contacts[i * n + j];
      if (touching && !was) {
        fresh.push_back(CollisionEvent{state.tick, midpoint(a.position, b.position),
                                       std::min(a.id, b.id), std::max(a.id, b.id), false});
      }
      was = touching ? 1 : 0;
    }
  }
  state.collisions.insert(state.collisions.end(), fresh.begin(), fresh.end());
  return fresh;
}

std::optional<PlayerId> find_high_risk(std::span<const Player> players, Vec2 ball, double d_in,
                                       double d_out) {
  if (!(d_in > 0.0 && d_in < d_out)) throw DomainError("need 0 < d_in < d_out");

  std::vector<const Player*> inside;
  std::vector<const Player*> outside;
  bool red_in = false;
  bool blue_in = false;
  for (const Player& p : players) {
    const double d = distance(p.position, ball);
    if (d <= d_in) {
      inside.push_back(&p);
      (p.team == Team::Red ? red_in : blue_in) = true;
    } else if (d <= d_out) {
      outside.push_back(&p);
    }
  }
  if (!(red_in && blue_in)) return std::nullopt;

  std::optional<PlayerId> best_id;
  double best = std::numeric_limits<double>::infinity();
  for (const Player* pi : inside) {
    const Player* mate = nullptr;
    double mate_dist = std::numeric_limits<double>::infinity();
    for (const Player* pj : outside) {
      if (pj->team != pi->team) continue;
      const double d = distance(pi->position, pj->position);
      if (d < mate_dist) {
        mate_dist = d;
        mate = pj;
      }
    }
    if (mate == nullptr) continue;
    const double cumulative = distance(pi->position, ball) + mate_dist;
    if (cumulative < best) {
      best = cumulative;
      best_id = pi->id;
    }
  }
  return best_id;
}

std::optional<PlayerId> mark_high_risk(GameState& state, double d_in, double d_out) {
  for (Player& p : state.players) p.high_risk = false;
  state.high_risk = find_high_risk(state.players, state.ball.position, d_in, d_out);
  if (state.high_risk) state.player(*state.high_risk).high_risk = true;
  return state.high_risk;
}

bool apply_scoring_and_reset(GameState& state) {
  const FieldConfig& f = state.field;
  std::optional<Team> scorer;
  if (state.ball.owner) {
    const Player& h = state.player(*state.ball.owner);
    if (h.team == Team::Red && h.position.x >= f.right_try_line()) scorer = Team::Red;
    if (h.team == Team::Blue && h.position.x <= f.left_try_line()) scorer = Team::Blue;
  } else if (!state.ball.flying) {
    if (f.blue_goal_area().contains(state.ball.position)) scorer = Team::Red;
    if (f.red_goal_area().contains(state.ball.position)) scorer = Team::Blue;
  }
  if (!scorer) return false;
  (*scorer == Team::Red ? state.score.red : state.score.blue) += 1;
  reset_to_kickoff(state, opponent(state.kicking_team));
  return true;
}

}  // namespace uavsim
