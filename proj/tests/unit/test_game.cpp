#include "doctest.h"

#include <algorithm>

#include "uavsim/errors.hpp"
#include "uavsim/game.hpp"

using namespace uavsim;

namespace {

// Bare match with every player parked in a far corner row so tests can
// place the few that matter.
GameState parked_state() {
  GameState s = setup_match(1, FieldConfig{});
  for (Player& p : s.players) {
    p.holding_ball = false;
    p.position = {p.team == Team::Red ? 2.0 + p.id : 98.0 - (p.id - 15), 69.0};
  }
  s.ball = Ball{};
  s.ball.position = {50.0, 35.0};
  s.contacts.assign(s.players.size() * s.players.size(), 0);
  return s;
}

Player at(PlayerId id, Team team, Vec2 pos) {
  Player p;
  p.id = id;
  p.team = team;
  p.position = pos;
  return p;
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("setup is deterministic for a seed") {
    const GameState a = setup_match(42, FieldConfig{});
    const GameState b = setup_match(42, FieldConfig{});
    REQUIRE(a.players.size() == b.players.size());
    for (std::size_t i = 0; i < a.players.size(); ++i) {
      CHECK(a.players[i].position == b.players[i].position);
      CHECK(a.players[i].run_speed == b.players[i].run_speed);
      CHECK(a.players[i].shoot_speed == b.players[i].shoot_speed);
      CHECK(a.players[i].pass_speed == b.players[i].pass_speed);
    }
    CHECK(a.ball.owner == b.ball.owner);
    CHECK(a.rng == b.rng);
  }

  TEST_CASE("kickoff has two full teams and one holder") {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      const GameState s = setup_match(seed, FieldConfig{});
      const auto red = std::count_if(s.players.begin(), s.players.end(),
                                     [](const Player& p) { return p.team == Team::Red; });
      const auto holders = std::count_if(s.players.begin(), s.players.end(),
                                         [](const Player& p) { return p.holding_ball; });
      CHECK(red == 15);
      CHECK(s.players.size() == 30);
      CHECK(holders == 1);
      CHECK_NOTHROW(check_invariants(s));
    }
  }

  TEST_CASE("sampled speeds fall in their ranges") {
    const GameState s = setup_match(7, FieldConfig{});
    for (const Player& p : s.players) {
      CHECK(p.run_speed >= 5.5);
      CHECK(p.run_speed <= 9.5);
      CHECK(p.shoot_speed >= 14.0);
      CHECK(p.shoot_speed <= 14.8);
      CHECK(p.pass_speed >= 25.0);
      CHECK(p.pass_speed <= 25.8);
    }
  }

  TEST_CASE("opposing contact logs one event at the midpoint") {
    GameState s = parked_state();
    s.players[0].position = {10.0, 10.0};
    s.players[15].position = {10.0, 11.0};
    const auto ev = detect_player_collisions(s, 1.5);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].position.x == doctest::Approx(10.0));
    CHECK(ev[0].position.y == doctest::Approx(10.5));
    CHECK(ev[0].player_a == 0);
    CHECK(ev[0].player_b == 15);
    CHECK(s.collisions.size() == 1);
  }

  TEST_CASE("a contact that persists is not logged again") {
    GameState s = parked_state();
    s.players[0].position = {10.0, 10.0};
    s.players[15].position = {10.0, 11.0};
    CHECK(detect_player_collisions(s, 1.5).size() == 1);
    CHECK(detect_player_collisions(s, 1.5).empty());
    // Separate, then touch again: a fresh rising edge.
    s.players[15].position = {10.0, 14.0};
    CHECK(detect_player_collisions(s, 1.5).empty());
    s.players[15].position = {10.0, 11.0};
    CHECK(detect_player_collisions(s, 1.5).size() == 1);
  }

  TEST_CASE("teammates in contact are ignored") {
    GameState s = parked_state();
    s.players[0].position = {10.0, 10.0};
    s.players[1].position = {10.5, 10.0};
    CHECK(detect_player_collisions(s, 1.5).empty());
  }

  TEST_CASE("high-risk player minimises ball plus teammate distance") {
    const std::vector<Player> ps = {
        at(0, Team::Red, {1, 0}),
        at(1, Team::Blue, {2, 0}),
        at(2, Team::Red, {5, 0}),
        at(3, Team::Blue, {10, 0}),
    };
    // Brute force over every inside player and every outside teammate.
    std::optional<PlayerId> oracle;
    double best = 1e300;
    for (const Player& a : ps) {
      if (distance(a.position, {0, 0}) > 3.0) continue;
      for (const Player& b : ps) {
        const double db = distance(b.position, {0, 0});
        if (b.team != a.team || db <= 3.0 || db > 15.0) continue;
        const double d = distance(a.position, {0, 0}) + distance(a.position, b.position);
        if (d < best) {
          best = d;
          oracle = a.id;
        }
      }
    }
    REQUIRE(oracle == 0);
    CHECK(best == doctest::Approx(5.0));
    CHECK(find_high_risk(ps, {0, 0}, 3.0, 15.0) == oracle);
  }

  TEST_CASE("no contest means no high-risk player") {
    const std::vector<Player> only_red = {at(0, Team::Red, {1, 0}), at(1, Team::Red, {5, 0})};
    CHECK_FALSE(find_high_risk(only_red, {0, 0}, 3.0, 15.0));
    const std::vector<Player> far = {at(0, Team::Red, {20, 0}), at(1, Team::Blue, {25, 0})};
    CHECK_FALSE(find_high_risk(far, {0, 0}, 3.0, 15.0));
    // Contest exists but nobody has a teammate in the outer ring.
    const std::vector<Player> lonely = {at(0, Team::Red, {1, 0}), at(1, Team::Blue, {2, 0})};
    CHECK_FALSE(find_high_risk(lonely, {0, 0}, 3.0, 15.0));
  }

  TEST_CASE("red holder over the try line scores and resets") {
    GameState s = setup_match(3, FieldConfig{});
    const PlayerId holder = *s.ball.owner;
    REQUIRE(s.player(holder).team == Team::Red);
    s.player(holder).position = {96.0, 35.0};
    s.ball.position = s.player(holder).position;
    CHECK(apply_scoring_and_reset(s));
    CHECK(s.score == Score{1, 0});
    CHECK(s.kicking_team == Team::Blue);
    for (const Player& p : s.players) {
      if (!p.holding_ball) CHECK(p.position == p.home);
    }
    REQUIRE(s.ball.owner);
    CHECK(s.player(*s.ball.owner).team == Team::Blue);
  }

  TEST_CASE("loose ball resting in the blue in-goal scores for red") {
    GameState s = parked_state();
    s.ball.position = {98.0, 35.0};
    CHECK(apply_scoring_and_reset(s));
    CHECK(s.score == Score{1, 0});
  }

  TEST_CASE("no scoring condition leaves the state alone") {
    GameState s = setup_match(3, FieldConfig{});
    const auto before = s.players;
    CHECK_FALSE(apply_scoring_and_reset(s));
    CHECK(s.score == Score{});
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(s.players[i].position == before[i].position);
  }

  TEST_CASE("loose ball with nobody in range stays put") {
    GameState s = parked_state();
    s.ball.position = {50.0, 35.0};
    // Freeze movement so nobody can reach it this tick.
    for (Player& p : s.players) p.grounded_s = 10.0;
    GameState next = step_game(s, 0.1);
    CHECK(next.ball.position == Vec2{50.0, 35.0});
    CHECK_FALSE(next.ball.owner);
  }

  TEST_CASE("a holder near goal can shoot and the ball leaves the owner") {
    int shots = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      GameState s = setup_match(seed, FieldConfig{});
      for (Player& p : s.players) {
        if (p.team == Team::Blue) p.position = {8.0, 2.0 + p.id};
      }
      Player& h = s.player(*s.ball.owner);
      h.position = {80.0, 35.0};
      s.ball.position = h.position;
      s.action_clock_s = s.rules.action_interval_s;
      const GameState next = step_game(s, 0.1);
      if (next.ball.flying) {
        ++shots;
        CHECK_FALSE(next.ball.owner);
        REQUIRE(next.ball.target);
        CHECK(next.ball.target->x > s.field.right_try_line());
      }
    }
    CHECK(shots > 0);
  }

  TEST_CASE("repeated 1000-tick matches produce the same collision log") {
    auto play = [] {
      GameState s = setup_match(1, FieldConfig{});
      for (int i = 0; i < 1000; ++i) s = step_game(std::move(s), 0.1);
      return s.collisions;
    };
    const auto a = play();
    const auto b = play();
    CHECK_FALSE(a.empty());
    CHECK(a == b);
  }

  TEST_CASE("step rejects bad dt and corrupt state") {
    GameState s = setup_match(1, FieldConfig{});
    CHECK_THROWS_AS(step_game(s, 0.0), DomainError);
    s.players[3].holding_ball = true;
    CHECK_THROWS_AS(step_game(s, 0.1), InvariantViolation);
  }
}
