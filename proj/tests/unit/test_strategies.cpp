#include "doctest.h"

#include <cmath>
#include <numeric>

#include "uavsim/errors.hpp"
#include "uavsim/strategies.hpp"

using namespace uavsim;

namespace {

Drone drone_at(Vec2 p, double v_max = 8.0) {
  Drone d;
  d.position = p;
  d.v_max = v_max;
  return d;
}

void check_ring(const std::vector<Vec2>& ring, Vec2 c, double radius) {
  const double step = kTwoPi / static_cast<double>(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    CHECK(std::abs(distance(ring[i], c) - radius) < 1e-9);
    if (ring.size() > 1) {
      const Vec2 a = ring[i] - c;
      const Vec2 b = ring[(i + 1) % ring.size()] - c;
      double gap = std::atan2(b.y, b.x) - std::atan2(a.y, a.x);
      if (gap < 0) gap += kTwoPi;
      CHECK(std::abs(gap - step) < 1e-9);
    }
  }
}

}  // namespace

TEST_SUITE("strategies") {
  TEST_CASE("strategy names round trip") {
    for (StrategyMode m : kAllStrategies) CHECK(parse_strategy(strategy_name(m)) == m);
    CHECK(strategy_name(StrategyMode::DensityBased) == "density");
    CHECK_FALSE(parse_strategy("hover"));
  }

  TEST_CASE("four drones ring the ball on the axes") {
    const auto t = follow_ball_targets(4, {10, 20}, 5.0);
    REQUIRE(t.size() == 4);
    const Vec2 want[] = {{15, 20}, {10, 25}, {5, 20}, {10, 15}};
    for (int i = 0; i < 4; ++i) {
      CHECK(t[i].x == doctest::Approx(want[i].x));
      CHECK(t[i].y == doctest::Approx(want[i].y));
    }
  }

  TEST_CASE("single drone sits at angle zero") {
    const auto t = follow_ball_targets(1, {3, 4}, 2.0);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == Vec2{5, 4});
  }

  TEST_CASE("rings are exact for many sizes") {
    for (int n = 1; n <= 12; ++n) check_ring(ring_targets({33.3, 12.1}, n, 6.5), {33.3, 12.1}, 6.5);
    const auto six = ring_targets({0, 0}, 6, 1.0);
    CHECK(std::atan2(six[1].y, six[1].x) == doctest::Approx(kPi / 3));
  }

  TEST_CASE("move_toward clamps speed, never overshoots and stays in bounds") {
    const FieldConfig f;
    CHECK(move_toward(drone_at({0, 0}), {100, 0}, 0.1, f).position == Vec2{0.8, 0});
    const Drone near = move_toward(drone_at({10, 10}), {10.3, 10}, 0.1, f);
    CHECK(near.position == Vec2{10.3, 10});
    const Drone out = move_toward(drone_at({0.2, 0.2}), {-50, -50}, 0.1, f);
    CHECK(f.contains(out.position));
  }

  TEST_CASE("repulsion follows the inverse-cube law") {
    std::vector<Drone> fleet = {drone_at({0, 0}), drone_at({1, 0})};
    const Vec2 r = repulsion(fleet, 0, 2.0);
    CHECK(r.x == doctest::Approx(-1.0));
    CHECK(r.y == doctest::Approx(0.0));
    fleet.resize(1);
    CHECK(repulsion(fleet, 0, 2.0) == Vec2{});
    std::vector<Drone> edge = {drone_at({0, 0}), drone_at({2.0 + 1e-9, 0})};
    CHECK(repulsion(edge, 0, 2.0) == Vec2{});
  }

  TEST_CASE("repulsive phase two heads away from the neighbour centre") {
    // Neighbours are pinned by a tiny v_max so only drone 0 really moves.
    const Vec2 ball{50, 30};
    int moved = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      std::vector<Drone> fleet = {drone_at(ball), drone_at({52, 30}, 1e-12), drone_at({50, 32}, 1e-12)};
      Rng rng(seed);
      repulsive_step(fleet, ball, 3.0, rng, 0.1, FieldConfig{});
      const Vec2 d = fleet[0].position - ball;
      if (d.norm() < 1e-9) continue;
      ++moved;
      CHECK(std::atan2(d.y, d.x) == doctest::Approx(-3.0 * kPi / 4.0).epsilon(1e-6));
      CHECK(d.norm() <= 0.8 + 1e-12);
      CHECK(distance(fleet[0].position, {51, 31}) >= distance(ball, {51, 31}));
    }
    CHECK(moved > 0);
  }

  TEST_CASE("an isolated drone skips phase two") {
    std::vector<Drone> lone = {drone_at({40, 40})};
    Rng rng(1);
    repulsive_step(lone, {40, 40}, 3.0, rng, 0.1, FieldConfig{});
    CHECK(lone[0].position == Vec2{40, 40});
  }

  TEST_CASE("follow-players rings the high-risk player") {
    GameState s = setup_match(1, FieldConfig{});
    for (Player& p : s.players) {
      p.holding_ball = false;
      p.position = {p.team == Team::Red ? 2.0 + p.id : 98.0 - (p.id - 15), 69.0};
    }
    s.ball = Ball{};
    s.ball.position = {29, 30};
    s.players[0].position = {30, 30};
    s.players[15].position = {28, 30};
    s.players[1].position = {36, 30};
    const auto t = follow_players_targets(2, s, 4.0, 3.0, 15.0);
    REQUIRE(find_high_risk(s.players, s.ball.position, 3.0, 15.0) == 0);
    CHECK(t[0].x == doctest::Approx(34));
    CHECK(t[0].y == doctest::Approx(30));
    CHECK(t[1].x == doctest::Approx(26));
    CHECK(t[1].y == doctest::Approx(30));
  }

  TEST_CASE("without a contest follow-players equals follow-ball") {
    const GameState s = setup_match(4, FieldConfig{});
    REQUIRE_FALSE(find_high_risk(s.players, s.ball.position, 0.01, 15.0));
    CHECK(follow_players_targets(5, s, 6.0, 0.01, 15.0) == follow_ball_targets(5, s.ball.position, 6.0));
  }

  TEST_CASE("density centres take the biggest group first") {
    std::vector<Vec2> pts(5, Vec2{0, 0});
    pts.push_back({50, 50});
    pts.push_back({50, 50});
    const auto c = find_density_centers(pts, 5.0);
    REQUIRE(c.size() == 2);
    CHECK(c[0].density == 5);
    CHECK(c[1].density == 2);
    CHECK(find_density_centers(std::vector<Vec2>{{1, 1}}, 5.0).at(0).density == 1);
  }

  TEST_CASE("equal groups go to the lower id") {
    const std::vector<Vec2> pts = {{60, 60}, {60, 61}, {10, 10}, {10, 11}};
    const auto c = find_density_centers(pts, 2.0);
    REQUIRE(c.size() == 2);
    CHECK(c[0].centre == 0);
  }

  TEST_CASE("allocation policies") {
    std::vector<ClusterInfo> c(3);
    c[0].density = 6;
    c[1].density = 3;
    c[2].density = 1;
    allocate_drones(c, 10, AllocationPolicy::Proportional);
    CHECK(c[0].assigned_drones == 6);
    CHECK(c[1].assigned_drones == 3);
    CHECK(c[2].assigned_drones == 1);

    std::vector<ClusterInfo> four(4);
    for (auto& k : four) k.density = 1;
    allocate_drones(four, 12, AllocationPolicy::Halving);
    CHECK(four[0].assigned_drones == 6);
    CHECK(four[1].assigned_drones == 3);
    CHECK(four[2].assigned_drones == 1);
    CHECK(four[3].assigned_drones == 2);

    for (auto policy : {AllocationPolicy::Proportional, AllocationPolicy::Halving}) {
      std::vector<ClusterInfo> one(1);
      one[0].density = 4;
      allocate_drones(one, 5, policy);
      CHECK(one[0].assigned_drones == 5);
      for (int n = 1; n <= 25; ++n) {
        std::vector<ClusterInfo> mix(4);
        mix[0].density = 7;
        mix[1].density = 5;
        mix[2].density = 2;
        mix[3].density = 1;
        allocate_drones(mix, n, policy);
        int sum = 0;
        for (auto& k : mix) sum += k.assigned_drones;
        CHECK(sum == n);
      }
    }
    std::vector<ClusterInfo> none;
    CHECK_THROWS_AS(allocate_drones(none, 3, AllocationPolicy::Halving), ConfigError);
  }

  TEST_CASE("density rings split drones across clusters") {
    GameState s = setup_match(1, FieldConfig{});
    for (std::size_t i = 0; i < s.players.size(); ++i) {
      s.players[i].position = i < 20 ? Vec2{10, 10} : Vec2{40, 40};
    }
    std::vector<Drone> fleet(6);
    const auto t = density_targets(fleet, s, 6.0, AllocationPolicy::Proportional);
    REQUIRE(t.size() == 6);
    int first = 0;
    for (const Drone& d : fleet) first += d.follow_level == 0;
    CHECK(first == 4);
    check_ring({t.begin(), t.begin() + 4}, {10, 10}, 6.0);
    check_ring({t.begin() + 4, t.end()}, {40, 40}, 6.0);
  }

  TEST_CASE("one cluster of three gets a three-point ring") {
    GameState s = setup_match(1, FieldConfig{});
    for (Player& p : s.players) p.position = {20, 20};
    std::vector<Drone> fleet(3);
    const auto t = density_targets(fleet, s, 6.0, AllocationPolicy::Halving);
    check_ring(t, {20, 20}, 6.0);
    CHECK(t[0].x == doctest::Approx(26));
  }

  TEST_CASE("no players means density drones hold") {
    GameState s;
    std::vector<Drone> fleet = {drone_at({1, 2}), drone_at({3, 4})};
    const auto t = density_targets(fleet, s, 5.0, AllocationPolicy::Halving);
    CHECK(t == std::vector<Vec2>{{1, 2}, {3, 4}});
  }

  TEST_CASE("random mode respects the kinematic bound and the field") {
    const FieldConfig f;
    RandomModeParams params;
    params.d_safe = 16.0;
    std::vector<Drone> fleet;
    for (int i = 0; i < 8; ++i) fleet.push_back(drone_at({50.0 + i, 35.0}));
    Rng rng(11);
    for (int tick = 0; tick < 500; ++tick) {
      const auto before = fleet;
      random_step(fleet, f, params, rng, 0.1);
      for (std::size_t i = 0; i < fleet.size(); ++i) {
        REQUIRE(f.contains(fleet[i].position));
        // Drones move in index order, so drone i felt the already-moved
        // drones before it and the not-yet-moved ones after it.
        std::vector<Drone> seen = before;
        for (std::size_t j = 0; j < i; ++j) seen[j] = fleet[j];
        const double bound = (params.v_max + repulsion(seen, i, params.d_safe).norm()) * 0.1;
        REQUIRE(distance(before[i].position, fleet[i].position) <= bound + 1e-9);
      }
    }
  }

  TEST_CASE("detection uses the closed disc") {
    std::vector<CollisionEvent> ev(1);
    ev[0].position = {5, 5};
    std::vector<Drone> fleet = {drone_at({5, 9})};
    CHECK(count_detected(ev, fleet, 5.0) == 1);
    CHECK(ev[0].detected);

    std::vector<CollisionEvent> edge(1);
    edge[0].position = {0, 0};
    std::vector<Drone> at_r = {drone_at({3, 4})};
    CHECK(count_detected(edge, at_r, 5.0) == 1);

    std::vector<CollisionEvent> lonely(2);
    CHECK(count_detected(lonely, {}, 5.0) == 0);
    CHECK_FALSE(lonely[0].detected);
  }

  TEST_CASE("formation modes never exceed v_max per tick") {
    GameState s = setup_match(9, FieldConfig{});
    for (StrategyMode mode : {StrategyMode::FollowBall, StrategyMode::Repulsive,
                              StrategyMode::FollowPlayers, StrategyMode::DensityBased}) {
      StrategyParams sp;
      sp.mode = mode;
      auto strat = make_strategy(sp, Rng(3, "strategy"));
      auto fleet = make_fleet(10, 8.0, 8.0, 8.0, sp.field);
      GameState g = s;
      for (int tick = 0; tick < 300; ++tick) {
        g = step_game(std::move(g), 0.1);
        const auto before = fleet;
        strat->step(fleet, g, 0.1);
        for (std::size_t i = 0; i < fleet.size(); ++i) {
          REQUIRE(distance(before[i].position, fleet[i].position) <= 0.8 + 1e-9);
          REQUIRE(sp.field.contains(fleet[i].position));
        }
      }
    }
  }
}
