#include "doctest.h"

#include <cmath>

#include "uavsim/errors.hpp"
#include "uavsim/power.hpp"

using namespace uavsim;

TEST_SUITE("power") {
  TEST_CASE("hover power for the default airframe") {
    const PowerParams p;
    // (0.720 * 9.81)^1.5 / sqrt(2 * 1.225 * 0.032), evaluated by hand.
    const double oracle = std::pow(7.0632, 1.5) / std::sqrt(0.0784);
    CHECK(p_hovering(p) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(p_hovering(p) == doctest::Approx(67.0).epsilon(0.005));
    PowerParams twice = p;
    twice.efficiency_n = 2.0;
    CHECK(p_hovering(twice) == doctest::Approx(2.0 * p_hovering(p)));
    PowerParams light = p;
    light.weight_w = 1e-9;
    CHECK(p_hovering(light) < 1e-9);
  }

  TEST_CASE("high-speed power") {
    PowerParams unit;
    unit.weight_w = 1.0;
    unit.air_density_rho = 1.0;
    unit.span_b = 1.0;
    unit.drag_Cd = 1.0;
    unit.lift_Cl = 1.0;
    CHECK(p_high_speed(unit, 1.0) == doctest::Approx(2.0));
    const PowerParams p;
    const double oracle = 1.1 * 0.720 * 10.0 + 0.720 * 0.720 / (1.225 * 0.0784 * 10.0);
    CHECK(p_high_speed(p, 10.0) == doctest::Approx(oracle));
    // Linear drag dominates at high speed.
    CHECK(p_high_speed(p, 1e6) / (1.1 * 0.720 * 1e6) == doctest::Approx(1.0));
    CHECK_THROWS_AS(p_high_speed(p, 0.0), DomainError);
  }

  TEST_CASE("moderate-flight coefficients") {
    const auto c = moderate_coefficients(PowerParams{});
    CHECK(c.cubic == doctest::Approx(0.02156).epsilon(5e-4));
    CHECK(c.inverse == doctest::Approx(5.4).epsilon(5e-3));
    CHECK(p_moderate(PowerParams{}, 3.02) == doctest::Approx(0.596 + 1.787).epsilon(2e-3));
    CHECK_THROWS_AS(p_moderate(PowerParams{}, -1.0), DomainError);
  }

  TEST_CASE("optimal speed") {
    const PowerParams p;
    const double v = optimal_moderate_speed(p);
    CHECK(v == doctest::Approx(3.02).epsilon(0.01 / 3.02));
    // n is capped at 2, so compare a tenfold spread inside the cap.
    PowerParams lo = p;
    PowerParams hi = p;
    lo.efficiency_n = 0.2;
    hi.efficiency_n = 2.0;
    CHECK(optimal_moderate_speed(lo) == doctest::Approx(optimal_moderate_speed(hi)));
    CHECK(optimal_moderate_speed(hi) == doctest::Approx(v));
    // Grid search and finite difference agree with the closed form.
    double best_v = 0.0;
    double best_p = 1e300;
    for (double s = 2.9; s <= 3.1; s += 1e-7) {
      const double w = p_moderate(p, s);
      if (w < best_p) {
        best_p = w;
        best_v = s;
      }
    }
    CHECK(std::abs(best_v - v) < 1e-6);
    const double h = 1e-5;
    CHECK(std::abs((p_moderate(p, v + h) - p_moderate(p, v - h)) / (2 * h)) < 1e-6);
  }

  TEST_CASE("unit coefficients give the quartic root of a third") {
    PowerParams p;
    // cubic = 0.5 * Cd * A * rho = 1 and inverse = W^2 / (rho b^2) = 1.
    p.air_density_rho = 1.0;
    p.drag_Cd = 2.0;
    p.facing_area_A = 1.0;
    p.weight_w = 1.0;
    p.span_b = 1.0;
    CHECK(optimal_moderate_speed(p) == doctest::Approx(std::pow(1.0 / 3.0, 0.25)));
    CHECK(optimal_moderate_speed(p) == doctest::Approx(0.7598).epsilon(1e-4));
  }

  TEST_CASE("flight time is battery over power") {
    const PowerParams p;
    for (double v : {0.5, 3.02, 7.0, 11.5}) {
      CHECK(std::abs(flight_time_h(p, v) * p_moderate(p, v) / 62.6 - 1.0) < 1e-12);
    }
    CHECK(flight_time_h(p, 3.02) == doctest::Approx(62.6 / 2.383).epsilon(2e-3));
    PowerParams two = p;
    two.efficiency_n = 2.0;
    CHECK(flight_time_h(two, 5.0) == doctest::Approx(flight_time_h(p, 5.0) / 2.0));
  }

  TEST_CASE("energy budget and the hover shift") {
    const PowerParams p;
    const EnergyBudget hover_only = energy_budget(p, 1.0, 0.0, 5.0);
    CHECK(hover_only.total_energy_wh == doctest::Approx(p_hovering(p)));

    const EnergyBudget b = energy_budget(p, 0.2, 0.5, 6.0);
    CHECK(b.total_energy_wh == doctest::Approx(0.2 * b.p_hover_w + 0.5 * b.p_fly_w));
    CHECK(hover_shift_delta_wh(b, 0.0) == 0.0);
    const EnergyBudget shifted = shift_to_hover(b, 0.1);
    CHECK(shifted.total_time_h() == doctest::Approx(b.total_time_h()));
    CHECK(shifted.total_energy_wh - b.total_energy_wh ==
          doctest::Approx(hover_shift_delta_wh(b, 0.1)));
    REQUIRE(b.p_hover_w > b.p_fly_w);
    CHECK(shifted.total_energy_wh > b.total_energy_wh);
    CHECK_THROWS_AS(shift_to_hover(b, 1.0), DomainError);
    CHECK_THROWS_AS(energy_budget(p, -1.0, 0.0, 5.0), DomainError);
  }

  TEST_CASE("validation") {
    PowerParams p;
    CHECK_NOTHROW(p.validate());
    p.efficiency_n = 2.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.efficiency_n = 1.0;
    p.span_b = 0.0;
    CHECK_THROWS_AS(p_hovering(p), DomainError);
  }
}
