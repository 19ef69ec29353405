#include "uavsim/power.hpp"

#include <cmath>

#include "uavsim/errors.hpp"

namespace uavsim {
namespace {

void require_speed(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("speed must be positive");
}

}  // namespace

void PowerParams::validate() const {
  for (double v : {efficiency_n, weight_w, gravity_g, air_density_rho, facing_area_A, drag_Cd,
                   lift_Cl, span_b, battery_E_wh}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("power parameters must be positive");
  }
  if (efficiency_n > 2.0) throw DomainError("efficiency factor above 2");
}

ModerateCoefficients moderate_coefficients(const PowerParams& p) {
  p.validate();
  return {0.5 * p.drag_Cd * p.facing_area_A * p.air_density_rho,
          p.weight_w * p.weight_w / (p.air_density_rho * p.span_b * p.span_b)};
}

double p_hovering(const PowerParams& p) {
  p.validate();
  return p.efficiency_n * std::pow(p.weight_w * p.gravity_g, 1.5) /
         std::sqrt(2.0 * p.air_density_rho * p.facing_area_A);
}

double p_high_speed(const PowerParams& p, double v) {
  p.validate();
  require_speed(v);
  return p.efficiency_n * ((p.drag_Cd / p.lift_Cl) * p.weight_w * v +
                           p.weight_w * p.weight_w / (p.air_density_rho * p.span_b * p.span_b * v));
}

double p_moderate(const PowerParams& p, double v) {
  require_speed(v);
  const ModerateCoefficients c = moderate_coefficients(p);
  return p.efficiency_n * (c.cubic * v * v * v + c.inverse / v);
}

double optimal_moderate_speed(const PowerParams& p) {
  const ModerateCoefficients c = moderate_coefficients(p);
  return std::pow(c.inverse / (3.0 * c.cubic), 0.25);
}

double flight_time_h(const PowerParams& p, double v) { return p.battery_E_wh / p_moderate(p, v); }

EnergyBudget energy_budget(const PowerParams& p, double t_hover_h, double t_fly_h, double v_fly) {
  if (!(t_hover_h >= 0.0) || !(t_fly_h >= 0.0)) throw DomainError("durations must be non-negative");
  EnergyBudget b;
  b.t_hover_h = t_hover_h;
  b.t_fly_h = t_fly_h;
  b.p_hover_w = p_hovering(p);
  b.p_fly_w = p_moderate(p, v_fly);
  b.total_energy_wh = b.p_hover_w * t_hover_h + b.p_fly_w * t_fly_h;
  return b;
}

EnergyBudget shift_to_hover(const EnergyBudget& budget, double delta_t_h) {
  if (budget.t_fly_h - delta_t_h < 0.0 || budget.t_hover_h + delta_t_h < 0.0) {
    throw DomainError("hover shift exceeds the available time");
  }
  EnergyBudget b = budget;
  b.t_hover_h += delta_t_h;
  b.t_fly_h -= delta_t_h;
  b.total_energy_wh = b.p_hover_w * b.t_hover_h + b.p_fly_w * b.t_fly_h;
  return b;
}

double hover_shift_delta_wh(const EnergyBudget& budget, double delta_t_h) {
  return delta_t_h * (budget.p_hover_w - budget.p_fly_w);
}

}  // namespace uavsim
