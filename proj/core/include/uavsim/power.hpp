#pragma once

namespace uavsim {

// Multirotor power-model constants. Defaults describe a DJI Air 3.
// Weight is a mass in kg; the hover formula multiplies it by g while the
// forward-flight formulas use it directly, as in the published model.
struct PowerParams {
  double efficiency_n = 1.0;
  double weight_w = 0.720;
  double gravity_g = 9.81;
  double air_density_rho = 1.225;
  double facing_area_A = 0.032;
  double drag_Cd = 1.1;
  // No published value for this airframe.
  double lift_Cl = 1.0;
  double span_b = 0.28;
  double battery_E_wh = 62.6;

  // Throws DomainError unless every field is positive and n is in (0, 2].
  void validate() const;
};

// Coefficients of P_moderate(v) / n = cubic * v^3 + inverse / v.
struct ModerateCoefficients {
  double cubic = 0.0;    // 1/2 Cd A rho
  double inverse = 0.0;  // W^2 / (rho b^2)
};

ModerateCoefficients moderate_coefficients(const PowerParams& params);

// Watts. All three are linear in efficiency_n. The speed-dependent ones
// throw DomainError for v <= 0.
double p_hovering(const PowerParams& params);
double p_high_speed(const PowerParams& params, double v);
double p_moderate(const PowerParams& params, double v);

// Closed-form argmin of p_moderate: (inverse / (3 cubic))^(1/4). Does not
// depend on n.
double optimal_moderate_speed(const PowerParams& params);

// Hours of flight on a full battery at constant speed v.
double flight_time_h(const PowerParams& params, double v);

struct EnergyBudget {
  double t_hover_h = 0.0;
  double t_fly_h = 0.0;
  double p_hover_w = 0.0;
  double p_fly_w = 0.0;
  double total_energy_wh = 0.0;

  double total_time_h() const { return t_hover_h + t_fly_h; }
};

// Throws DomainError for negative durations or v_fly <= 0.
EnergyBudget energy_budget(const PowerParams& params, double t_hover_h, double t_fly_h,
                           double v_fly);

// Moves delta_t_h hours from flying to hovering at constant total time.
// Throws DomainError if that would make t_fly negative.
EnergyBudget shift_to_hover(const EnergyBudget& budget, double delta_t_h);

// E' - E for shift_to_hover: delta_t * (P_hover - P_fly).
double hover_shift_delta_wh(const EnergyBudget& budget, double delta_t_h);

}  // namespace uavsim
