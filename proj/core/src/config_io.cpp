#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "uavsim/errors.hpp"
#include "uavsim/io.hpp"

namespace uavsim {
namespace {

using nlohmann::json;

// Reads optional keys out of one JSON object and rejects anything it was
// never asked about, so typos in a config file do not pass silently.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string scope) : obj_(obj), scope_(std::move(scope)) {
    if (!obj_.is_object()) throw ConfigError(scope_ + " must be a JSON object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(scope_ + key + ": wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key " + scope_ + it.key());
    }
  }

 private:
  const json& obj_;
  std::string scope_;
  std::set<std::string> seen_;
};

StrategyMode strategy_from(const std::string& name) {
  auto mode = parse_strategy(name);
  if (!mode) throw ConfigError("unknown strategy '" + name + "'");
  return *mode;
}

AllocationPolicy allocation_from(const std::string& name) {
  auto policy = parse_allocation(name);
  if (!policy) throw ConfigError("unknown allocation policy '" + name + "'");
  return *policy;
}

void read_field(const json& j, FieldConfig& f) {
  ObjectReader r(j, "field.");
  r.get("width_m", f.width_m);
  r.get("height_m", f.height_m);
  r.get("try_line_offset_m", f.try_line_offset_m);
  r.get("ten_m_line_m", f.ten_m_line_m);
  r.get("twenty_two_m_line_m", f.twenty_two_m_line_m);
  r.get("goal_half_width_m", f.goal_half_width_m);
  r.finish();
}

void read_rules(const json& j, MatchRules& m) {
  ObjectReader r(j, "rules.");
  r.get("contest_range_m", m.contest_range_m);
  r.get("action_interval_s", m.action_interval_s);
  r.get("jitter_interval_s", m.jitter_interval_s);
  r.get("heading_jitter_rad", m.heading_jitter_rad);
  r.get("dribble_max_rad", m.dribble_max_rad);
  r.get("tackle_rate_per_s", m.tackle_rate_per_s);
  r.get("tackle_grounded_s", m.tackle_grounded_s);
  r.get("ruck_offset_m", m.ruck_offset_m);
  r.get("ruck_retention", m.ruck_retention);
  r.get("loose_ball_chasers", m.loose_ball_chasers);
  r.get("defenders_chasing", m.defenders_chasing);
  r.get("cover_depth_m", m.cover_depth_m);
  r.get("max_lead_s", m.max_lead_s);
  r.get("support_depth_attack_m", m.support_depth_attack_m);
  r.get("support_depth_defence_m", m.support_depth_defence_m);
  r.get("defensive_line_gap_m", m.defensive_line_gap_m);
  r.get("lane_offset_m", m.lane_offset_m);
  r.get("shot_lateral_error_m", m.shot_lateral_error_m);
  r.finish();
}

void read_power(const json& j, PowerParams& p) {
  ObjectReader r(j, "power.");
  r.get("efficiency_n", p.efficiency_n);
  r.get("weight_w", p.weight_w);
  r.get("gravity_g", p.gravity_g);
  r.get("air_density_rho", p.air_density_rho);
  r.get("facing_area_A", p.facing_area_A);
  r.get("drag_Cd", p.drag_Cd);
  r.get("lift_Cl", p.lift_Cl);
  r.get("span_b", p.span_b);
  r.get("battery_E_wh", p.battery_E_wh);
  r.finish();
}

void read_axes(const json& j, SweepAxes& axes) {
  ObjectReader r(j, "axes.");
  std::vector<std::string> names;
  r.get("strategies", names);
  for (const std::string& n : names) axes.strategies.push_back(strategy_from(n));
  r.get("n_drones", axes.n_drones);
  r.get("speeds", axes.speeds);
  r.get("radii", axes.radii);
  r.finish();
}

}  // namespace

RunFile parse_run_file(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  RunFile rf;
  SimConfig& c = rf.sim;
  ObjectReader r(root, "");
  std::string name(strategy_name(c.strategy));
  r.get("strategy", name);
  c.strategy = strategy_from(name);
  r.get("n_drones", c.n_drones);
  r.get("v_max", c.v_max);
  r.get("detect_radius_r", c.detect_radius_r);
  r.get("formation_radius_R", c.formation_radius_R);
  r.get("dt", c.dt);
  r.get("ticks", c.ticks);
  r.get("seed", c.seed);
  name = std::string(allocation_name(c.allocation_policy));
  r.get("allocation_policy", name);
  c.allocation_policy = allocation_from(name);
  r.get("d_in", c.d_in);
  r.get("d_out", c.d_out);
  r.get("collision_threshold", c.collision_threshold);
  r.get("burn_in_ticks", c.burn_in_ticks);
  if (const json* ds = r.child("d_safe"); ds && !ds->is_null()) {
    if (!ds->is_number()) throw ConfigError("d_safe: wrong type");
    c.d_safe = ds->get<double>();
  }
  if (const json* f = r.child("field")) read_field(*f, c.field);
  if (const json* m = r.child("rules")) read_rules(*m, c.rules);
  if (const json* p = r.child("power")) read_power(*p, c.power);
  if (const json* a = r.child("axes")) read_axes(*a, rf.axes);
  r.get("reps", rf.reps);
  r.get("seed_base", rf.seed_base);
  r.finish();
  return rf;
}

RunFile load_run_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_file(buf.str());
}

std::string to_json(const SimConfig& c, int indent) {
  json j;
  j["strategy"] = std::string(strategy_name(c.strategy));
  j["n_drones"] = c.n_drones;
  j["v_max"] = c.v_max;
  j["detect_radius_r"] = c.detect_radius_r;
  j["formation_radius_R"] = c.formation_radius_R;
  j["dt"] = c.dt;
  j["ticks"] = c.ticks;
  j["seed"] = c.seed;
  j["allocation_policy"] = std::string(allocation_name(c.allocation_policy));
  j["d_in"] = c.d_in;
  j["d_out"] = c.d_out;
  j["collision_threshold"] = c.collision_threshold;
  j["burn_in_ticks"] = c.burn_in_ticks;
  j["d_safe"] = c.effective_d_safe();
  j["field"] = {{"width_m", c.field.width_m},
                {"height_m", c.field.height_m},
                {"try_line_offset_m", c.field.try_line_offset_m},
                {"ten_m_line_m", c.field.ten_m_line_m},
                {"twenty_two_m_line_m", c.field.twenty_two_m_line_m},
                {"goal_half_width_m", c.field.goal_half_width_m}};
  const MatchRules& m = c.rules;
  j["rules"] = {{"contest_range_m", m.contest_range_m},
                {"action_interval_s", m.action_interval_s},
                {"jitter_interval_s", m.jitter_interval_s},
                {"heading_jitter_rad", m.heading_jitter_rad},
                {"dribble_max_rad", m.dribble_max_rad},
                {"tackle_rate_per_s", m.tackle_rate_per_s},
                {"tackle_grounded_s", m.tackle_grounded_s},
                {"ruck_offset_m", m.ruck_offset_m},
                {"ruck_retention", m.ruck_retention},
                {"loose_ball_chasers", m.loose_ball_chasers},
                {"defenders_chasing", m.defenders_chasing},
                {"cover_depth_m", m.cover_depth_m},
                {"max_lead_s", m.max_lead_s},
                {"support_depth_attack_m", m.support_depth_attack_m},
                {"support_depth_defence_m", m.support_depth_defence_m},
                {"defensive_line_gap_m", m.defensive_line_gap_m},
                {"lane_offset_m", m.lane_offset_m},
                {"shot_lateral_error_m", m.shot_lateral_error_m}};
  const PowerParams& p = c.power;
  j["power"] = {{"efficiency_n", p.efficiency_n}, {"weight_w", p.weight_w},
                {"gravity_g", p.gravity_g},       {"air_density_rho", p.air_density_rho},
                {"facing_area_A", p.facing_area_A}, {"drag_Cd", p.drag_Cd},
                {"lift_Cl", p.lift_Cl},           {"span_b", p.span_b},
                {"battery_E_wh", p.battery_E_wh}};
  return j.dump(indent);
}

std::string run_file_schema() {
  RunFile defaults;
  json j = json::parse(to_json(defaults.sim));
  j["reps"] = defaults.reps;
  j["seed_base"] = defaults.seed_base;
  j["axes"] = {{"strategies", json::array()},
               {"n_drones", json::array()},
               {"speeds", json::array()},
               {"radii", json::array()}};
  return j.dump(2);
}

}  // namespace uavsim
