#include "uavsim/geometry.hpp"

#include <algorithm>
#include <string>

#include "uavsim/errors.hpp"

namespace uavsim {

void FieldConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid field: " + what); };
  if (!(width_m > 0.0) || !std::isfinite(width_m)) fail("width_m must be positive");
  if (!(height_m > 0.0) || !std::isfinite(height_m)) fail("height_m must be positive");
  if (!(try_line_offset_m >= 0.0) || try_line_offset_m * 2.0 >= width_m) {
    fail("try lines must lie inside the field");
  }
  if (!(ten_m_line_m >= 0.0) || ten_m_line_m > width_m * 0.5) fail("10 m lines outside the field");
  if (!(twenty_two_m_line_m >= 0.0) || try_line_offset_m + twenty_two_m_line_m > width_m) {
    fail("22 m lines outside the field");
  }
  if (!(goal_half_width_m > 0.0) || goal_half_width_m * 2.0 > height_m) {
    fail("goal areas must fit the field height");
  }
}

Rect FieldConfig::red_goal_area() const {
  const double cy = height_m * 0.5;
  return {{0.0, cy - goal_half_width_m}, {left_try_line(), cy + goal_half_width_m}};
}

Rect FieldConfig::blue_goal_area() const {
  const double cy = height_m * 0.5;
  return {{right_try_line(), cy - goal_half_width_m}, {width_m, cy + goal_half_width_m}};
}

Vec2 FieldConfig::clamp(Vec2 p) const {
  return {std::clamp(p.x, 0.0, width_m), std::clamp(p.y, 0.0, height_m)};
}

}  // namespace uavsim
