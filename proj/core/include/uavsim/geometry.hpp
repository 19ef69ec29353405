#pragma once

#include <cmath>

namespace uavsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm_sq() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline constexpr double distance_sq(Vec2 a, Vec2 b) { return (a - b).norm_sq(); }
inline constexpr Vec2 midpoint(Vec2 a, Vec2 b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Rotates v counter-clockwise by theta radians.
inline Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {v.x * c - v.y * s, v.x * s + v.y * c};
}

struct Rect {
  Vec2 min;
  Vec2 max;

  constexpr bool contains(Vec2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

// Rugby pitch in metres. Red attacks towards +x, Blue towards -x.
//
// The original agent model ran on a 50 x 35 patch grid; one patch is 2 m.
// That grid is only an I/O convention here, see kMetresPerPatch.
struct FieldConfig {
  static constexpr double kMetresPerPatch = 2.0;

  double width_m = 100.0;
  double height_m = 70.0;
  // Distance of each try line from its dead-ball line.
  double try_line_offset_m = 5.0;
  // Measured from the halfway line.
  double ten_m_line_m = 10.0;
  // Measured from each try line.
  double twenty_two_m_line_m = 22.0;
  // Half the lateral extent of each goal area, centred on the posts.
  double goal_half_width_m = 5.0;

  // Throws ConfigError when any dimension or line falls outside the pitch.
  void validate() const;

  double left_try_line() const { return try_line_offset_m; }
  double right_try_line() const { return width_m - try_line_offset_m; }
  double halfway() const { return width_m * 0.5; }
  double diagonal() const { return std::hypot(width_m, height_m); }
  Vec2 centre() const { return {width_m * 0.5, height_m * 0.5}; }

  // In-goal rectangle behind the left try line; Blue scores there.
  Rect red_goal_area() const;
  // In-goal rectangle behind the right try line; Red scores there.
  Rect blue_goal_area() const;

  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.x <= width_m && p.y >= 0.0 && p.y <= height_m;
  }
  Vec2 clamp(Vec2 p) const;
};

}  // namespace uavsim
