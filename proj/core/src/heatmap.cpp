#include "uavsim/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavsim/errors.hpp"

namespace uavsim {

GridPoint quantize(Vec2 point) {
  if (!point.finite()) throw DomainError("cannot quantize a non-finite point");
  const double fx = std::floor(point.x);
  const double fy = std::floor(point.y);
  constexpr double lim = static_cast<double>(std::numeric_limits<int>::max());
  if (std::abs(fx) > lim || std::abs(fy) > lim) throw DomainError("point outside the integer grid");
  return {static_cast<int>(fx), static_cast<int>(fy)};
}

HeatmapGrid::HeatmapGrid(GridPoint origin, int width, int height)
    : origin_(origin), width_(width), height_(height) {
  if (width < 0 || height < 0) throw DomainError("heatmap dimensions must be non-negative");
  counts_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

HeatmapGrid HeatmapGrid::for_field(const FieldConfig& field) {
  field.validate();
  return HeatmapGrid({0, 0}, static_cast<int>(std::ceil(field.width_m)),
                     static_cast<int>(std::ceil(field.height_m)));
}

bool HeatmapGrid::contains(GridPoint q) const {
  return q.x >= origin_.x && q.y >= origin_.y && q.x < origin_.x + width_ && q.y < origin_.y + height_;
}

std::size_t HeatmapGrid::index(GridPoint q) const {
  return static_cast<std::size_t>(q.y - origin_.y) * static_cast<std::size_t>(width_) +
         static_cast<std::size_t>(q.x - origin_.x);
}

std::int64_t HeatmapGrid::count(GridPoint q) const { return contains(q) ? counts_[index(q)] : 0; }

void HeatmapGrid::add(GridPoint q) {
  if (!contains(q)) {
    throw DomainError("cell (" + std::to_string(q.x) + ", " + std::to_string(q.y) +
                      ") outside the heatmap");
  }
  ++counts_[index(q)];
  ++total_;
}

HeatmapGrid build_frequency_map(std::span<const Vec2> collisions) {
  if (collisions.empty()) return HeatmapGrid{};
  std::vector<GridPoint> cells;
  cells.reserve(collisions.size());
  GridPoint lo{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  GridPoint hi{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  for (Vec2 c : collisions) {
    const GridPoint q = quantize(c);
    lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
    hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
    cells.push_back(q);
  }
  HeatmapGrid grid(lo, hi.x - lo.x + 1, hi.y - lo.y + 1);
  for (GridPoint q : cells) grid.add(q);
  return grid;
}

HeatmapGrid build_frequency_map(std::span<const Vec2> collisions, const FieldConfig& field) {
  HeatmapGrid grid = HeatmapGrid::for_field(field);
  for (Vec2 c : collisions) {
    GridPoint q = quantize(c);
    // Touchline points (x == width, y == height) land in the last cell.
    if (q.x == grid.width() && c.x <= field.width_m) q.x = grid.width() - 1;
    if (q.y == grid.height() && c.y <= field.height_m) q.y = grid.height() - 1;
    grid.add(q);
  }
  return grid;
}

std::int64_t coverage_score(GridPoint grid_point, std::span<const Vec2> uncovered, double r) {
  const Vec2 g{static_cast<double>(grid_point.x), static_cast<double>(grid_point.y)};
  const double r_sq = r * r;
  return std::count_if(uncovered.begin(), uncovered.end(),
                       [&](Vec2 c) { return distance_sq(c, g) <= r_sq; });
}

namespace {

// Incremental greedy max-coverage over the candidate box. Scores are
// seeded once; covering a point decrements every candidate within r of it.
std::vector<Vec2> greedy_cover(std::span<const Vec2> points, int n_drones, double r, GridPoint lo,
                               int width, int height) {
  if (n_drones < 1) throw DomainError("need at least one drone");
  if (!(r > 0.0)) throw DomainError("coverage radius must be positive");
  std::vector<Vec2> placed;
  if (points.empty() || width <= 0 || height <= 0) return placed;

  const double r_sq = r * r;
  const auto w = static_cast<std::size_t>(width);
  std::vector<std::int64_t> score(w * static_cast<std::size_t>(height), 0);

  // Visits every candidate within r of p.
  auto for_each_candidate = [&](Vec2 p, auto&& fn) {
    const int x0 = std::max(lo.x, static_cast<int>(std::ceil(std::max(p.x - r, -2e9))));
    const int x1 = std::min(lo.x + width - 1, static_cast<int>(std::floor(std::min(p.x + r, 2e9))));
    const int y0 = std::max(lo.y, static_cast<int>(std::ceil(std::max(p.y - r, -2e9))));
    const int y1 = std::min(lo.y + height - 1, static_cast<int>(std::floor(std::min(p.y + r, 2e9))));
    for (int y = y0; y <= y1; ++y) {
      const double dy = p.y - y;
      for (int x = x0; x <= x1; ++x) {
        const double dx = p.x - x;
        if (dx * dx + dy * dy <= r_sq) {
          fn(static_cast<std::size_t>(y - lo.y) * w + static_cast<std::size_t>(x - lo.x));
        }
      }
    }
  };

  for (Vec2 p : points) {
    if (!p.finite()) throw DomainError("collision point is not finite");
    for_each_candidate(p, [&](std::size_t i) { ++score[i]; });
  }

  std::vector<std::uint8_t> covered(points.size(), 0);
  std::size_t remaining = points.size();
  while (remaining > 0 && static_cast<int>(placed.size()) < n_drones) {
    // Row-major scan: first maximum has the smallest y, then smallest x.
    std::size_t best = 0;
    for (std::size_t i = 1; i < score.size(); ++i) {
      if (score[i] > score[best]) best = i;
    }
    if (score[best] == 0) break;
    const Vec2 g{static_cast<double>(lo.x + static_cast<int>(best % w)),
                 static_cast<double>(lo.y + static_cast<int>(best / w))};
    placed.push_back(g);
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (covered[k] || distance_sq(points[k], g) > r_sq) continue;
      covered[k] = 1;
      --remaining;
      for_each_candidate(points[k], [&](std::size_t i) { --score[i]; });
    }
  }
  return placed;
}

}  // namespace

std::vector<Vec2> fixed_positions(std::span<const Vec2> collisions, int n_drones, double r) {
  const HeatmapGrid grid = build_frequency_map(collisions);
  return greedy_cover(collisions, n_drones, r, grid.origin(), grid.width(), grid.height());
}

std::vector<Vec2> fixed_positions(std::span<const Vec2> collisions, int n_drones, double r,
                                  const FieldConfig& field) {
  const HeatmapGrid grid = HeatmapGrid::for_field(field);
  return greedy_cover(collisions, n_drones, r, grid.origin(), grid.width(), grid.height());
}

}  // namespace uavsim
