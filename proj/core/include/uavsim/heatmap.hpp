#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uavsim/geometry.hpp"

namespace uavsim {

struct GridPoint {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(GridPoint, GridPoint) = default;
};

// Floor toward negative infinity. Throws DomainError for non-finite input.
GridPoint quantize(Vec2 point);

// Dense collision-frequency map over unit cells. Cell (x_q, y_q) counts the
// collision points whose quantization equals (x_q, y_q).
class HeatmapGrid {
 public:
  HeatmapGrid() = default;
  HeatmapGrid(GridPoint origin, int width, int height);

  // ceil(width) x ceil(height) cells anchored at (0, 0).
  static HeatmapGrid for_field(const FieldConfig& field);

  GridPoint origin() const { return origin_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return 1.0; }
  bool empty() const { return counts_.empty(); }

  bool contains(GridPoint q) const;
  std::int64_t count(GridPoint q) const;
  std::int64_t total() const { return total_; }
  // Row-major (y outer, x inner) view of the counts.
  std::span<const std::int64_t> counts() const { return counts_; }

  // Adds one collision to cell q; throws DomainError when q is outside.
  void add(GridPoint q);

 private:
  std::size_t index(GridPoint q) const;

  GridPoint origin_;
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

// Grid spans the bounding box of the quantized points; empty input gives an
// empty (all-zero) grid.
HeatmapGrid build_frequency_map(std::span<const Vec2> collisions);

// Grid covers the whole field. Points on the far touchlines (x == width or
// y == height) are tallied into the last row/column so the total is kept.
HeatmapGrid build_frequency_map(std::span<const Vec2> collisions, const FieldConfig& field);

// Number of points within distance r (inclusive) of the grid point.
std::int64_t coverage_score(GridPoint grid_point, std::span<const Vec2> uncovered, double r);

// Greedy maximum-coverage placement on integer grid points.
//
// Each round picks the candidate covering the most still-uncovered points,
// ties going to the smallest y and then the smallest x. Stops after
// n_drones placements, when everything is covered, or when no candidate
// covers any remaining point. Candidates are every grid point of the map's
// extent: the bounding box of the quantized points for the first overload,
// the full field grid for the second.
std::vector<Vec2> fixed_positions(std::span<const Vec2> collisions, int n_drones, double r);
std::vector<Vec2> fixed_positions(std::span<const Vec2> collisions, int n_drones, double r,
                                  const FieldConfig& field);

}  // namespace uavsim
