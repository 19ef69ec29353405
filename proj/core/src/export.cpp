#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <tuple>

#include "uavsim/errors.hpp"
#include "uavsim/io.hpp"

namespace uavsim {
namespace {

// Locale-independent, round-trippable number text.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string stat(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string stat(const std::optional<double>& v) { return v ? stat(*v) : std::string(); }

std::ofstream open_for_write(const std::filesystem::path& path, bool binary = false) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_results_csv(const SweepResult& result, std::ostream& out) {
  std::vector<const AggregatedRecord*> rows;
  for (const AggregatedRecord& r : result.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const AggregatedRecord* a, const AggregatedRecord* b) {
    auto key = [](const AggregatedRecord* r) {
      return std::tuple(strategy_name(r->config.strategy), r->config.n_drones, r->config.v_max,
                        r->config.detect_radius_r);
    };
    return key(a) < key(b);
  });

  out << kResultsHeader << '\n';
  for (const AggregatedRecord* r : rows) {
    out << strategy_name(r->config.strategy) << ',' << r->config.n_drones << ',' << num(r->config.v_max)
        << ',' << num(r->config.detect_radius_r) << ',' << r->reps << ',' << stat(r->rc_mean) << ','
        << stat(r->dc_mean) << ',' << stat(r->accuracy_mean) << ',' << stat(r->accuracy_std) << ','
        << stat(r->energy_mean_wh) << '\n';
  }
}

void export_results(const SweepResult& result, const SimConfig& base, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_results_csv(result, out);
  close_checked(out, path);

  std::filesystem::path sidecar = path;
  sidecar += ".json";
  auto js = open_for_write(sidecar);
  js << to_json(base) << '\n';
  close_checked(js, sidecar);
}

void write_metrics_csv(std::span<const MetricsRecord> records, std::ostream& out) {
  out << kMetricsHeader << '\n';
  for (const MetricsRecord& m : records) {
    const SimConfig& c = m.config;
    out << strategy_name(c.strategy) << ',' << c.n_drones << ',' << num(c.v_max) << ','
        << num(c.detect_radius_r) << ',' << num(c.formation_radius_R) << ',' << num(c.dt) << ','
        << c.ticks << ',' << c.seed << ',' << m.rc << ',' << m.dc << ',' << stat(m.accuracy) << ','
        << stat(m.energy_wh) << ',' << m.score_red << ',' << m.score_blue << ',' << m.wall_ticks
        << '\n';
  }
}

void export_metrics(std::span<const MetricsRecord> records, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_metrics_csv(records, out);
  close_checked(out, path);
}

void write_group_summary_csv(std::span<const GroupBest> rows, std::ostream& out) {
  out << "strategy,group,n_drones,speed,radius,accuracy\n";
  for (const GroupBest& g : rows) {
    out << strategy_name(g.strategy) << ',' << g.group << ',' << g.n_drones << ',' << num(g.speed) << ','
        << num(g.radius) << ',' << stat(g.accuracy) << '\n';
  }
}

void write_collisions_csv(std::span<const CollisionEvent> events, std::ostream& out) {
  out << "tick,x,y,player_a,player_b,detected\n";
  for (const CollisionEvent& e : events) {
    out << e.tick << ',' << stat(e.position.x) << ',' << stat(e.position.y) << ',' << e.player_a << ','
        << e.player_b << ',' << (e.detected ? 1 : 0) << '\n';
  }
}

void write_positions_csv(std::span<const Vec2> positions, std::ostream& out) {
  out << "drone_id,x,y\n";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out << i << ',' << stat(positions[i].x) << ',' << stat(positions[i].y) << '\n';
  }
}

void write_heatmap_csv(const HeatmapGrid& grid, std::ostream& out) {
  out << "x_q,y_q,count\n";
  const GridPoint o = grid.origin();
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const GridPoint q{o.x + x, o.y + y};
      out << q.x << ',' << q.y << ',' << grid.count(q) << '\n';
    }
  }
}

void write_heatmap_pgm(const HeatmapGrid& grid, std::ostream& out) {
  out << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  std::int64_t peak = 0;
  for (std::int64_t c : grid.counts()) peak = std::max(peak, c);
  const GridPoint o = grid.origin();
  for (int y = grid.height() - 1; y >= 0; --y) {
    for (int x = 0; x < grid.width(); ++x) {
      const std::int64_t c = grid.count({o.x + x, o.y + y});
      const auto level = peak > 0 ? static_cast<unsigned char>(c * 255 / peak) : 0;
      out.put(static_cast<char>(level));
    }
  }
}

HeatmapGrid export_heatmap(std::span<const CollisionEvent> log, const FieldConfig& field,
                           const std::filesystem::path& stem) {
  std::vector<Vec2> points;
  points.reserve(log.size());
  for (const CollisionEvent& e : log) points.push_back(e.position);
  if (points.empty()) std::cerr << "warning: empty collision log, writing an all-zero heatmap\n";
  HeatmapGrid grid = build_frequency_map(points, field);

  std::filesystem::path csv = stem;
  csv += ".csv";
  auto out = open_for_write(csv);
  write_heatmap_csv(grid, out);
  close_checked(out, csv);

  std::filesystem::path pgm = stem;
  pgm += ".pgm";
  auto img = open_for_write(pgm, true);
  write_heatmap_pgm(grid, img);
  close_checked(img, pgm);
  return grid;
}

}  // namespace uavsim
