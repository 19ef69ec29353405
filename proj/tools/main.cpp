// uavsim: rugby match + drone fleet simulator front end.
//
//   uavsim run --strategy follow-players --drones 12 --speed 8 --radius 8 --seed 1
//   uavsim sweep --grid main --reps 30
//   uavsim scenario --preset 2
//   uavsim heatmap --ticks 10000 --seed 3
//   uavsim power --speed-min 0.5 --speed-max 12
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavsim/errors.hpp"
#include "uavsim/io.hpp"

namespace fs = std::filesystem;
using namespace uavsim;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvariant = 4;

constexpr const char* kConfigEnv = "UAVSIM_CONFIG";

struct Flags {
  std::string config_path;
  std::string out_dir = "out";
  bool timestamped = false;
  unsigned threads = 0;

  std::vector<std::string> strategies;
  std::vector<int> drones;
  std::vector<double> speeds;
  std::vector<double> radii;
  double formation_radius = 0.0;
  std::int64_t ticks = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  int reps = 0;
  std::string allocation;

  std::string grid;
  int preset = 0;
  double speed_min = 0.5;
  double speed_max = 12.0;
  double speed_step = 0.5;
};

// Registers the SimConfig flags on a subcommand. Sweep-like commands accept
// comma-separated lists; run takes exactly one value each.
void add_sim_flags(CLI::App* cmd, Flags& f, bool lists) {
  const std::string names = "fixed, follow-ball, repulsive, follow-players, density, random";
  auto* s = cmd->add_option("--strategy", f.strategies, "Drone strategy: " + names)->delimiter(',');
  auto* n = cmd->add_option("--drones", f.drones, "Fleet size")->delimiter(',');
  auto* v = cmd->add_option("--speed", f.speeds, "Maximum drone speed, m/s")->delimiter(',');
  auto* r = cmd->add_option("--radius", f.radii, "Detection radius r, m")->delimiter(',');
  if (!lists) {
    for (CLI::Option* o : {s, n, v, r}) o->expected(1);
  }
  cmd->add_option("--formation-radius", f.formation_radius, "Formation ring radius R, m (default r)");
  cmd->add_option("--ticks", f.ticks, "Match length in ticks");
  cmd->add_option("--dt", f.dt, "Tick length, s");
  cmd->add_option("--seed", f.seed, lists ? "First replicate seed" : "Match seed");
  cmd->add_option("--reps", f.reps, "Replicates per cell");
  cmd->add_option("--allocation", f.allocation, "Density allocation: halving or proportional");
  cmd->add_option("--threads", f.threads, "Worker threads, 0 = all cores");
}

RunFile load_base(const Flags& f, CLI::App* cmd) {
  std::string path = f.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) path = env;
  }
  RunFile rf = path.empty() ? RunFile{} : load_run_file(path);
  SimConfig& c = rf.sim;

  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  auto first_strategy = [&] {
    auto m = parse_strategy(f.strategies.front());
    if (!m) throw ConfigError("unknown strategy '" + f.strategies.front() + "'");
    return *m;
  };
  if (given("--strategy")) c.strategy = first_strategy();
  if (given("--drones")) c.n_drones = f.drones.front();
  if (given("--speed")) c.v_max = f.speeds.front();
  if (given("--radius")) c.detect_radius_r = c.formation_radius_R = f.radii.front();
  if (given("--formation-radius")) c.formation_radius_R = f.formation_radius;
  if (given("--ticks")) c.ticks = f.ticks;
  if (given("--dt")) c.dt = f.dt;
  if (given("--seed")) {
    c.seed = f.seed;
    rf.seed_base = f.seed;
  }
  if (given("--reps")) rf.reps = f.reps;
  if (given("--allocation")) {
    auto a = parse_allocation(f.allocation);
    if (!a) throw ConfigError("unknown allocation policy '" + f.allocation + "'");
    c.allocation_policy = *a;
  }

  if (given("--strategy")) {
    rf.axes.strategies.clear();
    for (const std::string& name : f.strategies) {
      auto m = parse_strategy(name);
      if (!m) throw ConfigError("unknown strategy '" + name + "'");
      rf.axes.strategies.push_back(*m);
    }
  }
  if (given("--drones")) rf.axes.n_drones = f.drones;
  if (given("--speed")) rf.axes.speeds = f.speeds;
  if (given("--radius")) rf.axes.radii = f.radii;
  return rf;
}

fs::path output_dir(const Flags& f) {
  fs::path dir = f.out_dir;
  if (f.timestamped) {
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::gmtime(&now));
    dir /= stamp;
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  writer(out);
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

int cmd_run(const Flags& f, CLI::App* cmd) {
  RunFile rf = load_base(f, cmd);
  const int reps = cmd->count("--reps") ? rf.reps : 1;
  if (reps < 1) throw ConfigError("--reps must be at least 1");
  rf.sim.validate();
  const fs::path dir = output_dir(f);

  std::vector<MetricsRecord> records;
  for (int i = 0; i < reps; ++i) {
    SimConfig c = rf.sim;
    c.seed = rf.sim.seed + static_cast<std::uint64_t>(i);
    RunArtifacts art = run_simulation_detailed(c);
    if (i == 0) {
      write_file(dir / "collisions.csv", [&](std::ostream& o) { write_collisions_csv(art.collisions, o); });
      if (c.strategy == StrategyMode::Fixed) {
        write_file(dir / "fixed_positions.csv",
                   [&](std::ostream& o) { write_positions_csv(art.fixed_positions, o); });
      }
    }
    records.push_back(art.metrics);
  }
  export_metrics(records, dir / "metrics.csv");
  write_metrics_csv(records, std::cout);
  return 0;
}

int cmd_sweep(const Flags& f, CLI::App* cmd) {
  RunFile rf = load_base(f, cmd);
  SweepAxes axes = rf.axes;
  if (f.grid == "main") {
    axes = main_grid_axes();
  } else if (f.grid == "radius") {
    axes = radius_study_axes();
  } else if (!f.grid.empty()) {
    throw ConfigError("unknown grid '" + f.grid + "', expected main or radius");
  }
  // Unset axes fall back to the single value of the base config.
  if (axes.strategies.empty()) axes.strategies = {rf.sim.strategy};
  if (axes.n_drones.empty()) axes.n_drones = {rf.sim.n_drones};
  if (axes.speeds.empty()) axes.speeds = {rf.sim.v_max};
  if (axes.radii.empty()) axes.radii = {rf.sim.detect_radius_r};
  if (rf.reps < 1) throw ConfigError("--reps must be at least 1");

  const fs::path dir = output_dir(f);
  SweepResult result = sweep(rf.sim, axes, rf.reps, rf.seed_base, f.threads);
  export_results(result, rf.sim, dir / "results.csv");
  const auto groups = best_per_group(result);
  write_file(dir / "groups.csv", [&](std::ostream& o) { write_group_summary_csv(groups, o); });
  write_results_csv(result, std::cout);
  for (const AggregatedRecord& row : result.rows) {
    for (const std::string& e : row.errors) std::cerr << "cell error: " << e << '\n';
  }
  return 0;
}

int cmd_scenario(const Flags& f, CLI::App* cmd) {
  RunFile rf = load_base(f, cmd);
  const auto presets = scenario_presets();
  if (f.preset < 0 || f.preset > static_cast<int>(presets.size())) {
    throw ConfigError("--preset must be 1.." + std::to_string(presets.size()) + " or 0 for all");
  }
  if (rf.reps < 1) throw ConfigError("--reps must be at least 1");
  const fs::path dir = output_dir(f);
  for (const ScenarioPreset& p : presets) {
    if (f.preset != 0 && p.id != f.preset) continue;
    SweepResult result = sweep(rf.sim, scenario_axes(p), rf.reps, rf.seed_base, f.threads);
    export_results(result, rf.sim, dir / (p.name + ".csv"));
    std::cout << p.name << ": r=" << p.radius << " m, v=" << p.speed << " m/s, " << result.rows.size()
              << " cells\n";
  }
  return 0;
}

int cmd_heatmap(const Flags& f, CLI::App* cmd) {
  RunFile rf = load_base(f, cmd);
  rf.sim.validate();
  const fs::path dir = output_dir(f);
  const std::vector<Vec2> points = burn_in_collisions([&] {
    SimConfig c = rf.sim;
    c.burn_in_ticks = c.ticks;
    return c;
  }());
  std::vector<CollisionEvent> log;
  for (const Vec2& p : points) log.push_back(CollisionEvent{0, p, 0, 0, false});
  // Only the positions matter for the map.
  HeatmapGrid grid = export_heatmap(log, rf.sim.field, dir / "heatmap");
  const auto placement = fixed_positions(points, rf.sim.n_drones, rf.sim.detect_radius_r, rf.sim.field);
  write_file(dir / "fixed_positions.csv", [&](std::ostream& o) { write_positions_csv(placement, o); });
  std::cout << "collisions: " << grid.total() << ", grid " << grid.width() << "x" << grid.height()
            << ", placed " << placement.size() << " drones\n";
  return 0;
}

int cmd_power(const Flags& f, CLI::App* cmd) {
  RunFile rf = load_base(f, cmd);
  const PowerParams& p = rf.sim.power;
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(f.speed_min > 0.0) || !(f.speed_max >= f.speed_min) || !(f.speed_step > 0.0)) {
    throw ConfigError("need 0 < --speed-min <= --speed-max and --speed-step > 0");
  }
  const fs::path dir = output_dir(f);
  std::ostringstream csv;
  csv << "v,p_moderate,flight_time_h\n";
  for (int k = 0;; ++k) {
    const double v = f.speed_min + f.speed_step * k;
    if (v > f.speed_max + 1e-9) break;
    char line[96];
    std::snprintf(line, sizeof line, "%.4f,%.6f,%.6f\n", v, p_moderate(p, v), flight_time_h(p, v));
    csv << line;
  }
  write_file(dir / "power.csv", [&](std::ostream& o) { o << csv.str(); });
  std::cout << csv.str();
  std::printf("optimal speed ≈ %.2f m/s\n", optimal_moderate_speed(p));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rugby match simulator with a UAV monitoring fleet"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config_path,
                 std::string("JSON run configuration; defaults to $") + kConfigEnv);
  app.add_option("--out", f.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--timestamp", f.timestamped, "Write into a timestamped subfolder of --out");
  app.add_flag_callback(
      "--print-schema", [] { std::cout << run_file_schema() << '\n'; std::exit(0); },
      "Print the config file keys with their defaults");

  CLI::App* run = app.add_subcommand("run", "Simulate one match per seed and write its metrics");
  add_sim_flags(run, f, false);
  CLI::App* sw = app.add_subcommand("sweep", "Replicated parameter sweep");
  add_sim_flags(sw, f, true);
  sw->add_option("--grid", f.grid, "Preset grid: main or radius");
  CLI::App* sc = app.add_subcommand("scenario", "Run the fixed radius/speed scenarios over 1..35 drones");
  add_sim_flags(sc, f, false);
  sc->add_option("--preset", f.preset, "Scenario 1..4, 0 for all")->capture_default_str();
  CLI::App* hm = app.add_subcommand("heatmap", "Collision heat map and Fixed-mode placement of one match");
  add_sim_flags(hm, f, false);
  CLI::App* pw = app.add_subcommand("power", "Power draw and flight time over a speed grid");
  pw->add_option("--speed-min", f.speed_min, "Lowest speed, m/s")->capture_default_str();
  pw->add_option("--speed-max", f.speed_max, "Highest speed, m/s")->capture_default_str();
  pw->add_option("--speed-step", f.speed_step, "Speed increment, m/s")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*run) return cmd_run(f, run);
    if (*sw) return cmd_sweep(f, sw);
    if (*sc) return cmd_scenario(f, sc);
    if (*hm) return cmd_heatmap(f, hm);
    return cmd_power(f, pw);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
