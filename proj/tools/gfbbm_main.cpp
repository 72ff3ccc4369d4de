// gfbbm: solitary-wave generation, time evolution, parameter sweeps, and
// admissibility reports for the generalized fractional BBM equation.
// Thin orchestration over the C API in gfbbm/gfbbm.h; all numerics live in
// the shared library.

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "gfbbm/gfbbm.h"
#include "io_util.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct RunError : std::runtime_error {
  int exit_code;
  RunError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

void check(gfbbm_status status, const std::string& what, int exit_code = kExitNumerical) {
  if (status != GFBBM_OK)
    throw RunError(exit_code, what + ": " + gfbbm_status_string(status) + " (" +
                                  gfbbm_last_error() + ")");
}

struct GridDeleter {
  void operator()(gfbbm_grid* g) const { gfbbm_grid_destroy(g); }
};
struct ProfileDeleter {
  void operator()(gfbbm_profile* p) const { gfbbm_profile_destroy(p); }
};
struct SolveDeleter {
  void operator()(gfbbm_solve_result* r) const { gfbbm_solve_result_destroy(r); }
};
struct EvolutionDeleter {
  void operator()(gfbbm_evolution* e) const { gfbbm_evolution_destroy(e); }
};
using GridPtr = std::unique_ptr<gfbbm_grid, GridDeleter>;
using ProfilePtr = std::unique_ptr<gfbbm_profile, ProfileDeleter>;
using SolvePtr = std::unique_ptr<gfbbm_solve_result, SolveDeleter>;
using EvolutionPtr = std::unique_ptr<gfbbm_evolution, EvolutionDeleter>;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// ---- resolved configuration ------------------------------------------------

struct GridSpec {
  long long n_points = 0;
  double half_length = 0.0;
  bool dealias = false;
};

struct SolverSpec {
  gfbbm_solver_config cfg;
  SolverSpec() { gfbbm_solver_config_defaults(&cfg); }
};

struct SeedSpec {
  std::string kind = "gaussian";  // gaussian | file
  std::string path;
};

gfbbm_params read_params(cli::Ini& ini) {
  gfbbm_params p;
  p.alpha = ini.require_number("params", "alpha");
  p.p = static_cast<int>(ini.require_integer("params", "p"));
  p.c = ini.require_number("params", "c");
  return p;
}

GridSpec read_grid(cli::Ini& ini) {
  GridSpec g;
  g.n_points = ini.require_integer("grid", "n_points");
  g.half_length = ini.require_number("grid", "half_length");
  g.dealias = ini.get_boolean("grid", "dealias").value_or(false);
  return g;
}

SolverSpec read_solver(cli::Ini& ini) {
  SolverSpec s;
  if (auto v = ini.get_number("solver", "tol_increment")) s.cfg.tol_increment = *v;
  if (auto v = ini.get_number("solver", "tol_residual")) s.cfg.tol_residual = *v;
  if (auto v = ini.get_number("solver", "tol_factor")) s.cfg.tol_factor = *v;
  if (auto v = ini.get_integer("solver", "max_iterations")) s.cfg.max_iterations = *v;
  if (auto v = ini.get_number("solver", "nu")) s.cfg.nu = *v;
  return s;
}

SeedSpec read_seed(cli::Ini& ini) {
  SeedSpec s;
  if (auto v = ini.get_string("seed", "kind")) s.kind = *v;
  if (auto v = ini.get_string("seed", "path")) s.path = *v;
  if (s.kind != "gaussian" && s.kind != "file")
    throw cli::ConfigError("seed.kind must be 'gaussian' or 'file'");
  if (s.kind == "file" && s.path.empty())
    throw cli::ConfigError("seed.kind = file requires seed.path");
  return s;
}

void echo_params(cli::Manifest& m, const gfbbm_params& p) {
  m.set_number("config.params.alpha", p.alpha);
  m.set("config.params.p", std::to_string(p.p));
  m.set_number("config.params.c", p.c);
}

void echo_grid(cli::Manifest& m, const GridSpec& g) {
  m.set("config.grid.n_points", std::to_string(g.n_points));
  m.set_number("config.grid.half_length", g.half_length);
  m.set("config.grid.dealias", g.dealias ? "true" : "false");
}

void echo_solver(cli::Manifest& m, const SolverSpec& s) {
  m.set_number("config.solver.tol_increment", s.cfg.tol_increment);
  m.set_number("config.solver.tol_residual", s.cfg.tol_residual);
  m.set_number("config.solver.tol_factor", s.cfg.tol_factor);
  m.set("config.solver.max_iterations", std::to_string(s.cfg.max_iterations));
  m.set("config.solver.nu",
        s.cfg.nu > 0.0 ? cli::fmt17(s.cfg.nu) : std::string("default"));
}

// ---- shared pieces -----------------------------------------------------------

GridPtr make_grid(const GridSpec& spec) {
  gfbbm_grid* g = nullptr;
  check(gfbbm_grid_create(spec.n_points, spec.half_length, spec.dealias ? 1 : 0, &g),
        "grid construction", kExitConfig);
  return GridPtr(g);
}

std::vector<double> grid_nodes(const gfbbm_grid* g) {
  std::vector<double> xs(static_cast<std::size_t>(gfbbm_grid_size(g)));
  check(gfbbm_grid_nodes(g, xs.data()), "reading grid nodes");
  return xs;
}

std::vector<double> profile_values(const gfbbm_profile* p) {
  std::vector<double> v(static_cast<std::size_t>(gfbbm_profile_size(p)));
  check(gfbbm_profile_values(p, v.data()), "reading profile values");
  return v;
}

// Admissibility gate shared by solve/evolve/sweep. Returns the tag.
gfbbm_admissibility_tag classify(const gfbbm_params& params) {
  gfbbm_admissibility_tag tag;
  int admissible = 0;
  check(gfbbm_validate_params(&params, &tag, &admissible), "parameter validation",
        kExitConfig);
  return tag;
}

void gate_admissibility(const gfbbm_params& params, bool force) {
  const auto tag = classify(params);
  if (tag == GFBBM_ADMISSIBLE_OK) return;
  if (!force) {
    std::cerr << "parameters (alpha=" << fmt_g(params.alpha) << ", p=" << params.p
              << ", c=" << fmt_g(params.c)
              << ") rejected: " << gfbbm_admissibility_tag_string(tag)
              << " (use --force to run anyway)\n";
    throw RunError(kExitNumerical, "inadmissible parameters");
  }
  std::cerr << "warning: forcing a run with inadmissible parameters ("
            << gfbbm_admissibility_tag_string(tag) << ")\n";
}

ProfilePtr build_seed(const gfbbm_grid* grid, const gfbbm_params& params,
                      const SeedSpec& seed, const GridSpec& gspec) {
  gfbbm_profile* p = nullptr;
  if (seed.kind == "file") {
    const auto data = cli::read_profile_csv(seed.path);
    if (data.x.size() != static_cast<std::size_t>(gspec.n_points))
      throw cli::ConfigError("seed file sample count does not match grid.n_points");
    check(gfbbm_profile_create(grid, data.value.data(), &p), "seed profile", kExitConfig);
    return ProfilePtr(p);
  }
  if (params.c > 1.0) {
    check(gfbbm_default_seed(grid, &params, &p), "default seed", kExitConfig);
    return ProfilePtr(p);
  }
  // Forced runs outside the existence window: a generic positive bump.
  const auto xs = grid_nodes(grid);
  std::vector<double> vals(xs.size());
  const double amp = std::max(0.4, std::abs(4.0 * (params.c - 1.0)));
  for (std::size_t j = 0; j < xs.size(); ++j)
    vals[j] = amp * std::exp(-xs[j] * xs[j] / 25.0);
  check(gfbbm_profile_create(grid, vals.data(), &p), "seed profile", kExitConfig);
  return ProfilePtr(p);
}

struct SolveArtifacts {
  ProfilePtr profile;
  bool converged = false;
  gfbbm_solve_status status = GFBBM_SOLVE_ITERATION_LIMIT;
  int64_t iterations = 0;
  std::vector<double> err, fac, res;
};

SolveArtifacts run_solver(const gfbbm_profile* seed, const gfbbm_params& params,
                          const SolverSpec& solver, bool force) {
  gfbbm_solver_config cfg = solver.cfg;
  cfg.allow_inadmissible = force ? 1 : 0;
  gfbbm_solve_result* raw = nullptr;
  check(gfbbm_solve(seed, &params, &cfg, &raw), "Petviashvili solve");
  SolvePtr result(raw);
  SolveArtifacts out;
  out.converged = gfbbm_solve_result_converged(result.get()) != 0;
  out.status = gfbbm_solve_result_status(result.get());
  out.iterations = gfbbm_solve_result_iterations(result.get());
  const auto n = static_cast<std::size_t>(gfbbm_solve_result_history_size(result.get()));
  out.err.resize(n);
  out.fac.resize(n);
  out.res.resize(n);
  check(gfbbm_solve_result_history(result.get(), out.err.data(), out.fac.data(),
                                   out.res.data()),
        "solver history");
  gfbbm_profile* prof = nullptr;
  check(gfbbm_solve_result_profile(result.get(), &prof), "solver profile");
  out.profile.reset(prof);
  return out;
}

void write_history_csv(const fs::path& path, const SolveArtifacts& s) {
  std::vector<std::vector<double>> rows;
  rows.reserve(s.err.size());
  for (std::size_t i = 0; i < s.err.size(); ++i)
    rows.push_back({static_cast<double>(i + 1), s.err[i], s.fac[i], s.res[i]});
  cli::write_csv(path, "n,error,factor_error,res", rows);
}

const char* solve_status_name(gfbbm_solve_status s) {
  switch (s) {
    case GFBBM_SOLVE_CONVERGED: return "converged";
    case GFBBM_SOLVE_ITERATION_LIMIT: return "iteration_limit";
    case GFBBM_SOLVE_DIVERGED: return "diverged";
    case GFBBM_SOLVE_DEGENERATE: return "degenerate";
  }
  return "unknown";
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(const std::string& config_path, const std::string& out_dir, bool force) {
  auto ini = cli::Ini::parse_file(config_path);
  const auto params = read_params(ini);
  const auto gspec = read_grid(ini);
  const auto solver = read_solver(ini);
  const auto seed_spec = ini.has_section("seed") ? read_seed(ini) : SeedSpec{};
  ini.finish({"params", "grid", "solver", "seed"});

  gate_admissibility(params, force);

  fs::create_directories(out_dir);
  cli::Manifest manifest("solve");
  echo_params(manifest, params);
  echo_grid(manifest, gspec);
  echo_solver(manifest, solver);
  manifest.set("config.seed.kind", seed_spec.kind);
  if (!seed_spec.path.empty()) manifest.set("config.seed.path", seed_spec.path);

  auto grid = make_grid(gspec);
  auto seed = build_seed(grid.get(), params, seed_spec, gspec);

  const double t0 = now_seconds();
  auto result = run_solver(seed.get(), params, solver, force);
  const double t1 = now_seconds();

  const auto xs = grid_nodes(grid.get());
  const auto values = profile_values(result.profile.get());
  cli::write_xy_csv(fs::path(out_dir) / "profile.csv", "x,value", xs, values);
  manifest.add_artifact("profile.csv", "profile");
  write_history_csv(fs::path(out_dir) / "history.csv", result);
  manifest.add_artifact("history.csv", "history");

  if (params.alpha == 1.0 && params.p == 1) {
    std::vector<double> exact(xs.size()), diff(xs.size());
    check(gfbbm_exact_soliton_eval(params.c, 0.0, xs.data(),
                                   static_cast<int64_t>(xs.size()), exact.data()),
          "exact soliton evaluation");
    for (std::size_t j = 0; j < xs.size(); ++j) diff[j] = values[j] - exact[j];
    cli::write_xy_csv(fs::path(out_dir) / "difference_exact.csv", "x,value", xs, diff);
    manifest.add_artifact("difference_exact.csv", "difference");
  }

  manifest.set("run.status", solve_status_name(result.status));
  manifest.set("run.converged", result.converged ? "true" : "false");
  manifest.set("run.iterations", std::to_string(result.iterations));
  if (!result.err.empty()) {
    manifest.set_number("run.final_error", result.err.back());
    manifest.set_number("run.final_factor_error", result.fac.back());
    manifest.set_number("run.final_res", result.res.back());
  }
  manifest.set_number("run.amplitude", gfbbm_profile_sup_norm(result.profile.get()));
  manifest.set_number("run.boundary_value",
                      gfbbm_profile_boundary_value(result.profile.get()));
  double poh = std::numeric_limits<double>::quiet_NaN();
  double en = std::numeric_limits<double>::quiet_NaN();
  if (gfbbm_pohozaev_defect(result.profile.get(), &params, &poh) == GFBBM_OK)
    manifest.set_number("run.pohozaev_defect", poh);
  if (gfbbm_energy_identity_defect(result.profile.get(), &params, &en) == GFBBM_OK)
    manifest.set_number("run.energy_identity_defect", en);
  manifest.add_wallclock("solve", t1 - t0);
  manifest.write(out_dir);

  if (!result.converged) {
    std::cerr << "solver did not converge: " << solve_status_name(result.status) << "\n";
    return kExitNumerical;
  }
  std::cout << "converged in " << result.iterations << " iterations; outputs in "
            << out_dir << "\n";
  return kExitOk;
}

// ---- evolve -----------------------------------------------------------------

struct InitialProfile {
  GridPtr grid;
  ProfilePtr profile;
  GridSpec gspec;
};

InitialProfile load_initial_from_file(const std::string& path,
                                      const std::optional<GridSpec>& declared) {
  const auto data = cli::read_profile_csv(path);
  const std::size_t n = data.x.size();
  if (n < 4 || n % 2 != 0)
    throw cli::ConfigError(path + ": need an even sample count >= 4");
  const double l = -data.x.front();
  if (!(l > 0.0)) throw cli::ConfigError(path + ": first node must be -L with L > 0");
  const double h = 2.0 * l / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double want = -l + h * static_cast<double>(j);
    if (std::abs(data.x[j] - want) > 1e-6 * h)
      throw cli::ConfigError(path + ": nodes are not the uniform grid on [-L, L)");
  }
  GridSpec gspec{static_cast<long long>(n), l, false};
  if (declared) {
    if (declared->n_points != gspec.n_points ||
        std::abs(declared->half_length - l) > 1e-12 * l)
      throw cli::ConfigError(path + ": grid section disagrees with the profile file");
    gspec.dealias = declared->dealias;
  }
  InitialProfile out;
  out.gspec = gspec;
  out.grid = make_grid(gspec);
  gfbbm_profile* p = nullptr;
  check(gfbbm_profile_create(out.grid.get(), data.value.data(), &p), "initial profile",
        kExitConfig);
  out.profile.reset(p);
  return out;
}

int cmd_evolve(const std::string& config_path, const std::string& out_dir, bool force) {
  auto ini = cli::Ini::parse_file(config_path);
  const auto params = read_params(ini);
  const double t_final = ini.require_number("time", "t_final");
  const long long n_steps = ini.get_integer("time", "n_steps").value_or(0);
  auto snapshot_times = ini.get_number_list("time", "snapshot_times")
                            .value_or(std::vector<double>{0.0, t_final});
  const long long drift_stride = ini.get_integer("time", "drift_stride").value_or(1);

  std::string initial_kind = "solve";
  std::string initial_path;
  if (ini.has_section("evolve")) {
    if (auto v = ini.get_string("evolve", "initial")) initial_kind = *v;
    if (auto v = ini.get_string("evolve", "path")) initial_path = *v;
  }
  if (initial_kind != "solve" && initial_kind != "file")
    throw cli::ConfigError("evolve.initial must be 'solve' or 'file'");
  if (initial_kind == "file" && initial_path.empty())
    throw cli::ConfigError("evolve.initial = file requires evolve.path");

  std::optional<GridSpec> gspec;
  if (ini.has_section("grid")) gspec = read_grid(ini);
  const auto solver = read_solver(ini);
  const auto seed_spec = ini.has_section("seed") ? read_seed(ini) : SeedSpec{};
  ini.finish({"params", "grid", "solver", "seed", "time", "evolve"});

  if (t_final < 0.0) throw cli::ConfigError("time.t_final must be >= 0");
  if (t_final > 0.0 && n_steps < 1)
    throw cli::ConfigError("time.n_steps must be >= 1 when t_final > 0");

  fs::create_directories(out_dir);
  cli::Manifest manifest("evolve");
  echo_params(manifest, params);
  manifest.set_number("config.time.t_final", t_final);
  manifest.set("config.time.n_steps", std::to_string(n_steps));
  manifest.set("config.time.drift_stride", std::to_string(drift_stride));
  manifest.set("config.evolve.initial", initial_kind);
  if (!initial_path.empty()) manifest.set("config.evolve.path", initial_path);

  // Assemble the initial condition.
  InitialProfile init;
  double solve_seconds = 0.0;
  if (initial_kind == "file") {
    init = load_initial_from_file(initial_path, gspec);
    gate_admissibility(params, force);  // still gates the evolution parameters
  } else {
    if (!gspec) throw cli::ConfigError("evolve.initial = solve requires a [grid] section");
    gate_admissibility(params, force);
    init.gspec = *gspec;
    init.grid = make_grid(*gspec);
    auto seed = build_seed(init.grid.get(), params, seed_spec, *gspec);
    const double t0 = now_seconds();
    auto solved = run_solver(seed.get(), params, solver, force);
    solve_seconds = now_seconds() - t0;
    if (!solved.converged) {
      manifest.set("run.status", "initial_solve_failed");
      manifest.write(out_dir);
      std::cerr << "embedded solve stage failed: " << solve_status_name(solved.status)
                << "\n";
      return kExitNumerical;
    }
    init.profile = std::move(solved.profile);
    manifest.set("run.initial_solve_iterations", std::to_string(solved.iterations));
  }
  echo_grid(manifest, init.gspec);
  echo_solver(manifest, solver);

  const auto xs = grid_nodes(init.grid.get());

  // T = 0 degenerates to a snapshot of the input with an empty drift series.
  if (t_final == 0.0) {
    cli::write_xy_csv(fs::path(out_dir) / "snapshot_t0.csv", "x,value", xs,
                      profile_values(init.profile.get()));
    manifest.add_artifact("snapshot_t0.csv", "snapshot");
    cli::write_csv(fs::path(out_dir) / "drift.csv", "t,di0,di1", {});
    manifest.add_artifact("drift.csv", "drift");
    manifest.set("run.status", "completed");
    manifest.write(out_dir);
    return kExitOk;
  }

  const double t0 = now_seconds();
  gfbbm_evolution* raw = nullptr;
  check(gfbbm_evolve(init.profile.get(), &params, t_final, n_steps, snapshot_times.data(),
                     static_cast<int64_t>(snapshot_times.size()), drift_stride, &raw),
        "time evolution");
  EvolutionPtr evo(raw);
  const double t1 = now_seconds();

  std::set<std::string> written;
  for (int64_t i = 0; i < gfbbm_evolution_snapshot_count(evo.get()); ++i) {
    double t = 0.0;
    check(gfbbm_evolution_snapshot_time(evo.get(), i, &t), "snapshot time");
    const std::string name = "snapshot_t" + fmt_g(t) + ".csv";
    if (!written.insert(name).second) continue;  // duplicate requested time
    gfbbm_profile* snap = nullptr;
    check(gfbbm_evolution_snapshot(evo.get(), i, &snap), "snapshot profile");
    ProfilePtr holder(snap);
    cli::write_xy_csv(fs::path(out_dir) / name, "x,value", xs, profile_values(snap));
    manifest.add_artifact(name, "snapshot");
  }

  const auto nd = static_cast<std::size_t>(gfbbm_evolution_drift_size(evo.get()));
  std::vector<double> dt(nd), di0(nd), di1(nd);
  check(gfbbm_evolution_drift(evo.get(), dt.data(), di0.data(), di1.data()), "drift series");
  std::vector<std::vector<double>> rows;
  rows.reserve(nd);
  double max0 = 0.0, max1 = 0.0;
  for (std::size_t i = 0; i < nd; ++i) {
    rows.push_back({dt[i], di0[i], di1[i]});
    max0 = std::max(max0, std::abs(di0[i]));
    max1 = std::max(max1, std::abs(di1[i]));
  }
  cli::write_csv(fs::path(out_dir) / "drift.csv", "t,di0,di1", rows);
  manifest.add_artifact("drift.csv", "drift");

  const bool completed = gfbbm_evolution_completed(evo.get()) != 0;
  manifest.set("run.status", completed ? "completed" : "diverged");
  manifest.set("run.steps_completed",
               std::to_string(gfbbm_evolution_steps_completed(evo.get())));
  manifest.set_number("run.max_abs_di0", max0);
  manifest.set_number("run.max_abs_di1", max1);
  if (solve_seconds > 0.0) manifest.add_wallclock("solve", solve_seconds);
  manifest.add_wallclock("evolve", t1 - t0);
  manifest.write(out_dir);

  if (!completed) {
    std::cerr << "evolution diverged after "
              << gfbbm_evolution_steps_completed(evo.get()) << " steps\n";
    return kExitNumerical;
  }
  std::cout << "evolved to t=" << fmt_g(t_final) << "; outputs in " << out_dir << "\n";
  return kExitOk;
}

// ---- sweep --------------------------------------------------------------------

struct SweepPoint {
  double alpha;
  int p;
  double c;
};

struct SweepRow {
  SweepPoint pt;
  double amplitude = std::numeric_limits<double>::quiet_NaN();
  int64_t iterations = 0;
  double final_res = std::numeric_limits<double>::quiet_NaN();
  std::string status;  // ok | skipped:<tag> | failed:<status>
};

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              unsigned workers) {
  auto ini = cli::Ini::parse_file(config_path);
  auto alphas = ini.get_number_list("sweep", "alphas");
  auto ps = ini.get_integer_list("sweep", "ps");
  auto cs = ini.get_number_list("sweep", "cs");
  if (!alphas || !ps || !cs)
    throw cli::ConfigError("sweep requires sweep.alphas, sweep.ps, sweep.cs");
  const auto gspec = read_grid(ini);
  const auto solver = read_solver(ini);
  ini.finish({"sweep", "grid", "solver"});

  std::vector<SweepPoint> points;
  for (double a : *alphas)
    for (long long p : *ps)
      for (double c : *cs) points.push_back({a, static_cast<int>(p), c});
  std::sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.p != b.p) return a.p < b.p;
    return a.c < b.c;
  });

  fs::create_directories(out_dir);
  cli::Manifest manifest("sweep");
  echo_grid(manifest, gspec);
  echo_solver(manifest, solver);
  manifest.set("config.sweep.points", std::to_string(points.size()));

  auto grid = make_grid(gspec);
  std::vector<SweepRow> rows(points.size());

  const double t0 = now_seconds();
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      SweepRow& row = rows[i];
      row.pt = points[i];
      gfbbm_params params{row.pt.alpha, row.pt.p, row.pt.c};
      gfbbm_admissibility_tag tag;
      int admissible = 0;
      if (gfbbm_validate_params(&params, &tag, &admissible) != GFBBM_OK) {
        row.status = "skipped:INVALID";
        continue;
      }
      if (!admissible) {
        row.status = std::string("skipped:") + gfbbm_admissibility_tag_string(tag);
        continue;
      }
      try {
        gfbbm_profile* seed = nullptr;
        check(gfbbm_default_seed(grid.get(), &params, &seed), "default seed");
        ProfilePtr seed_holder(seed);
        auto result = run_solver(seed, params, solver, false);
        row.iterations = result.iterations;
        if (!result.res.empty()) row.final_res = result.res.back();
        if (result.converged) {
          row.amplitude = gfbbm_profile_sup_norm(result.profile.get());
          row.status = "ok";
        } else {
          row.status = std::string("failed:") + solve_status_name(result.status);
        }
      } catch (const std::exception& e) {
        row.status = std::string("failed:") + e.what();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  const double t1 = now_seconds();

  std::vector<std::vector<double>> csv_rows;
  std::size_t n_ok = 0, n_skipped = 0, n_failed = 0;
  for (const auto& row : rows) {
    csv_rows.push_back({row.pt.alpha, static_cast<double>(row.pt.p), row.pt.c,
                        row.amplitude, static_cast<double>(row.iterations),
                        row.final_res});
    if (row.status == "ok") {
      ++n_ok;
    } else {
      const std::string what = row.status.rfind("skipped:", 0) == 0 ? "skipped" : "failed";
      (what == "skipped" ? n_skipped : n_failed) += 1;
      manifest.set(what, cli::fmt17(row.pt.alpha) + "," + std::to_string(row.pt.p) + "," +
                             cli::fmt17(row.pt.c) + " " +
                             row.status.substr(row.status.find(':') + 1));
    }
  }
  cli::write_csv(fs::path(out_dir) / "sweep.csv",
                 "alpha,p,c,amplitude,iterations,final_res", csv_rows);
  manifest.add_artifact("sweep.csv", "sweep");
  manifest.set("run.points_ok", std::to_string(n_ok));
  manifest.set("run.points_skipped", std::to_string(n_skipped));
  manifest.set("run.points_failed", std::to_string(n_failed));
  manifest.add_wallclock("sweep", t1 - t0);
  manifest.write(out_dir);

  if (n_ok == 0)
    std::cerr << "warning: no admissible sweep points produced a converged wave\n";
  std::cout << "sweep: " << n_ok << " ok, " << n_skipped << " skipped, " << n_failed
            << " failed; outputs in " << out_dir << "\n";
  return kExitOk;
}

// ---- validate -------------------------------------------------------------------

int cmd_validate(const std::string& config_path, bool json_style) {
  auto ini = cli::Ini::parse_file(config_path);
  std::vector<SweepPoint> points;
  if (ini.has_section("validate")) {
    auto alphas = ini.get_number_list("validate", "alphas");
    auto ps = ini.get_integer_list("validate", "ps");
    auto cs = ini.get_number_list("validate", "cs");
    if (!alphas || !ps || !cs)
      throw cli::ConfigError("validate requires validate.alphas, validate.ps, validate.cs");
    for (double a : *alphas)
      for (long long p : *ps)
        for (double c : *cs) points.push_back({a, static_cast<int>(p), c});
    ini.finish({"validate"});
  } else {
    const auto params = read_params(ini);
    points.push_back({params.alpha, params.p, params.c});
    ini.finish({"params"});
  }

  for (const auto& pt : points) {
    gfbbm_params params{pt.alpha, pt.p, pt.c};
    gfbbm_admissibility_tag tag;
    int admissible = 0;
    check(gfbbm_validate_params(&params, &tag, &admissible), "parameter validation",
          kExitConfig);
    if (json_style) {
      std::cout << "{\"alpha\":" << cli::fmt17(pt.alpha) << ",\"p\":" << pt.p
                << ",\"c\":" << cli::fmt17(pt.c) << ",\"tag\":\""
                << gfbbm_admissibility_tag_string(tag)
                << "\",\"admissible\":" << (admissible ? "true" : "false") << "}\n";
    } else {
      std::cout << "alpha=" << fmt_g(pt.alpha) << " p=" << pt.p << " c=" << fmt_g(pt.c)
                << " -> " << gfbbm_admissibility_tag_string(tag)
                << (admissible ? " (admissible)" : " (not admissible)") << "\n";
    }
  }
  return kExitOk;
}

// ---- reproduce ---------------------------------------------------------------------

struct FigureScale {
  long long n_points;
  double half_length;
};

SolveArtifacts figure_solve(const gfbbm_grid* grid, double alpha, int p, double c) {
  gfbbm_params params{alpha, p, c};
  gfbbm_profile* seed = nullptr;
  check(gfbbm_default_seed(grid, &params, &seed), "default seed");
  ProfilePtr holder(seed);
  auto result = run_solver(seed, params, SolverSpec{}, false);
  if (!result.converged)
    throw RunError(kExitNumerical, "figure solve stage did not converge");
  return result;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir, bool full,
                  unsigned workers) {
  static const std::set<std::string> known = {"fig1", "fig2", "fig3", "fig4",
                                              "fig5", "fig6", "fig7"};
  if (!known.count(figure)) {
    std::cerr << "unknown figure id '" << figure << "' (expected fig1..fig7)\n";
    return kExitConfig;
  }
  const FigureScale scale{full ? (1LL << 18) : (1LL << 16), 2048.0};
  const GridSpec gspec{scale.n_points, scale.half_length, false};

  fs::create_directories(out_dir);
  cli::Manifest manifest("reproduce");
  manifest.set("config.figure", figure);
  manifest.set("config.full_scale", full ? "true" : "false");
  echo_grid(manifest, gspec);
  auto grid = make_grid(gspec);
  const auto xs = grid_nodes(grid.get());
  const double t0 = now_seconds();

  auto emit_profile = [&](const std::string& name, const gfbbm_profile* p) {
    cli::write_xy_csv(fs::path(out_dir) / name, "x,value", xs, profile_values(p));
    manifest.add_artifact(name, "profile");
  };

  if (figure == "fig1") {
    auto s = figure_solve(grid.get(), 1.0, 1, 1.1);
    emit_profile("fig1_profile.csv", s.profile.get());
    write_history_csv(fs::path(out_dir) / "fig1_history.csv", s);
    manifest.add_artifact("fig1_history.csv", "history");
    std::vector<double> exact(xs.size()), diff(xs.size());
    check(gfbbm_exact_soliton_eval(1.1, 0.0, xs.data(), static_cast<int64_t>(xs.size()),
                                   exact.data()),
          "exact soliton evaluation");
    const auto values = profile_values(s.profile.get());
    for (std::size_t j = 0; j < xs.size(); ++j) diff[j] = values[j] - exact[j];
    cli::write_xy_csv(fs::path(out_dir) / "fig1_difference.csv", "x,value", xs, diff);
    manifest.add_artifact("fig1_difference.csv", "difference");
  } else if (figure == "fig2") {
    for (double alpha : {0.6, 0.8, 1.0}) {
      auto s = figure_solve(grid.get(), alpha, 1, 1.1);
      emit_profile("fig2_profile_alpha" + fmt_g(alpha) + ".csv", s.profile.get());
    }
  } else if (figure == "fig3") {
    for (double alpha : {0.6, 0.8}) {
      auto s = figure_solve(grid.get(), alpha, 1, 1.1);
      const std::string name = "fig3_history_alpha" + fmt_g(alpha) + ".csv";
      write_history_csv(fs::path(out_dir) / name, s);
      manifest.add_artifact(name, "history");
    }
  } else if (figure == "fig4") {
    for (int p : {1, 2, 3, 4}) {
      auto s = figure_solve(grid.get(), 0.8, p, 1.1);
      emit_profile("fig4_profile_p" + std::to_string(p) + ".csv", s.profile.get());
    }
  } else if (figure == "fig5") {
    // speed-amplitude curves: p-panel at alpha = 0.8, alpha-panel at p = 1
    auto sweep_csv = [&](const std::string& name, const std::vector<double>& alphas,
                         const std::vector<int>& ps) {
      std::vector<SweepPoint> pts;
      for (double a : alphas)
        for (int p : ps)
          for (int i = 0; i <= 19; ++i)
            pts.push_back({a, p, static_cast<double>(105 + 5 * i) / 100.0});
      std::vector<std::vector<double>> rows_data(pts.size());
      std::atomic<std::size_t> next{0};
      std::atomic<bool> failed{false};
      auto work = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= pts.size() || failed.load()) return;
          try {
            auto s = figure_solve(grid.get(), pts[i].alpha, pts[i].p, pts[i].c);
            rows_data[i] = {pts[i].alpha, static_cast<double>(pts[i].p), pts[i].c,
                            gfbbm_profile_sup_norm(s.profile.get()),
                            static_cast<double>(s.iterations), s.res.back()};
          } catch (const std::exception&) {
            failed.store(true);  // must not escape the worker thread
            return;
          }
        }
      };
      if (workers <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
      }
      if (failed.load())
        throw RunError(kExitNumerical, "a " + name + " solve stage did not converge");
      cli::write_csv(fs::path(out_dir) / name, "alpha,p,c,amplitude,iterations,final_res",
                     rows_data);
      manifest.add_artifact(name, "sweep");
    };
    sweep_csv("fig5_amplitude_p.csv", {0.8}, {1, 2, 3});
    sweep_csv("fig5_amplitude_alpha.csv", {0.6, 0.8, 1.0}, {1});
  } else if (figure == "fig6" || figure == "fig7") {
    // time evolution at the reference setup: T = 20, M = 4000 (dt = 0.005)
    const double alpha = figure == "fig6" ? 1.0 : 0.6;
    gfbbm_params params{alpha, 1, 1.1};
    ProfilePtr initial;
    if (figure == "fig6") {
      // closed-form initial data
      std::vector<double> vals(xs.size());
      check(gfbbm_exact_soliton_eval(1.1, 0.0, xs.data(), static_cast<int64_t>(xs.size()),
                                     vals.data()),
            "exact soliton evaluation");
      gfbbm_profile* p = nullptr;
      check(gfbbm_profile_create(grid.get(), vals.data(), &p), "initial profile");
      initial.reset(p);
    } else {
      auto s = figure_solve(grid.get(), alpha, 1, 1.1);
      initial = std::move(s.profile);
    }
    const double out_times[] = {0.0, 10.0, 20.0};
    gfbbm_evolution* raw = nullptr;
    check(gfbbm_evolve(initial.get(), &params, 20.0, 4000, out_times, 3, 1, &raw),
          "time evolution");
    EvolutionPtr evo(raw);
    if (!gfbbm_evolution_completed(evo.get()))
      throw RunError(kExitNumerical, "figure evolution diverged");
    const auto nd = static_cast<std::size_t>(gfbbm_evolution_drift_size(evo.get()));
    std::vector<double> t(nd), di0(nd), di1(nd);
    check(gfbbm_evolution_drift(evo.get(), t.data(), di0.data(), di1.data()),
          "drift series");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < nd; ++i) rows.push_back({t[i], di0[i], di1[i]});
    const std::string drift_name = figure + "_drift.csv";
    cli::write_csv(fs::path(out_dir) / drift_name, "t,di0,di1", rows);
    manifest.add_artifact(drift_name, "drift");
    if (figure == "fig7") {
      for (int64_t i = 0; i < gfbbm_evolution_snapshot_count(evo.get()); ++i) {
        double st = 0.0;
        check(gfbbm_evolution_snapshot_time(evo.get(), i, &st), "snapshot time");
        gfbbm_profile* snap = nullptr;
        check(gfbbm_evolution_snapshot(evo.get(), i, &snap), "snapshot profile");
        ProfilePtr holder(snap);
        emit_profile("fig7_profile_t" + fmt_g(st) + ".csv", snap);
      }
    }
  }

  manifest.add_wallclock("reproduce", now_seconds() - t0);
  manifest.write(out_dir);
  std::cout << figure << " artifacts in " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gfBBM solitary-wave solver suite"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "gfbbm_out", figure;
  bool force = false, full = false, json_style = false;
  unsigned workers = 1;

  auto* solve = app.add_subcommand("solve", "generate a solitary wave (Petviashvili)");
  solve->add_option("--config", config_path, "configuration file")->required();
  solve->add_option("--out", out_dir, "output directory");
  solve->add_flag("--force", force, "run even if the parameters are inadmissible");

  auto* evolve = app.add_subcommand("evolve", "evolve a profile in time (RK4 spectral)");
  evolve->add_option("--config", config_path, "configuration file")->required();
  evolve->add_option("--out", out_dir, "output directory");
  evolve->add_flag("--force", force, "run even if the parameters are inadmissible");

  auto* sweep = app.add_subcommand("sweep", "speed-amplitude parameter sweep");
  sweep->add_option("--config", config_path, "configuration file")->required();
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--workers", workers, "parallel solve workers");

  auto* validate = app.add_subcommand("validate", "report parameter admissibility");
  validate->add_option("--config", config_path, "configuration file")->required();
  validate->add_flag("--json-style", json_style, "machine-readable output");

  auto* reproduce = app.add_subcommand("reproduce", "run a canned figure pipeline");
  reproduce->add_option("figure", figure, "one of fig1..fig7")->required();
  reproduce->add_option("--out", out_dir, "output directory");
  reproduce->add_flag("--full", full, "full-scale grid (N = 2^18) instead of desk scale");
  reproduce->add_option("--workers", workers, "parallel solve workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_dir, force);
    if (evolve->parsed()) return cmd_evolve(config_path, out_dir, force);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, workers);
    if (validate->parsed()) return cmd_validate(config_path, json_style);
    if (reproduce->parsed()) return cmd_reproduce(figure, out_dir, full, workers);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RunError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
