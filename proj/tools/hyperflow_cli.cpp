// hyperflow: run | verify | constants | inspect
// exit codes: 0 ok, 1 verification failure, 2 config error, 3 numerical abort

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "hyperflow/errors.hpp"
#include "hyperflow/io.hpp"
#include "hyperflow/suites.hpp"

using namespace hyperflow;

namespace {

constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitAbort = 3;

// initial = file: the snapshot supplies the graph and the grid
ScalarField file_initial(FlowConfig& cfg) {
  const Snapshot s = read_snapshot(cfg.file);
  if (s.n != cfg.n || std::abs(s.rho0 - cfg.rho0) > 1e-12)
    throw ConfigError("snapshot " + cfg.file + " was made for a different ball (n, rho0)");
  cfg.grid_radial = s.grid.nr();
  cfg.grid_angular = s.grid.nt();
  return s.u;
}

// HYPERFLOW_THREADS caps kernel parallelism; the kernels are serial, so any valid cap is honoured
void check_threads_env() {
  const char* v = std::getenv("HYPERFLOW_THREADS");
  if (!v || !*v) return;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) throw ConfigError(std::string("HYPERFLOW_THREADS must be a positive integer, got '") + v + "'");
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  const std::string text = read_text_file(config_path);
  FlowConfig cfg = parse_config(text);
  if (!out_override.empty()) cfg.out_dir = out_override;
  ScalarField u0;
  RunOptions opts;
  opts.keep_frames = false;
  if (cfg.initial == InitialKind::file) {
    u0 = file_initial(cfg);
    opts.initial_u = &u0;
  }
  const Trajectory tr = run(cfg, opts);
  const Report rep = run_report(tr);
  write_run_outputs(cfg.out_dir, tr, text, rep);
  std::printf("%s: %ld steps, t = %.6g, stop: %s\n", cfg.out_dir.c_str(), tr.steps,
              tr.records.back().t, tr.stop_reason.c_str());
  return tr.aborted ? kExitAbort : 0;
}

FlowConfig halved(const FlowConfig& c) {
  FlowConfig h = c;
  if (c.grid_radial % 2 || c.grid_angular % 4 || c.grid_radial / 2 < 8 || c.grid_angular / 2 < 16)
    throw ConfigError("verify flow: the grid cannot be halved (need radial even >= 16, angular % 4 == 0, >= 32)");
  h.grid_radial /= 2;
  h.grid_angular /= 2;
  return h;
}

int cmd_verify(const std::string& suite, const std::string& config_path) {
  FlowConfig cfg = reference_config();
  if (!config_path.empty()) cfg = parse_config(read_text_file(config_path));
  Report rep;
  if (suite == "kernel") {
    rep = kernel_suite();
  } else if (suite == "static") {
    rep = static_suite_default(make_ball_config(cfg.n, cfg.rho0));
  } else if (suite == "flow") {
    if (cfg.initial == InitialKind::file)
      throw ConfigError("verify flow needs an analytic initial surface (the coarse run is regenerated)");
    const Trajectory fine = run(cfg);
    if (cfg.mode == FlowMode::mcf) {
      rep = mcf_suite(fine);
    } else {
      const Trajectory coarse = run(halved(cfg));
      rep = flow_identity_suite(fine, &coarse);
    }
  } else {
    throw ConfigError("unknown suite '" + suite + "'");
  }
  std::cout << report_json(rep).dump(2) << "\n";
  return rep.passed() ? 0 : kExitVerify;
}

int cmd_constants(int n, double rho0) {
  if (n < 2 || !(rho0 > 0.0)) throw ConfigError("constants: need n >= 2 and rho0 > 0");
  const Constants c = constants(n, rho0);
  const nlohmann::json j = {{"n", c.n},           {"rho0", c.rho0},     {"omega", c.omega},
                            {"lambda", c.lambda}, {"Lambda", c.Lambda}, {"r0", c.r0},
                            {"willmore_rhs", c.willmore_rhs}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_inspect(const std::string& path) {
  const Snapshot s = read_snapshot(path);
  const BallConfig b = make_ball_config(s.n, s.rho0);
  const SurfaceGeometry g = fundamental_forms(embed(s.grid, s.u, b));
  const TimeSeriesRecord r = make_record(g, constants(s.n, s.rho0), s.t);
  const PlaneFit pf = fit_totally_geodesic(g);
  auto num = [](double x) -> nlohmann::json {
    if (!std::isfinite(x)) return nullptr;
    return x;
  };
  const nlohmann::json j = {{"t", s.t},
                            {"grid", {{"radial", s.grid.nr()}, {"angular", s.grid.nt()}}},
                            {"u_min", s.u.minCoeff()},
                            {"u_max", s.u.maxCoeff()},
                            {"area", r.area},
                            {"boundary_length", r.boundary_length},
                            {"q", r.q},
                            {"min_H", r.min_H},
                            {"max_H", r.max_H},
                            {"min_kappa", r.min_kappa},
                            {"stahl_res", num(r.stahl_res)},
                            {"fb_res", r.fb_res},
                            {"plane_proxy_over_r0", pf.hausdorff_proxy / b.r0}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-boundary inverse mean curvature flow in a hyperbolic geodesic ball"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run_cmd = app.add_subcommand("run", "integrate a flow and write series.csv, snapshots, manifest, report");
  run_cmd->add_option("--config", config_path, "config file (key = value)")->required();
  run_cmd->add_option("--out", out_dir, "output directory (overrides out_dir)");

  std::string suite, verify_config;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite, print its report");
  verify_cmd->add_option("--suite", suite, "static | flow | kernel")
      ->required()
      ->check(CLI::IsMember({"static", "flow", "kernel"}));
  verify_cmd->add_option("--config", verify_config, "config file");

  int n = 2;
  double rho0 = 1.0;
  auto* const_cmd = app.add_subcommand("constants", "print lambda, Lambda, r0, willmore_rhs as JSON");
  const_cmd->add_option("--n", n, "dimension of the surface");
  const_cmd->add_option("--rho0", rho0, "geodesic radius of the ball");

  std::string snap;
  auto* inspect_cmd = app.add_subcommand("inspect", "summarize a snapshot file");
  inspect_cmd->add_option("--snapshot", snap, "snapshot JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    check_threads_env();
    if (*run_cmd) return cmd_run(config_path, out_dir);
    if (*verify_cmd) return cmd_verify(suite, verify_config);
    if (*const_cmd) return cmd_constants(n, rho0);
    if (*inspect_cmd) return cmd_inspect(snap);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return kExitAbort;
  }
  return kExitConfig;
}
