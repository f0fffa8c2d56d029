#include "hyperflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperflow/errors.hpp"

namespace hyperflow {

const char* const kToolVersion = "hyperflow 0.1.0";

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& what, int line) {
  throw ConfigError(what + " at line " + std::to_string(line));
}

double to_real(const std::string& key, const std::string& v, int line) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    fail("bad number for " + key, line);
  }
  if (used != v.size() || !std::isfinite(x)) fail("bad number for " + key, line);
  return x;
}

long to_int(const std::string& key, const std::string& v, int line) {
  size_t used = 0;
  long x = 0;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    fail("bad integer for " + key, line);
  }
  if (used != v.size()) fail("bad integer for " + key, line);
  return x;
}

}  // namespace

FlowConfig parse_config(const std::string& text) {
  FlowConfig c;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail("malformed line (expected key = value)", line);
    const std::string key = trim(s.substr(0, eq)), v = trim(s.substr(eq + 1));
    if (key.empty() || v.empty()) fail("malformed line (expected key = value)", line);

    auto positive = [&](double x) {
      if (!(x > 0.0)) fail(key + " out of range", line);
      return x;
    };
    auto nonneg = [&](double x) {
      if (!(x >= 0.0)) fail(key + " out of range", line);
      return x;
    };

    if (key == "n") {
      const long n = to_int(key, v, line);
      if (n != 2) fail("n out of range (the grid solver is two-dimensional)", line);
      c.n = 2;
    } else if (key == "rho0") {
      c.rho0 = positive(to_real(key, v, line));
    } else if (key == "grid_radial") {
      const long r = to_int(key, v, line);
      if (r < 8 || r > 4096) fail("grid_radial out of range", line);
      c.grid_radial = static_cast<int>(r);
    } else if (key == "grid_angular") {
      const long a = to_int(key, v, line);
      if (a < 16 || a > 8192 || a % 2 != 0) fail("grid_angular out of range (even, >= 16)", line);
      c.grid_angular = static_cast<int>(a);
    } else if (key == "initial") {
      if (v == "cap") c.initial = InitialKind::cap;
      else if (v == "perturbed_cap") c.initial = InitialKind::perturbed_cap;
      else if (v == "disk") c.initial = InitialKind::disk;
      else if (v == "file") c.initial = InitialKind::file;
      else fail("unknown initial", line);
    } else if (key == "lambda_c") {
      const double l = to_real(key, v, line);
      if (!(l > 1.0)) fail("lambda_c out of range", line);
      c.lambda_c = l;
    } else if (key == "eps") {
      c.eps = to_real(key, v, line);
    } else if (key == "perturbation") {
      if (v == "radial") c.perturbation = Perturbation::radial;
      else if (v == "angular") c.perturbation = Perturbation::angular;
      else fail("unknown perturbation", line);
    } else if (key == "file") {
      c.file = v;
    } else if (key == "mode") {
      if (v == "imcf") c.mode = FlowMode::imcf;
      else if (v == "mcf") c.mode = FlowMode::mcf;
      else fail("unknown mode", line);
    } else if (key == "cfl_sigma") {
      c.cfl_sigma = positive(to_real(key, v, line));
    } else if (key == "h_min_stop") {
      c.h_min_stop = nonneg(to_real(key, v, line));
    } else if (key == "t_max") {
      c.t_max = nonneg(to_real(key, v, line));
    } else if (key == "max_steps") {
      const long m = to_int(key, v, line);
      if (m < 0) fail("max_steps out of range", line);
      c.max_steps = m;
    } else if (key == "snapshot_every") {
      const long m = to_int(key, v, line);
      if (m < 0) fail("snapshot_every out of range", line);
      c.snapshot_every = static_cast<int>(m);
    } else if (key == "out_dir") {
      c.out_dir = v;
    } else if (key == "convexity") {
      if (v == "strict") c.convexity = ConvexityPolicy::strict;
      else if (v == "monitor") c.convexity = ConvexityPolicy::monitor;
      else fail("unknown convexity", line);
    } else if (key == "dt_max") {
      c.dt_max = positive(to_real(key, v, line));
    } else if (key == "area_tol") {
      c.area_tol = nonneg(to_real(key, v, line));
    } else if (key == "seed") {
      const long s2 = to_int(key, v, line);
      if (s2 < 0) fail("seed out of range", line);
      c.seed = static_cast<unsigned long>(s2);
    } else {
      fail("unknown key '" + key + "'", line);
    }
  }
  if (c.initial == InitialKind::file && c.file.empty())
    throw ConfigError("initial = file needs a 'file' key");
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string series_csv(const std::vector<TimeSeriesRecord>& records) {
  std::string out = kSeriesHeader;
  out += '\n';
  for (const TimeSeriesRecord& r : records) {
    const double v[] = {r.t,     r.area,     r.boundary_length, r.q,         r.min_H,
                        r.max_H, r.max_A,    r.int_H2,          r.zeta_max,  r.stahl_res,
                        r.fb_res, r.min_z1,  r.min_kappa};
    for (size_t k = 0; k < std::size(v); ++k) {
      if (k) out += ',';
      out += fmt17(v[k]);
    }
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json row(const ScalarField& f) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i) a.push_back(num(f(i)));
  return a;
}

}  // namespace

NLOHMANN_JSON_SERIALIZE_ENUM(FlowMode, {{FlowMode::imcf, "imcf"}, {FlowMode::mcf, "mcf"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ConvexityPolicy, {{ConvexityPolicy::strict, "strict"},
                                               {ConvexityPolicy::monitor, "monitor"}})
NLOHMANN_JSON_SERIALIZE_ENUM(InitialKind, {{InitialKind::cap, "cap"},
                                           {InitialKind::perturbed_cap, "perturbed_cap"},
                                           {InitialKind::disk, "disk"},
                                           {InitialKind::file, "file"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Perturbation, {{Perturbation::radial, "radial"},
                                            {Perturbation::angular, "angular"}})

nlohmann::json config_json(const FlowConfig& c) {
  return {{"n", c.n},
          {"rho0", c.rho0},
          {"grid_radial", c.grid_radial},
          {"grid_angular", c.grid_angular},
          {"initial", c.initial},
          {"lambda_c", c.lambda_c},
          {"eps", c.eps},
          {"perturbation", c.perturbation},
          {"file", c.file},
          {"mode", c.mode},
          {"cfl_sigma", c.cfl_sigma},
          {"h_min_stop", c.h_min_stop},
          {"t_max", c.t_max},
          {"max_steps", c.max_steps},
          {"snapshot_every", c.snapshot_every},
          {"out_dir", c.out_dir},
          {"convexity", c.convexity},
          {"dt_max", c.dt_max},
          {"area_tol", c.area_tol},
          {"seed", c.seed}};
}

nlohmann::json snapshot_json(const Snapshot& snap) {
  nlohmann::json j;
  j["t"] = snap.t;
  j["rho0"] = snap.rho0;
  j["n"] = snap.n;
  j["grid"] = {{"radial", snap.grid.nr()}, {"angular", snap.grid.nt()}};
  j["u"] = row(snap.u);
  nlohmann::json derived;
  try {
    const BallConfig b = make_ball_config(snap.n, snap.rho0);
    const SurfaceGeometry s = fundamental_forms(embed(snap.grid, snap.u, b));
    derived["H"] = row(s.H);
    derived["kappa_min"] = row(s.kmin);
    derived["z1"] = row(ScalarField(s.z.row(1)));
    // Poincare ball position, for meridian profiles
    const Eigen::ArrayXXd den = 1.0 + s.z.row(0).array();
    derived["x1"] = row(ScalarField(s.z.row(1).array() / den));
    derived["x_perp"] = row(ScalarField(s.z.bottomRows(2).colwise().norm().array() / den));
  } catch (const std::exception& e) {
    derived["error"] = e.what();
  }
  j["derived"] = derived;
  return j;
}

Snapshot parse_snapshot(const nlohmann::json& j) {
  Snapshot s;
  try {
    s.t = j.at("t").get<double>();
    s.rho0 = j.at("rho0").get<double>();
    s.n = j.at("n").get<int>();
    const int r = j.at("grid").at("radial").get<int>();
    const int a = j.at("grid").at("angular").get<int>();
    s.grid = PolarGrid(r, a);
    const auto& u = j.at("u");
    if (!u.is_array() || static_cast<int>(u.size()) != s.grid.nodes())
      throw ConfigError("snapshot: u has the wrong length for the grid");
    s.u.resize(s.grid.nodes());
    for (int i = 0; i < s.grid.nodes(); ++i) s.u(i) = u[i].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
  return s;
}

Snapshot read_snapshot(const std::string& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("snapshot " + path + ": " + e.what());
  }
  return parse_snapshot(j);
}

nlohmann::json report_json(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"paper_ref", c.paper_ref},
                      {"residual", num(c.residual)},
                      {"grid", c.grid},
                      {"pass", c.pass}});
  return {{"suite", r.suite}, {"checks", checks}};
}

RunOutputs write_run_outputs(const std::string& dir, const Trajectory& tr,
                             const std::string& config_text, const Report& report) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  RunOutputs out;
  out.series = (fs::path(dir) / "series.csv").string();
  write_text_file(out.series, series_csv(tr.records));

  for (size_t k = 0; k < tr.snapshots.size(); ++k) {
    char name[40];
    std::snprintf(name, sizeof name, "snapshot_%04zu.json", k);
    const std::string p = (fs::path(dir) / name).string();
    const Snapshot s{tr.snapshots[k].t, tr.config.rho0, tr.config.n, tr.grid, tr.snapshots[k].u};
    write_text_file(p, snapshot_json(s).dump() + "\n");
    out.snapshots.push_back(p);
  }

  out.manifest = (fs::path(dir) / "manifest.json").string();
  out.report = (fs::path(dir) / "report.json").string();
  auto resolved = [](const std::string& p) { return fs::absolute(p).lexically_normal().string(); };

  nlohmann::json m;
  m["config_text"] = config_text;
  m["config"] = config_json(tr.config);
  m["tool_version"] = kToolVersion;
  m["seed"] = tr.config.seed;
  m["out_dir"] = resolved(dir);
  m["outputs"] = {{"series", resolved(out.series)}, {"report", resolved(out.report)}};
  nlohmann::json snaps = nlohmann::json::array();
  for (const std::string& p : out.snapshots) snaps.push_back(resolved(p));
  m["outputs"]["snapshots"] = snaps;
  m["stop_reason"] = tr.stop_reason;
  m["aborted"] = tr.aborted;
  m["steps"] = tr.steps;
  m["T_star"] = num(tr.T_star);
  m["initial_area"] = tr.initial_area;
  write_text_file(out.manifest, m.dump(2) + "\n");
  write_text_file(out.report, report_json(report).dump(2) + "\n");
  return out;
}

}  // namespace hyperflow
