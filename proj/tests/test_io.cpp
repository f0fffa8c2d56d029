#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "hyperflow/errors.hpp"
#include "hyperflow/io.hpp"

using namespace hyperflow;

TEST_CASE("config: empty text gives defaults") {
  const FlowConfig c = parse_config("");
  CHECK(c.n == 2);
  CHECK(c.rho0 == 1.0);
  CHECK(c.grid_radial == 48);
  CHECK(c.grid_angular == 96);
  CHECK(c.mode == FlowMode::imcf);
  CHECK(c.cfl_sigma == 0.25);
  CHECK(c.h_min_stop == 0.05);
}

TEST_CASE("config: cap run") {
  const FlowConfig c = parse_config("rho0 = 1.0\ninitial = cap\nlambda_c = 2.0\n# comment\n\nt_max = 0.5 # tail\n");
  CHECK(c.initial == InitialKind::cap);
  CHECK(c.lambda_c == 2.0);
  CHECK(c.t_max == 0.5);
}

TEST_CASE("config: rejections name the line") {
  auto msg = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(msg("mode = banana") == "unknown mode at line 1");
  CHECK(msg("rho0 = 1\nfoo = 2") == "unknown key 'foo' at line 2");
  CHECK(msg("rho0 1") == "malformed line (expected key = value) at line 1");
  CHECK(msg("\n\nrho0 = -1") == "rho0 out of range at line 3");
  CHECK(msg("grid_angular = 33") == "grid_angular out of range (even, >= 16) at line 1");
  CHECK(msg("lambda_c = abc") == "bad number for lambda_c at line 1");
  CHECK(msg("initial = file") == "initial = file needs a 'file' key");
}

TEST_CASE("series.csv header and 17-digit rows") {
  TimeSeriesRecord r;
  r.t = 0.1;
  r.area = 2.0 / 3.0;
  const std::string csv = series_csv({r});
  CHECK(csv.rfind(std::string(kSeriesHeader) + "\n", 0) == 0);
  CHECK(csv.find("0.10000000000000001,0.66666666666666663,") != std::string::npos);
}

TEST_CASE("snapshot round trip reproduces q bit for bit") {
  const PolarGrid g(16, 32);
  const Snapshot s{0.25, 1.0, 2, g, perturbed_cap(g, 2.0, 0.1, Perturbation::angular)};
  const Snapshot back = parse_snapshot(nlohmann::json::parse(snapshot_json(s).dump()));
  CHECK(back.grid.nr() == 16);
  CHECK(back.t == 0.25);
  CHECK((back.u - s.u).cwiseAbs().maxCoeff() == 0.0);
  const BallConfig b = make_ball_config(2, 1.0);
  const Constants c = constants(2, 1.0);
  CHECK(willmore_q(fundamental_forms(embed(g, s.u, b)), c) ==
        willmore_q(fundamental_forms(embed(back.grid, back.u, b)), c));
  nlohmann::json bad = snapshot_json(s);
  bad["u"].erase(0);
  CHECK_THROWS_AS(parse_snapshot(bad), ConfigError);
}

TEST_CASE("disk snapshot profile is the flat segment out to r0") {
  const PolarGrid g(16, 32);
  const nlohmann::json j = snapshot_json(Snapshot{0.0, 1.0, 2, g, totally_geodesic_disk(g)});
  const auto& x1 = j["derived"]["x1"];
  const auto& xp = j["derived"]["x_perp"];
  double worst = 0.0;
  for (const auto& v : x1) worst = std::max(worst, std::abs(v.get<double>()));
  CHECK(worst < 1e-15);
  CHECK(xp[g.index(g.nr(), 0)].get<double>() == doctest::Approx(std::tanh(0.5)).epsilon(1e-12));
}

TEST_CASE("report json schema") {
  Report r{"static", {{"x", "an identity", 1e-3, "24x48", true}}};
  const nlohmann::json j = report_json(r);
  CHECK(j["suite"] == "static");
  CHECK(j["checks"][0]["paper_ref"] == "an identity");
  CHECK(j["checks"][0]["pass"] == true);
  CHECK(j["checks"][0]["grid"] == "24x48");
}

TEST_CASE("run outputs") {
  FlowConfig c;
  c.grid_radial = 16;
  c.grid_angular = 32;
  c.t_max = 0.01;
  const std::string dir = (std::filesystem::temp_directory_path() / "hyperflow_io_test").string();
  std::filesystem::remove_all(dir);
  const Trajectory tr = run(c);
  const RunOutputs o = write_run_outputs(dir, tr, "t_max = 0.01\n", run_report(tr));
  CHECK(std::filesystem::exists(o.series));
  CHECK(o.snapshots.size() == 2);
  const nlohmann::json m = nlohmann::json::parse(read_text_file(o.manifest));
  CHECK(m["config_text"] == "t_max = 0.01\n");
  CHECK(m["config"]["t_max"] == 0.01);
  CHECK(m["config"]["mode"] == "imcf");
  CHECK(std::filesystem::path(m["outputs"]["series"].get<std::string>()).is_absolute());
  CHECK(m["outputs"]["snapshots"].size() == 2);
  const Snapshot last = read_snapshot(o.snapshots.back());
  CHECK(last.t == tr.records.back().t);
  std::filesystem::remove_all(dir);
}
