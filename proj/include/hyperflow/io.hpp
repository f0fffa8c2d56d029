#pragma once
// Config text, series.csv, snapshot / manifest / report JSON.

#include <json.hpp>
#include <string>
#include <vector>

#include "hyperflow/flow.hpp"
#include "hyperflow/suites.hpp"

namespace hyperflow {

/// `key = value` lines; '#' starts a comment. Unknown keys and bad values
/// throw ConfigError naming the line.
FlowConfig parse_config(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// %.17g, the way every number in the outputs is printed.
std::string fmt17(double x);

inline constexpr const char* kSeriesHeader =
    "t,area,boundary_length,q,min_H,max_H,max_A,int_H2,zeta_max,stahl_res,fb_res,min_z1,min_kappa";

std::string series_csv(const std::vector<TimeSeriesRecord>& records);

struct Snapshot {
  double t = 0.0;
  double rho0 = 1.0;
  int n = 2;
  PolarGrid grid;
  ScalarField u;  // every node, boundary ring included
};

nlohmann::json snapshot_json(const Snapshot& snap);
nlohmann::json config_json(const FlowConfig& c);
Snapshot parse_snapshot(const nlohmann::json& j);
Snapshot read_snapshot(const std::string& path);

nlohmann::json report_json(const Report& r);

struct RunOutputs {
  std::string series;
  std::vector<std::string> snapshots;
  std::string manifest;
  std::string report;
};

/// Writes series.csv, snapshot_XXXX.json, manifest.json and report.json
/// into `dir` (created if missing).
RunOutputs write_run_outputs(const std::string& dir, const Trajectory& tr,
                             const std::string& config_text, const Report& report);

extern const char* const kToolVersion;

}  // namespace hyperflow
