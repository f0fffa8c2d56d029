// Acceptance gate: one PASS/FAIL line per primary criterion.
// usage: acceptance [path/to/hyperflow]   (the CLI is used for the determinism check)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "hyperflow/io.hpp"
#include "hyperflow/suites.hpp"

using namespace hyperflow;

namespace {

int failures = 0;

void verdict(const char* criterion, bool pass, const std::string& detail) {
  std::printf("%s  %-24s %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string g3(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

// all checks whose name starts with one of the prefixes
bool gather(const Report& r, const std::vector<std::string>& prefixes, std::string& detail) {
  bool ok = true;
  int n = 0;
  for (const Check& c : r.checks)
    for (const std::string& p : prefixes)
      if (c.name.rfind(p, 0) == 0) {
        ++n;
        ok = ok && c.pass;
        if (!c.pass || detail.size() < 200)
          detail += (detail.empty() ? "" : "; ") + c.name + "=" + g3(c.residual) + (c.pass ? "" : "(!)");
        break;
      }
  if (n == 0) {
    detail = "no checks matched";
    return false;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  const BallConfig ball = make_ball_config(2, 1.0);

  const Report kernel = kernel_suite();
  {
    std::string d;
    const bool ok = gather(kernel, {"sphere_patch_H_"}, d);
    verdict("kernel_accuracy", ok, d + " [err < 1e-3 at 64x96, order >= 1.8]");
  }
  {
    std::string d;
    const bool ok = gather(kernel, {"cap_cross_implementation"}, d);
    verdict("cross_implementation", ok, d + " [rel < 1e-3, order >= 1.8]");
  }
  {
    std::string d;
    const bool ok = gather(kernel, {"cap_umbilicity"}, d);
    verdict("umbilicity", ok, d + " [< 1e-2 at 48x96, halves at 96x192]");
  }
  {
    const Report st = static_suite_default(ball);
    std::string d;
    const bool ok = gather(st, {"cap/", "disk/", "perturbed_cap/"}, d);
    verdict("static_identities", ok, std::to_string(st.checks.size()) + " checks; " + d);
  }

  FlowConfig ref = reference_config();
  const Trajectory fine = run(ref);
  FlowConfig half = ref;
  half.grid_radial /= 2;
  half.grid_angular /= 2;
  const Trajectory coarse = run(half);
  const Report flow = flow_identity_suite(fine, &coarse);
  {
    std::string d;
    const bool ok = gather(flow, {"run_completed", "strict_convexity", "area_growth", "stop_time",
                                  "plane_fit", "q_decreasing", "zeta_", "int_H2", "stahl_",
                                  "neumann_", "free_boundary"},
                           d);
    verdict("flow_run", ok, "stop '" + fine.stop_reason + "' t=" + g3(fine.records.back().t) +
                                " T*=" + g3(fine.T_star) + "; " + d);
  }
  {
    std::string d;
    const bool ok = gather(kernel, {"willmore_"}, d);
    verdict("willmore_inequality", ok, d);
  }
  {
    const double T = fine.T_star;
    const EvolutionResiduals ec = evolution_residuals(coarse, 0.2 * T, 0.7 * T);
    const EvolutionResiduals ef = evolution_residuals(fine, 0.2 * T, 0.7 * T);
    std::string d;
    const bool ok = gather(flow, {"evolution_"}, d);
    verdict("evolution_residuals", ok,
            "ratios z0 " + g3(ec.z0 / ef.z0) + ", z1 " + g3(ec.z1 / ef.z1) + ", logH " +
                g3(ec.logH / ef.logH) + " [>= 3]; " + d);
  }
  {
    const FlowConfig mc = mcf_strictification_config();
    const Trajectory tr = run(mc);
    const Report r = mcf_suite(tr);
    std::string d;
    const bool ok = gather(r, {"area_decreasing", "first_variation", "strictification"}, d) &&
                    tr.records.front().min_kappa >= 0.0 && tr.records.front().min_kappa <= 1e-4;
    verdict("mcf_strictification", ok,
            "eps=" + g3(mc.eps) + " kappa0=" + g3(tr.records.front().min_kappa) + "; " + d);
  }
  {
    namespace fs = std::filesystem;
    bool ok = false;
    std::string d;
    if (argc > 1) {
      const fs::path base = fs::temp_directory_path() / "hyperflow_acceptance";
      fs::remove_all(base);
      fs::create_directories(base);
      const fs::path cfg = base / "reference.cfg";
      write_text_file(cfg.string(), "# reference cap run\nh_min_stop = 0.02\n");
      int rc = 0;
      for (const char* sub : {"a", "b"}) {
        const std::string cmd = std::string("\"") + argv[1] + "\" run --config \"" + cfg.string() +
                                "\" --out \"" + (base / sub).string() + "\" > /dev/null";
        rc |= std::system(cmd.c_str());
      }
      const std::string a = read_text_file((base / "a" / "series.csv").string());
      const std::string b = read_text_file((base / "b" / "series.csv").string());
      ok = rc == 0 && a == b && !a.empty();
      d = "two CLI runs, " + std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "DIFFERENT");
      fs::remove_all(base);
    } else {
      const std::string a = series_csv(run(ref).records), b = series_csv(fine.records);
      ok = a == b;
      d = "in-process rerun, " + std::string(a == b ? "identical" : "DIFFERENT");
    }
    verdict("determinism", ok, d);
  }

  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d failure(s), %.1f s\n", failures, sec);
  return failures == 0 ? 0 : 1;
}
