#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jamplace/goldens.hpp"
#include "jamplace/io.hpp"
#include "jamplace/kernels.hpp"
#include "jamplace/oracle.hpp"
#include "jamplace/solver.hpp"
#include "jamplace/svg.hpp"

namespace fs = std::filesystem;
using namespace jamplace;

namespace {

enum Exit : int { kOk = 0, kGoldenFail = 1, kUsage = 2, kSolver = 3, kMismatch = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string scenario = "A";
  std::optional<double> pj_norm;
  std::optional<double> pj_watts;
  std::optional<double> n0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--scenario", c.scenario, "scenario file, or a bundled name (A, B, C, A_gated)");
  cmd->add_option("--n0", c.n0, "override noise spectral density N0");
  auto* pn = cmd->add_option("--pj-norm", c.pj_norm, "normalized jammer power 2 PJ / N0");
  auto* pw = cmd->add_option("--pj-watts", c.pj_watts, "jammer power PJ (applied after --n0)");
  pn->excludes(pw);
}

Scenario load(const Common& c) {
  Scenario s = [&] {
    if (fs::exists(c.scenario)) return load_scenario(c.scenario);
    std::string name = c.scenario;
    if (name.rfind("scenario_", 0) == 0) name = name.substr(9);
    const auto names = bundled_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) return bundled_scenario(name);
    return load_scenario(c.scenario);  // reports the missing file
  }();
  try {
    if (c.n0) s = s.with_noise(*c.n0);
    if (c.pj_norm) s = s.with_power(*c.pj_norm);
    if (c.pj_watts) s = s.with_power(2.0 * *c.pj_watts / s.jamming().n0);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

std::string pt(Point2 p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.4f, %.4f)", p.x, p.y);
  return buf;
}

void print_result(const char* label, const PlacementResult& r) {
  std::cout << label << "z_opt: " << pt(r.z) << "\n"
            << label << "value: " << format_fixed(r.value, 4) << " m^2\n"
            << label << "branch: " << to_string(r.branch) << "\n"
            << label << "active: " << join_ids(r.active_targets, ',') << "\n"
            << label << "feasible: " << (r.feasible ? "yes" : "no") << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_result(const Scenario& s, const PlacementResult& r, double secs, const std::string& out) {
  if (out.empty()) return;
  const ResultRecord rec = make_record(s, r, secs);
  if (fs::path(out).extension() == ".json")
    write_text_file(out, record_json(rec));
  else
    save_results(std::span<const ResultRecord>(&rec, 1), out);
}

int run_solve(const Common& c, const std::string& out, bool gated_only) {
  const Scenario s = load(c);
  if (gated_only && !s.gated()) throw UsageError("scenario has no SNR gate");
  const auto t0 = std::chrono::steady_clock::now();
  const PlacementResult r = gated_only ? solve_gated(s) : solve(s);
  const double secs = seconds_since(t0);
  std::cout << "scenario: " << s.name() << "  PJ_normalized=" << format_fixed(s.jamming().pj_normalized(), 4) << "\n";
  print_result("", r);
  if (gated_only) print_result("ungated ", solve(s.without_gate()));
  write_result(s, r, secs, out);
  return kOk;
}

int run_sweep(const Common& c, double lo, double hi, int steps, const std::string& out) {
  if (!(lo > 0.0) || !(hi > lo)) throw UsageError("--pj-min/--pj-max: need 0 < pj-min < pj-max");
  if (steps < 2) throw UsageError("--steps: need at least 2");
  const Scenario s = load(c);
  const auto sw = sweep(s, linspace(lo, hi, static_cast<std::size_t>(steps)));

  std::string csv = "pj_normalized";
  for (std::size_t i = 0; i < s.target_count(); ++i) csv += ",crlb_" + std::to_string(s.target_id(i));
  csv += ",max_min,branch,active_targets\n";
  for (const auto& smp : sw.samples) {
    const Scenario at = s.with_power(smp.pj_normalized);
    csv += format_fixed(smp.pj_normalized, 6);
    for (std::size_t i = 0; i < at.target_count(); ++i) csv += "," + format_fixed(at.crlb(i, smp.result.z), 6);
    csv += "," + format_fixed(smp.result.value, 6) + "," + std::string(to_string(smp.result.branch)) + "," +
           join_ids(smp.result.active_targets) + "\n";
  }
  for (double b : sw.breakpoints) csv += "# breakpoint " + format_fixed(b, 2) + "\n";

  if (out.empty())
    std::cout << csv;
  else
    write_text_file(out, csv);
  std::cerr << sw.samples.size() << " samples, " << sw.breakpoints.size() << " breakpoints\n";
  return kOk;
}

struct OracleRun {
  PlacementResult grid;
  PlacementResult refined;
  Box box;
};

OracleRun run_grid(const Scenario& s, double h) {
  if (!(h > 0.0)) throw UsageError("--resolution must be positive");
  OracleRun o;
  o.box = default_search_box(s);
  o.grid = grid_search(s, {o.box, h, true});
  o.refined = refine(s, o.grid.z, 2, 10.0, h);
  return o;
}

int run_oracle(const Common& c, double h) {
  const Scenario s = load(c);
  const auto o = run_grid(s, h);
  print_result("grid ", o.grid);
  print_result("refined ", o.refined);
  return kOk;
}

int run_compare(const Common& c, double h) {
  const Scenario s = load(c);
  const PlacementResult r = solve(s);
  const auto o = run_grid(s, h);
  const double slack = std::max(1e-4, lipschitz_bound(s, o.box) * h);
  const double dv = std::abs(r.value - o.refined.value);
  print_result("solver ", r);
  print_result("oracle ", o.refined);
  std::cout << "delta_value: " << format_fixed(dv, 8) << "  slack: " << format_fixed(slack, 8) << "\n"
            << "delta_z: " << format_fixed(distance(r.z, o.refined.z), 6) << " m\n";
  const bool same_inf = is_unbounded(r.value) && is_unbounded(o.refined.value);
  if (!same_inf && !(dv <= slack)) {
    std::cout << "MISMATCH\n";
    return kMismatch;
  }
  std::cout << "OK\n";
  return kOk;
}

int run_heatmap(const Common& c, double h, const std::vector<double>& box_in, const std::string& out) {
  if (!(h > 0.0)) throw UsageError("--resolution must be positive");
  const Scenario s = load(c);
  Box box = default_search_box(s);
  if (!box_in.empty()) {
    if (box_in.size() != 4 || !(box_in[1] > box_in[0]) || !(box_in[3] > box_in[2]))
      throw UsageError("--box: expected xmin xmax ymin ymax");
    box = {box_in[0], box_in[1], box_in[2], box_in[3]};
  }
  const FieldMap f = field_map(s, {box, h, true});
  std::size_t best = f.values.size();
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (f.values[k] > -kUnbounded && (best == f.values.size() || f.values[k] > f.values[best])) best = k;
  if (best == f.values.size()) throw NoFeasiblePoint("every grid node violates the distance constraint");
  const Point2 arg = f.node(best % f.nx, best / f.nx);
  std::cout << "argmax: " << pt(arg) << "  value: " << format_fixed(f.values[best], 6) << "\n";
  write_text_file(out, render_heatmap_svg(s, f, arg));
  return kOk;
}

int run_golden_table() {
  const auto checks = jamplace::run_goldens();
  bool all = true;
  std::printf("%-4s %-42s %-6s %8s  %s\n", "crit", "check", "result", "time_s", "detail");
  for (const auto& g : checks) {
    all = all && g.pass;
    std::printf("%-4d %-42s %-6s %8.2f  %s\n", g.criterion, g.name.c_str(), g.pass ? "PASS" : "FAIL", g.seconds,
                g.detail.c_str());
  }
  return all ? kOk : kGoldenFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min CRLB jammer placement"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "kernel variant: scalar or avx2 (default: best available)");

  Common c;
  std::string out;
  double h = 0.01;
  double pj_min = 0.5, pj_max = 15.0;
  int steps = 146;
  std::vector<double> box;

  auto* solve_cmd = app.add_subcommand("solve", "optimal jammer position");
  add_common(solve_cmd, c);
  solve_cmd->add_option("--out", out, "write the result record (.json) or a CSV row");

  auto* gated_cmd = app.add_subcommand("gated", "solve with the SNR gate, alongside the ungated answer");
  add_common(gated_cmd, c);
  gated_cmd->add_option("--out", out);

  auto* sweep_cmd = app.add_subcommand("sweep", "solve across a power range");
  add_common(sweep_cmd, c);
  sweep_cmd->add_option("--pj-min", pj_min);
  sweep_cmd->add_option("--pj-max", pj_max);
  sweep_cmd->add_option("--steps", steps);
  sweep_cmd->add_option("--out", out, "CSV path (stdout if omitted)");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force grid search plus refinement");
  add_common(oracle_cmd, c);
  oracle_cmd->add_option("--resolution", h);

  auto* compare_cmd = app.add_subcommand("compare", "solver against the grid oracle");
  add_common(compare_cmd, c);
  compare_cmd->add_option("--resolution", h);

  auto* heat_cmd = app.add_subcommand("heatmap", "SVG of the minimum CRLB over jammer positions");
  add_common(heat_cmd, c);
  heat_cmd->add_option("--resolution", h);
  heat_cmd->add_option("--box", box, "xmin xmax ymin ymax")->expected(4);
  heat_cmd->add_option("--out", out)->required();

  auto* goldens_cmd = app.add_subcommand("goldens", "reference checks on the bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (!isa.empty()) {
      const auto want = isa == "avx2" ? kernels::Isa::Avx2 : kernels::Isa::Scalar;
      if (isa != "avx2" && isa != "scalar") throw UsageError("--isa: expected scalar or avx2");
      if (!kernels::supported(want)) throw UsageError("--isa: " + isa + " not supported on this machine");
      kernels::set_active(want);
    }
    if (*solve_cmd) return run_solve(c, out, false);
    if (*gated_cmd) {
      if (c.scenario == "A") c.scenario = "A_gated";
      return run_solve(c, out, true);
    }
    if (*sweep_cmd) return run_sweep(c, pj_min, pj_max, steps, out);
    if (*oracle_cmd) return run_oracle(c, h);
    if (*compare_cmd) return run_compare(c, h);
    if (*heat_cmd) return run_heatmap(c, h, box, out);
    if (*goldens_cmd) return run_golden_table();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularGeometry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const NoFeasiblePoint& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
  return kUsage;
}
