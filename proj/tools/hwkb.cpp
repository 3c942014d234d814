// hwkb command-line driver.
//
//   hwkb run   --config <file> --epsilon <val>   single case, record printed
//   hwkb sweep --config <file>                   eps sweep, reports written
//   hwkb check --config <file> --suite <name>    property suites
//                                                (kernel | wiener | wkb)
//
// Exit code 0 when everything passed, nonzero otherwise.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "hwkb/hwkb.hpp"

namespace {

void print_record(const hwkb::CaseRecord& r) {
  std::printf("epsilon      = %.17g\n", r.epsilon);
  std::printf("grid_n       = %d\n", r.grid_n);
  std::printf("accepted_dt  = %.17g\n", r.accepted_dt);
  std::printf("halvings     = %d\n", r.halvings);
  std::printf("sup_error    = %.17g\n", r.sup_error);
  std::printf("yr_wiener    = %.17g\n", r.yr_wiener);
  std::printf("bound_ratio  = %.17g\n", r.bound_ratio);
  std::printf("l2_drift     = %.17g\n", r.l2_drift);
  std::printf("runtime_s    = %.17g\n", r.runtime_s);
}

void print_suite(const hwkb::SuiteResult& s) {
  std::printf("suite %s: %s\n", s.suite.c_str(), s.pass() ? "PASS" : "FAIL");
  for (const auto& r : s.results)
    std::printf("  %-48s checks=%-4d failures=%-3d worst=%.3e tol=%.3e\n", r.name.c_str(),
                r.checks, r.failures, r.worst, r.tolerance);
}

int cmd_run(const std::string& config_path, double epsilon, int workers) {
  hwkb::SweepConfig cfg = hwkb::load_config(config_path);
  if (workers > 0) cfg.workers = workers;
  const hwkb::CaseRecord rec = hwkb::run_case(cfg, epsilon);
  print_record(rec);
  const bool ok = rec.l2_drift <= 1e-9 && rec.bound_ratio <= 1.0 + 1e-6;
  std::printf("case %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, int workers, const std::string& output_dir) {
  hwkb::SweepConfig cfg = hwkb::load_config(config_path);
  if (workers > 0) cfg.workers = workers;
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  const hwkb::SweepReport rep = hwkb::run_sweep(cfg);
  const auto paths = hwkb::emit_report(rep, cfg.output_dir);
  std::fputs(hwkb::summary_text(rep).c_str(), stdout);
  std::printf("csv     = %s\n", paths.csv.string().c_str());
  std::printf("summary = %s\n", paths.summary.string().c_str());
  std::printf("loglog  = %s\n", paths.loglog.string().c_str());
  return rep.overall_pass ? 0 : 1;
}

int cmd_check(const std::string& config_path, const std::string& suite, int n_checks) {
  hwkb::SweepConfig cfg = hwkb::load_config(config_path);
  const double eps = cfg.epsilons.empty() ? 0.125 : cfg.epsilons.front();

  // A moderate grid is enough for the randomized suites; the wkb suite uses
  // the scenario's own resolution rule.
  hwkb::GridSpec gs;
  gs.dimension = cfg.dimension;
  gs.points_per_axis = 256;
  gs.box_length = cfg.grid.box_length;
  const hwkb::GridPtr grid = hwkb::make_grid(gs);

  hwkb::SuiteResult result;
  if (suite == "kernel") {
    result = hwkb::kernel_suite(hwkb::Kernel(cfg.kernel, grid), cfg.hypothesis_bound, n_checks);
  } else if (suite == "wiener") {
    result = hwkb::wiener_suite(grid, hwkb::Kernel(cfg.kernel, grid), n_checks);
  } else if (suite == "wkb") {
    const hwkb::GridPtr run_grid = hwkb::make_grid(hwkb::resolve_grid(cfg, eps));
    hwkb::validate_profiles(cfg.modes, *run_grid);
    result = hwkb::wkb_suite(cfg.modes, hwkb::Kernel(cfg.kernel, run_grid), eps, cfg.alpha,
                             cfg.variant, cfg.quadrature_nodes);
  } else {
    std::fprintf(stderr, "unknown suite '%s' (expected kernel, wiener or wkb)\n", suite.c_str());
    return 2;
  }
  print_suite(result);
  return result.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral laboratory for multiphase WKB dynamics of "
               "semiclassical Hartree equations"};
  app.require_subcommand(1);

  std::string config_path;
  double epsilon = 0.0;
  int workers = 0;
  std::string output_dir;
  std::string suite;
  int n_checks = 100;

  auto* run = app.add_subcommand("run", "Run a single case at one epsilon");
  run->add_option("--config", config_path, "Scenario config file")->required();
  run->add_option("--epsilon", epsilon, "Semiclassical parameter")->required();
  run->add_option("--workers", workers, "Worker threads");

  auto* sweep = app.add_subcommand("sweep", "Run the epsilon sweep and fit the rate");
  sweep->add_option("--config", config_path, "Scenario config file")->required();
  sweep->add_option("--workers", workers, "Worker threads");
  sweep->add_option("--output", output_dir, "Output directory override");

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("--config", config_path, "Scenario config file")->required();
  check->add_option("--suite", suite, "kernel | wiener | wkb")->required();
  check->add_option("--checks", n_checks, "Randomized checks per property");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, epsilon, workers);
    if (sweep->parsed()) return cmd_sweep(config_path, workers, output_dir);
    if (check->parsed()) return cmd_check(config_path, suite, n_checks);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
