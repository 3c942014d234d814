#pragma once

// Scenario configuration, eps sweeps with a bounded worker pool,
// convergence-rate evaluation and report emission.
//
// A sweep runs one case per eps: build u0, propagate the exact equation,
// assemble u_app at the snapshot times, record the max-over-snapshots
// sup-norm error plus the remainder diagnostics at the final time, then
// fit log(error) against log(eps) and compare the slope with the
// theoretical order beta(alpha).
//
// Outputs per sweep:
//   <scenario>.csv          epsilon,sup_error,yr_wiener,bound_ratio,l2_drift,runtime_s
//   <scenario>_summary.txt  key = value lines (fit, flags, per-case diagnostics)
//   <scenario>_loglog.dat   log10(eps)  log10(sup_error) pairs for plotting
//
// All numeric output is full double precision (%.17g); every column except
// the wall-clock runtime is a deterministic function of the configuration,
// independent of the worker count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hwkb/diagnostics.hpp"
#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"
#include "hwkb/kernels.hpp"
#include "hwkb/rate.hpp"
#include "hwkb/solver.hpp"
#include "hwkb/wkb.hpp"

namespace hwkb {

struct GridPolicy {
  double box_length = 32.0 * kPi;
  double sigma_margin = 8.0;  // standard deviations of the widest amplitude spectrum
  double safety = 2.0;        // factor applied to the required band edge
  int n_max = 32768;
  int n_min = 64;
};

struct SweepConfig {
  std::string scenario = "scenario";
  int dimension = 1;
  double alpha = 1.0;
  AmplitudeVariant variant = AmplitudeVariant::standard;
  std::vector<double> epsilons;
  ModeSpec modes;
  KernelSpec kernel = ZeroKernel{};
  double T = 0.5;
  int snapshot_count = 11;
  GridPolicy grid;
  double eta = 0.1;
  double dt_initial = 0.0;  // 0 -> auto per case
  int quadrature_nodes = 8;
  std::string output_dir = "out";
  int workers = 1;
  double rate_tol_low = 0.25;
  double rate_tol_high = 0.25;
  double hypothesis_bound = 1e3;

  std::vector<double> snapshot_times() const {
    std::vector<double> ts;
    const int n = std::max(2, snapshot_count);
    ts.reserve(n);
    for (int i = 0; i < n; ++i) ts.push_back(T * i / (n - 1));
    ts.back() = T;
    return ts;
  }
};

// Nyquist must clear safety * (max_j |k_j|/eps + sigma_margin standard
// deviations of the widest profile spectrum) per axis; N is the next power
// of two, clamped to [n_min, n_max] with an error above n_max.
inline GridSpec resolve_grid(const SweepConfig& cfg, double eps) {
  double carrier = 0.0;
  double sigma_xi = 0.0;
  for (const Mode& m : cfg.modes.modes) {
    for (int a = 0; a < cfg.dimension; ++a) carrier = std::max(carrier, std::abs(m.k[a]));
    if (const auto* g = std::get_if<GaussianProfile>(&m.profile))
      sigma_xi = std::max(sigma_xi, 1.0 / g->width);
  }
  const double band = cfg.grid.safety * (carrier / eps + cfg.grid.sigma_margin * sigma_xi);
  int n = cfg.grid.n_min;
  while (n * kPi / cfg.grid.box_length < band) {
    n *= 2;
    if (n > cfg.grid.n_max)
      throw std::runtime_error("resolve_grid: required resolution exceeds n_max");
  }
  GridSpec spec;
  spec.dimension = cfg.dimension;
  spec.points_per_axis = n;
  spec.box_length = cfg.grid.box_length;
  return spec;
}

struct CaseRecord {
  double epsilon = 0.0;
  double sup_error = 0.0;
  double yr_wiener = 0.0;   // ||Y_R||_W at the final time
  double bound_ratio = 0.0; // yr_bound_check at the final time (0 when J < 2)
  double l2_drift = 0.0;
  double runtime_s = 0.0;
  // diagnostics (summary only, not part of the CSV)
  int grid_n = 0;
  double accepted_dt = 0.0;
  int halvings = 0;
};

inline CaseRecord run_case(const SweepConfig& cfg, double eps) {
  const auto t0 = std::chrono::steady_clock::now();

  const GridPtr grid = make_grid(resolve_grid(cfg, eps));
  validate_profiles(cfg.modes, *grid);
  validate_lattice_compatibility(cfg.modes, eps, *grid);
  const Kernel kernel(cfg.kernel, grid);

  SolverConfig scfg;
  scfg.epsilon = eps;
  scfg.alpha = cfg.alpha;
  scfg.T = cfg.T;
  scfg.dt_initial = cfg.dt_initial;
  scfg.eta = cfg.eta;
  scfg.kernel = cfg.kernel;
  scfg.snapshot_times = cfg.snapshot_times();

  const Field u0 = build_initial_data(cfg.modes, eps, grid);
  const Trajectory traj = propagate(scfg, u0);

  CaseRecord rec;
  rec.epsilon = eps;
  rec.grid_n = grid->points_per_axis();
  rec.l2_drift = traj.l2_drift;
  rec.accepted_dt = traj.accepted_dt;
  rec.halvings = traj.halvings;

  AmplitudeSet final_set;
  for (const auto& [t, u] : traj.snapshots) {
    const AmplitudeSet set =
        build_amplitudes(cfg.modes, t, kernel, cfg.alpha, cfg.variant, eps, cfg.quadrature_nodes);
    const Field u_app = assemble_u_app(set, cfg.modes, t, eps);
    rec.sup_error = std::max(rec.sup_error, sup_error(u, u_app));
    if (t == traj.snapshots.back().first) final_set = set;
  }

  if (cfg.modes.count() >= 2) {
    const ResidualReport res =
        residual_terms(final_set, cfg.modes, kernel, eps, cfg.alpha);
    rec.yr_wiener = res.yr_wiener;
    rec.bound_ratio = yr_bound_check(res, final_set, cfg.modes, kernel, eps);
  }

  rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

struct SweepReport {
  SweepConfig config;
  std::vector<CaseRecord> records;
  bool fit_available = false;
  RateFit fit;
  double beta_theory_value = 0.0;
  std::string fit_note;  // e.g. "insufficient points"
  bool rate_ok = false;
  bool rate_above_note = false;  // beta above the window: pass with note
  bool conservation_ok = false;
  bool bound_ok = false;
  bool overall_pass = false;
};

inline void evaluate_report(SweepReport& rep) {
  const SweepConfig& cfg = rep.config;
  rep.beta_theory_value = beta_theory(cfg.alpha);
  rep.conservation_ok = true;
  rep.bound_ok = true;
  for (const CaseRecord& r : rep.records) {
    rep.conservation_ok = rep.conservation_ok && r.l2_drift <= 1e-9;
    rep.bound_ok = rep.bound_ok && r.bound_ratio <= 1.0 + 1e-6;
  }

  std::vector<double> eps, err;
  for (const CaseRecord& r : rep.records) {
    eps.push_back(r.epsilon);
    err.push_back(r.sup_error);
  }
  try {
    rep.fit = fit_rate(eps, err, cfg.eta);
    rep.fit_available = true;
    rep.rate_ok = rep.fit.beta >= rep.beta_theory_value - cfg.rate_tol_low;
    rep.rate_above_note = rep.fit.beta > rep.beta_theory_value + cfg.rate_tol_high;
  } catch (const std::exception& e) {
    rep.fit_available = false;
    rep.fit_note = "insufficient points";
    rep.rate_ok = false;
  }
  rep.overall_pass = rep.conservation_ok && rep.bound_ok && (rep.fit_available ? rep.rate_ok : false);
}

// Runs all eps cases (parallel across eps with a bounded worker pool; the
// records are assembled in the fixed eps order regardless of worker count).
inline SweepReport run_sweep(const SweepConfig& cfg) {
  if (cfg.epsilons.empty()) throw std::invalid_argument("run_sweep: empty epsilon list");
  SweepReport rep;
  rep.config = cfg;
  rep.records.resize(cfg.epsilons.size());

  std::vector<std::string> errors(cfg.epsilons.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(cfg.workers, static_cast<int>(cfg.epsilons.size())));

  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.epsilons.size()) return;
      try {
        rep.records[i] = run_case(cfg, cfg.epsilons[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("run_sweep: case eps=" + std::to_string(cfg.epsilons[i]) +
                               " failed: " + errors[i]);

  evaluate_report(rep);
  return rep;
}

// --- report emission ---

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline constexpr const char* kCsvHeader = "epsilon,sup_error,yr_wiener,bound_ratio,l2_drift,runtime_s";

inline std::string to_csv(const std::vector<CaseRecord>& records) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const CaseRecord& r : records) {
    out += format_double(r.epsilon) + "," + format_double(r.sup_error) + "," +
           format_double(r.yr_wiener) + "," + format_double(r.bound_ratio) + "," +
           format_double(r.l2_drift) + "," + format_double(r.runtime_s) + "\n";
  }
  return out;
}

inline std::vector<CaseRecord> parse_csv(const std::string& text) {
  std::vector<CaseRecord> records;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty input");
  if (line != kCsvHeader) throw std::runtime_error("parse_csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 6) throw std::runtime_error("parse_csv: malformed row");
    CaseRecord r;
    r.epsilon = vals[0];
    r.sup_error = vals[1];
    r.yr_wiener = vals[2];
    r.bound_ratio = vals[3];
    r.l2_drift = vals[4];
    r.runtime_s = vals[5];
    records.push_back(r);
  }
  return records;
}

inline std::string summary_text(const SweepReport& rep) {
  const SweepConfig& cfg = rep.config;
  std::string s;
  auto kv = [&s](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
  kv("scenario", cfg.scenario);
  kv("dimension", std::to_string(cfg.dimension));
  kv("alpha", format_double(cfg.alpha));
  kv("variant", variant_name(cfg.variant));
  kv("kernel", kernel_name(cfg.kernel));
  kv("T", format_double(cfg.T));
  kv("eta", format_double(cfg.eta));
  kv("snapshots", std::to_string(cfg.snapshot_count));
  kv("rate_tol_low", format_double(cfg.rate_tol_low));
  kv("rate_tol_high", format_double(cfg.rate_tol_high));
  for (const CaseRecord& r : rep.records) {
    s += "case eps=" + format_double(r.epsilon) + " n=" + std::to_string(r.grid_n) +
         " dt=" + format_double(r.accepted_dt) + " halvings=" + std::to_string(r.halvings) +
         " sup_error=" + format_double(r.sup_error) + " yr_wiener=" + format_double(r.yr_wiener) +
         " bound_ratio=" + format_double(r.bound_ratio) + " l2_drift=" + format_double(r.l2_drift) +
         " runtime_s=" + format_double(r.runtime_s) + "\n";
  }
  kv("beta_theory", format_double(rep.beta_theory_value));
  if (rep.fit_available) {
    kv("beta_hat", format_double(rep.fit.beta));
    kv("beta_stderr", format_double(rep.fit.stderr_beta));
    kv("fit_points_used", std::to_string(rep.fit.used));
    kv("fit_points_dropped", std::to_string(rep.fit.dropped));
  } else {
    kv("fit", rep.fit_note.empty() ? "unavailable" : rep.fit_note);
  }
  kv("rate_ok", rep.rate_ok ? "true" : "false");
  kv("rate_above_window_note", rep.rate_above_note ? "true" : "false");
  kv("conservation_ok", rep.conservation_ok ? "true" : "false");
  kv("bound_ok", rep.bound_ok ? "true" : "false");
  kv("overall_pass", rep.overall_pass ? "true" : "false");
  return s;
}

inline std::string loglog_text(const std::vector<CaseRecord>& records) {
  std::string s = "# log10_epsilon log10_sup_error\n";
  for (const CaseRecord& r : records) {
    if (!(r.sup_error > 0.0)) continue;
    s += format_double(std::log10(r.epsilon)) + " " + format_double(std::log10(r.sup_error)) + "\n";
  }
  return s;
}

struct ReportPaths {
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::filesystem::path loglog;
};

inline ReportPaths emit_report(const SweepReport& rep, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  ReportPaths paths;
  paths.csv = dir / (rep.config.scenario + ".csv");
  paths.summary = dir / (rep.config.scenario + "_summary.txt");
  paths.loglog = dir / (rep.config.scenario + "_loglog.dat");

  auto write = [](const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot write " + p.string());
    out << content;
  };
  write(paths.csv, to_csv(rep.records));
  write(paths.summary, summary_text(rep));
  write(paths.loglog, loglog_text(rep.records));
  return paths;
}

}  // namespace hwkb
