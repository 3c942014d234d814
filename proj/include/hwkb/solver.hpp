#pragma once

// Strang-split spectral propagation of
//
//   i*eps d_t u = -(eps^2/2) Lap u + eps^alpha (K * |u|^2) u.
//
// Both subflows are exact: the linear half step is the Fourier multiplier
// e^{-i eps dt |xi|^2 / 4}, and since the Hartree potential V = K*|u|^2 is
// real and invariant under the phase rotation it generates, the nonlinear
// step u <- u e^{-i eps^(alpha-1) dt V} is the exact subflow. The only
// error is the splitting commutator, which is controlled by halving dt
// until two successive full propagations agree at the final requested time
// to eta * eps^2 in the max norm.
//
// Within a segment between snapshot times the trailing and leading half
// steps of adjacent Strang steps are merged into full linear steps; the
// composition is exactly the same operator sequence.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"
#include "hwkb/kernels.hpp"

namespace hwkb {

struct SolverConfig {
  double epsilon = 1.0;
  double alpha = 1.0;
  double T = 0.5;
  double dt_initial = 0.0;        // 0 -> min(T/8, eps/2)
  double eta = 0.1;               // refinement target eta * eps^2
  KernelSpec kernel = ZeroKernel{};
  std::vector<double> snapshot_times{};  // sorted, within [0, T]

  void validate() const {
    if (!(epsilon > 0.0) || epsilon > 1.0)
      throw std::invalid_argument("SolverConfig: epsilon must lie in (0, 1]");
    if (alpha < 1.0) throw std::invalid_argument("SolverConfig: alpha must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("SolverConfig: T must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("SolverConfig: eta must be positive");
    if (snapshot_times.empty())
      throw std::invalid_argument("SolverConfig: snapshot_times must not be empty");
    double prev = -1.0;
    for (double t : snapshot_times) {
      if (t < 0.0 || t > T + 1e-12)
        throw std::invalid_argument("SolverConfig: snapshot time outside [0, T]");
      if (t < prev) throw std::invalid_argument("SolverConfig: snapshot times must be sorted");
      prev = t;
    }
  }

  double initial_dt() const {
    return dt_initial > 0.0 ? dt_initial : std::min(T / 8.0, epsilon / 2.0);
  }
};

struct Trajectory {
  SolverConfig config;
  std::vector<std::pair<double, Field>> snapshots;
  double l2_drift = 0.0;   // max relative deviation of ||u||_L2 over snapshots
  double accepted_dt = 0.0;
  int halvings = 0;
  double refine_diff = 0.0;  // achieved max-norm difference at the final time
};

namespace detail {

inline void check_finite(const Field& u, const char* what) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!std::isfinite(u[i].real()) || !std::isfinite(u[i].imag()))
      throw std::runtime_error(std::string(what) + ": non-finite field values (instability)");
}

// Precomputed linear-step phases e^{-i eps dt |xi|^2 / 2} for the full and
// half steps of one run.
struct LinearPhases {
  std::vector<Complex> full;
  std::vector<Complex> half;
  LinearPhases(const Grid& g, double eps, double dt) {
    full.resize(g.size());
    half.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double w = norm_sq(g.frequency(i));
      full[i] = std::polar(1.0, -0.5 * eps * dt * w);
      half[i] = std::polar(1.0, -0.25 * eps * dt * w);
    }
  }
};

inline void apply_phase(Field& spec, const std::vector<Complex>& phase) {
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= phase[i];
}

// Exact nonlinear subflow over dt on a physical-representation state.
inline void nonlinear_kick(Field& u, const Kernel& kernel, double coupling, double dt) {
  if (kernel.is_zero()) return;
  const Field v = convolve(kernel, abs_squared(u));
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] *= std::polar(1.0, -coupling * dt * v[i].real());
}

}  // namespace detail

// One Strang step L(dt/2) N(dt) L(dt/2) on a physical-representation state.
inline Field strang_step(const Field& u, double dt, const SolverConfig& cfg, const Kernel& kernel) {
  if (u.representation() != Representation::physical)
    throw std::invalid_argument("strang_step: physical representation expected");
  const double coupling = std::pow(cfg.epsilon, cfg.alpha - 1.0);
  detail::LinearPhases phases(u.grid(), cfg.epsilon, dt);

  Field spec = to_spectral(u);
  detail::apply_phase(spec, phases.half);
  Field mid = to_physical(spec);
  detail::nonlinear_kick(mid, kernel, coupling, dt);
  spec = to_spectral(mid);
  detail::apply_phase(spec, phases.half);
  Field out = to_physical(spec);
  detail::check_finite(out, "strang_step");
  return out;
}

namespace detail {

// Advance u (physical) over [t0, t1] with n merged Strang steps of size h.
inline void advance_segment(Field& u, double h, int n, const SolverConfig& cfg,
                            const Kernel& kernel) {
  if (n <= 0) return;
  const double coupling = std::pow(cfg.epsilon, cfg.alpha - 1.0);
  LinearPhases phases(u.grid(), cfg.epsilon, h);

  Field spec = to_spectral(u);
  apply_phase(spec, phases.half);
  for (int s = 0; s < n; ++s) {
    u = to_physical(spec);
    nonlinear_kick(u, kernel, coupling, h);
    spec = to_spectral(u);
    apply_phase(spec, s + 1 < n ? phases.full : phases.half);
  }
  u = to_physical(spec);
  check_finite(u, "propagate");
}

struct RunResult {
  std::vector<std::pair<double, Field>> snapshots;
  Field final_state;
  double l2_drift = 0.0;
};

inline RunResult run_schedule(const Field& u0, const SolverConfig& cfg, const Kernel& kernel,
                              double dt_target) {
  RunResult out;
  Field u = to_physical(u0);
  const double l2_ref = l2_norm(u);
  double t = 0.0;

  auto record = [&](double time) {
    out.snapshots.emplace_back(time, u);
    if (l2_ref > 0.0)
      out.l2_drift = std::max(out.l2_drift, std::abs(l2_norm(u) / l2_ref - 1.0));
  };

  std::size_t next = 0;
  while (next < cfg.snapshot_times.size() && cfg.snapshot_times[next] <= 0.0) {
    record(cfg.snapshot_times[next]);
    ++next;
  }
  for (; next < cfg.snapshot_times.size(); ++next) {
    const double target = cfg.snapshot_times[next];
    const double seg = target - t;
    if (seg > 1e-14) {
      const int n = std::max(1, static_cast<int>(std::ceil(seg / dt_target - 1e-9)));
      advance_segment(u, seg / n, n, cfg, kernel);
      t = target;
    }
    record(target);
  }
  out.final_state = u;
  return out;
}

}  // namespace detail

// Propagation at a fixed target step (no refinement); returns the state at
// the last snapshot time.
inline Field propagate_fixed_dt(const SolverConfig& cfg, const Field& u0, double dt) {
  cfg.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("propagate_fixed_dt: dt must be positive");
  const Kernel kernel(cfg.kernel, u0.grid_ptr());
  return detail::run_schedule(u0, cfg, kernel, dt).final_state;
}

// Full propagation with splitting-error control: dt is halved from
// dt_initial until two successive runs agree at the final requested time to
// eta * eps^2 in the max norm; the finer run is returned. Fails after 12
// halvings (instability) or if the L2 drift of the accepted run exceeds
// 1e-9 (run rejected).
inline Trajectory propagate(const SolverConfig& cfg, const Field& u0) {
  cfg.validate();
  const Kernel kernel(cfg.kernel, u0.grid_ptr());

  Trajectory traj;
  traj.config = cfg;

  const double t_end = cfg.snapshot_times.back();
  if (t_end <= 0.0) {
    // nothing to propagate; echo the initial state at the requested times
    Field u = to_physical(u0);
    for (double t : cfg.snapshot_times) traj.snapshots.emplace_back(t, u);
    traj.accepted_dt = cfg.initial_dt();
    return traj;
  }

  const double tol = cfg.eta * cfg.epsilon * cfg.epsilon;
  double dt = cfg.initial_dt();
  detail::RunResult prev = detail::run_schedule(u0, cfg, kernel, dt);
  for (int halving = 1; halving <= 12; ++halving) {
    dt *= 0.5;
    detail::RunResult fine = detail::run_schedule(u0, cfg, kernel, dt);
    const double diff = linf_norm(fine.final_state - prev.final_state);
    if (diff < tol) {
      if (fine.l2_drift > 1e-9)
        throw std::runtime_error("propagate: L2 drift exceeds 1e-9, run rejected");
      traj.snapshots = std::move(fine.snapshots);
      traj.l2_drift = fine.l2_drift;
      traj.accepted_dt = dt;
      traj.halvings = halving;
      traj.refine_diff = diff;
      return traj;
    }
    prev = std::move(fine);
  }
  throw std::runtime_error("propagate: time-step refinement failed to converge in 12 halvings");
}

}  // namespace hwkb
