#pragma once

// Multiphase WKB construction for the weakly nonlinear Hartree equation
//
//   i*eps d_t u = -(eps^2/2) Lap u + eps^alpha (K * |u|^2) u
//
// with initial data u0(x) = sum_j a_j(x) e^{i k_j . x / eps}.  This module
// builds the approximate solution
//
//   u_app(t,x) = sum_j A_j(t,x) e^{i phi_j(t,x) / eps},
//   phi_j(t,x) = k_j . x - t |k_j|^2 / 2,
//   A_j(t,x)   = a_j(x - t k_j) e^{i s S_j(t,x)},
//
// where the slow phase S_j is the time integral of the translated effective
// potential and the phase scale s depends on alpha and the chosen amplitude
// variant:
//   standard:           s = 1 for alpha = 1, s = 0 (S_j := 0) for alpha > 1
//   epsilon_modulated:  s = eps^(alpha-1) for all alpha >= 1
//
// The plane-wave phases solve d_t phi + |grad phi|^2/2 = 0 exactly, so the
// construction is caustic-free for all t.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"
#include "hwkb/kernels.hpp"

namespace hwkb {

// Wrapped Gaussian profile weight * exp(-|x - center|^2 / (2 width^2)),
// periodized over the box. Width must be small against the box so that the
// mass outside [-L/2, L/2)^d is negligible (checked at validation).
struct GaussianProfile {
  Vec center{0.0, 0.0, 0.0};
  double width = 1.0;
  Complex weight{1.0, 0.0};
};

// A mode is a carrier wavevector plus an amplitude profile; custom profiles
// are given as already-sampled band-limited fields.
struct Mode {
  Vec k{0.0, 0.0, 0.0};
  std::variant<GaussianProfile, Field> profile;
};

struct ModeSpec {
  std::vector<Mode> modes;
  std::size_t count() const { return modes.size(); }
};

enum class AmplitudeVariant { standard, epsilon_modulated };

inline const char* variant_name(AmplitudeVariant v) {
  return v == AmplitudeVariant::standard ? "standard" : "epsilon_modulated";
}

struct MinGapReport {
  double lambda_sup = 0.0;  // sup over pairs of |Lambda_{l,m}| = 1 / min gap
  struct Pair {
    std::size_t l = 0, m = 0;
    Vec lambda{0.0, 0.0, 0.0};  // (k_l - k_m) / |k_l - k_m|^2
    double gap = 0.0;
  };
  std::vector<Pair> pairs;  // ordered pairs l != m
};

// Pairwise wavevector separations; a zero gap (duplicate carrier) is an error.
inline MinGapReport check_min_gap(const ModeSpec& modes) {
  if (modes.count() < 1) throw std::invalid_argument("check_min_gap: empty mode set");
  MinGapReport r;
  for (std::size_t l = 0; l < modes.count(); ++l) {
    for (std::size_t m = 0; m < modes.count(); ++m) {
      if (l == m) continue;
      const Vec d = modes.modes[l].k - modes.modes[m].k;
      const double gap = norm(d);
      if (gap == 0.0) throw std::invalid_argument("check_min_gap: duplicate wavevectors");
      MinGapReport::Pair p;
      p.l = l;
      p.m = m;
      p.gap = gap;
      p.lambda = (1.0 / (gap * gap)) * d;
      r.pairs.push_back(p);
      r.lambda_sup = std::max(r.lambda_sup, 1.0 / gap);
    }
  }
  return r;
}

// a_j sampled on the grid (physical representation).
inline Field sample_profile(const Mode& mode, const GridPtr& grid) {
  if (const auto* g = std::get_if<GaussianProfile>(&mode.profile)) {
    Field f(grid, Representation::physical);
    const double L = grid->box_length();
    const int dim = grid->dimension();
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const Vec x = grid->coordinate(i);
      double q = 0.0;  // sum over periodic images, truncated at |p| <= 2
      if (dim == 1) {
        for (int p = -2; p <= 2; ++p) {
          const double dx = x[0] - g->center[0] - p * L;
          q += std::exp(-0.5 * dx * dx / (g->width * g->width));
        }
      } else {
        // multi-d: nearest image per axis suffices for box-confined widths
        double s2 = 0.0;
        for (int a = 0; a < dim; ++a) {
          double dx = x[a] - g->center[a];
          dx -= L * std::round(dx / L);
          s2 += dx * dx;
        }
        q = std::exp(-0.5 * s2 / (g->width * g->width));
      }
      f[i] = g->weight * q;
    }
    return f;
  }
  const Field& samples = std::get<Field>(mode.profile);
  if (samples.grid().spec().points_per_axis != grid->points_per_axis() ||
      samples.grid().spec().box_length != grid->box_length() ||
      samples.grid().spec().dimension != grid->dimension())
    throw std::invalid_argument("sample_profile: custom profile grid mismatch");
  return to_physical(samples);
}

// k_j / eps must sit on the reciprocal lattice (2*pi/L) Z^d and inside the
// Nyquist range, otherwise the plane-wave carriers are not periodic on the
// box and the spectral representation leaks.
inline void validate_lattice_compatibility(const ModeSpec& modes, double eps, const Grid& grid) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("lattice compatibility: eps must be positive");
  const double dk = grid.freq_spacing();
  for (const Mode& m : modes.modes) {
    for (int a = 0; a < grid.dimension(); ++a) {
      const double r = m.k[a] / (eps * dk);
      if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, std::abs(r)))
        throw std::invalid_argument("lattice compatibility: k_j/eps is not on the frequency lattice");
      if (std::abs(std::round(r)) >= grid.points_per_axis() / 2)
        throw std::invalid_argument("lattice compatibility: k_j/eps exceeds the Nyquist range");
    }
  }
}

// Box confinement of Gaussian profiles: 8 widths must fit between the
// farthest center and the box edge, which puts the exterior mass below 1e-12.
inline void validate_profiles(const ModeSpec& modes, const Grid& grid) {
  for (const Mode& m : modes.modes) {
    if (const auto* g = std::get_if<GaussianProfile>(&m.profile)) {
      if (!(g->width > 0.0)) throw std::invalid_argument("profile: width must be positive");
      for (int a = 0; a < grid.dimension(); ++a) {
        if (std::abs(g->center[a]) + 8.0 * g->width > 0.5 * grid.box_length())
          throw std::invalid_argument("profile: Gaussian is not confined to the box");
      }
    }
  }
}

// u0(x) = sum_j a_j(x) e^{i k_j . x / eps}.
inline Field build_initial_data(const ModeSpec& modes, double eps, const GridPtr& grid) {
  validate_lattice_compatibility(modes, eps, *grid);
  Field u(grid, Representation::physical);
  for (const Mode& m : modes.modes) {
    const Field a = sample_profile(m, grid);
    const Vec carrier = (1.0 / eps) * m.k;
    for (std::size_t i = 0; i < grid->size(); ++i)
      u[i] += a[i] * std::polar(1.0, dot(carrier, grid->coordinate(i)));
  }
  return u;
}

// Transported amplitudes at one instant.  Stores, besides A_j itself, the
// pieces the diagnostics need: the translated profile a_j(. - t k_j), the
// slow phase S_j and the phase scale s (so grad A and Lap A can be formed
// by the product rule from spectrally differentiated factors).
struct AmplitudeSet {
  double t = 0.0;
  double alpha = 1.0;
  double epsilon = 0.0;  // used by the epsilon_modulated variant
  AmplitudeVariant variant = AmplitudeVariant::standard;
  double phase_scale = 0.0;            // s in A_j = a_j(.-t k_j) e^{i s S_j}
  std::vector<Field> amplitudes;       // A_j, physical
  std::vector<Field> translated;       // a_j(. - t k_j), physical
  std::vector<Field> slow_phase;       // S_j, physical, real-valued
  std::size_t count() const { return amplitudes.size(); }
};

namespace detail {

// Spectral data of |a_l|^2 for every mode, used by the S_j quadrature.
inline std::vector<Field> density_spectra(const ModeSpec& modes, const GridPtr& grid) {
  std::vector<Field> out;
  out.reserve(modes.count());
  for (const Mode& m : modes.modes)
    out.push_back(to_spectral(abs_squared(sample_profile(m, grid))));
  return out;
}

// One tau-slice of the S_j integrand, accumulated in spectral space:
//   slice_j(tau) = K * sum_l |a_l|^2(. - v_{jl}(tau)),
//   v_{jl}(tau) = (t - tau) k_j + tau k_l.
inline void accumulate_slice(std::vector<Complex>& acc, const ModeSpec& modes,
                             const std::vector<Field>& rho_hat, const Grid& grid,
                             std::size_t j, double t, double tau, double weight) {
  for (std::size_t l = 0; l < modes.count(); ++l) {
    const Vec v = (t - tau) * modes.modes[j].k + tau * modes.modes[l].k;
    const Field& rh = rho_hat[l];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec xi = grid.frequency(i);
      acc[i] += weight * rh[i] * std::polar(1.0, -dot(xi, v));
    }
  }
}

}  // namespace detail

struct SlowPhaseResult {
  std::vector<Field> fields;  // S_j, real-valued physical fields
  int panels = 0;             // accepted Simpson panel count
  int doublings = 0;
};

// S_j(t,.) = - Int_0^t ( K * sum_l |a_l(. + (tau - t) k_j - tau k_l)|^2 ) dtau
// by composite Simpson in tau; each slice is assembled from exact spectral
// translations of |a_l|^2 and one application of the kernel multiplier.
// The panel count is doubled until successive quadratures agree to 1e-9 in
// the max norm.
inline SlowPhaseResult compute_phase_S_detailed(const ModeSpec& modes, double t,
                                                const Kernel& kernel, int quadrature_nodes) {
  if (t < 0.0) throw std::invalid_argument("compute_phase_S: t must be >= 0");
  if (quadrature_nodes < 2) throw std::invalid_argument("compute_phase_S: need >= 2 nodes");
  const GridPtr grid = kernel.grid_ptr();

  SlowPhaseResult result;
  if (t == 0.0) {
    result.fields.assign(modes.count(), Field(grid, Representation::physical));
    return result;
  }

  const auto rho_hat = detail::density_spectra(modes, grid);
  const double conv = grid->convolution_scale();
  const auto& khat = kernel.lattice_multiplier();

  auto quadrature = [&](std::size_t j, int panels) {
    std::vector<Complex> acc(grid->size(), Complex{0.0, 0.0});
    const double dt = t / panels;
    for (int p = 0; p <= panels; ++p) {
      const double w = (p == 0 || p == panels) ? 1.0 : (p % 2 == 1 ? 4.0 : 2.0);
      detail::accumulate_slice(acc, modes, rho_hat, *grid, j, t, p * dt, w * dt / 3.0);
    }
    Field shat(grid, Representation::spectral, std::move(acc));
    for (std::size_t i = 0; i < shat.size(); ++i) shat[i] *= -conv * khat[i];
    return real_part(transform(shat, Direction::inverse));
  };

  int start = quadrature_nodes + (quadrature_nodes % 2);
  for (std::size_t j = 0; j < modes.count(); ++j) {
    int panels = start;
    Field coarse = quadrature(j, panels);
    int doubling = 0;
    for (;; ++doubling) {
      if (doubling >= 12)
        throw std::runtime_error("compute_phase_S: quadrature failed to converge in 12 doublings");
      Field fine = quadrature(j, 2 * panels);
      const double diff = linf_norm(fine - coarse);
      panels *= 2;
      coarse = std::move(fine);
      if (diff < 1e-9) break;
    }
    result.fields.push_back(std::move(coarse));
    result.panels = std::max(result.panels, panels);
    result.doublings = std::max(result.doublings, doubling + 1);
  }
  return result;
}

inline std::vector<Field> compute_phase_S(const ModeSpec& modes, double t, const Kernel& kernel,
                                          int quadrature_nodes) {
  return compute_phase_S_detailed(modes, t, kernel, quadrature_nodes).fields;
}

// A_j(t) = a_j(. - t k_j) e^{i s S_j(t)}; see the header comment for s.
inline AmplitudeSet build_amplitudes(const ModeSpec& modes, double t, const Kernel& kernel,
                                     double alpha, AmplitudeVariant variant, double eps = 0.0,
                                     int quadrature_nodes = 8) {
  if (t < 0.0) throw std::invalid_argument("build_amplitudes: t must be >= 0");
  if (alpha < 1.0) throw std::invalid_argument("build_amplitudes: alpha must be >= 1");
  const GridPtr grid = kernel.grid_ptr();

  AmplitudeSet set;
  set.t = t;
  set.alpha = alpha;
  set.epsilon = eps;
  set.variant = variant;
  if (variant == AmplitudeVariant::standard) {
    set.phase_scale = (alpha == 1.0) ? 1.0 : 0.0;
  } else {
    if (!(eps > 0.0))
      throw std::invalid_argument("build_amplitudes: epsilon_modulated variant needs eps > 0");
    set.phase_scale = std::pow(eps, alpha - 1.0);
  }

  const bool need_phase = set.phase_scale != 0.0;
  if (need_phase) {
    set.slow_phase = compute_phase_S(modes, t, kernel, quadrature_nodes);
  } else {
    set.slow_phase.assign(modes.count(), Field(grid, Representation::physical));
  }

  for (std::size_t j = 0; j < modes.count(); ++j) {
    Field a = sample_profile(modes.modes[j], grid);
    Field moved = (t == 0.0) ? std::move(a) : translate(a, t * modes.modes[j].k);
    Field amp = moved;
    if (need_phase) {
      const Field& S = set.slow_phase[j];
      for (std::size_t i = 0; i < amp.size(); ++i)
        amp[i] *= std::polar(1.0, set.phase_scale * S[i].real());
    }
    set.translated.push_back(std::move(moved));
    set.amplitudes.push_back(std::move(amp));
  }
  return set;
}

// V_eff(A) = K * sum_l |A_l|^2 (real since Khat is real and even and the
// density is real).
inline Field effective_potential(const AmplitudeSet& set, const Kernel& kernel) {
  if (set.count() == 0) throw std::invalid_argument("effective_potential: empty amplitude set");
  Field rho(set.amplitudes[0].grid_ptr(), Representation::physical);
  for (const Field& A : set.amplitudes) rho += abs_squared(A);
  Field v = convolve(kernel, rho);
  if (max_imag(v) > 1e-10 * std::max(1.0, linf_norm(v)))
    throw std::runtime_error("effective_potential: potential has a non-negligible imaginary part");
  return v;
}

// Scalar part of the phase, e^{i phi_j / eps} = e^{i k_j.x/eps} * e^{-i t|k_j|^2/(2 eps)}.
inline Complex phase_time_factor(const Vec& k, double t, double eps) {
  return std::polar(1.0, -0.5 * t * norm_sq(k) / eps);
}

// u_app(t,x) = sum_j A_j(t,x) e^{i(k_j.x - t|k_j|^2/2)/eps}.
inline Field assemble_u_app(const AmplitudeSet& set, const ModeSpec& modes, double t, double eps) {
  if (set.count() != modes.count())
    throw std::invalid_argument("assemble_u_app: amplitude/mode count mismatch");
  const GridPtr grid = set.amplitudes.empty() ? nullptr : set.amplitudes[0].grid_ptr();
  if (!grid) throw std::invalid_argument("assemble_u_app: empty amplitude set");
  validate_lattice_compatibility(modes, eps, *grid);

  Field u(grid, Representation::physical);
  for (std::size_t j = 0; j < modes.count(); ++j) {
    const Vec carrier = (1.0 / eps) * modes.modes[j].k;
    const Complex c = phase_time_factor(modes.modes[j].k, t, eps);
    const Field& A = set.amplitudes[j];
    for (std::size_t i = 0; i < grid->size(); ++i)
      u[i] += A[i] * c * std::polar(1.0, dot(carrier, grid->coordinate(i)));
  }
  return u;
}

// Max-norm residual of the amplitude transport system
//   d_t A_j + k_j . grad A_j + i * s_nl * V_eff(A) A_j = 0,
// with s_nl = 1 (alpha = 1, standard), 0 (alpha > 1, standard) or
// eps^(alpha-1) (epsilon_modulated); d_t by central difference with step
// delta_t (rebuilding the set at t +/- delta_t), grad spectral.
inline std::vector<double> transport_residual(const AmplitudeSet& set, const ModeSpec& modes,
                                              const Kernel& kernel, double alpha, double t,
                                              double delta_t, int quadrature_nodes = 8) {
  if (!(delta_t > 0.0)) throw std::invalid_argument("transport_residual: delta_t must be positive");
  const double t_minus = t - delta_t;
  if (t_minus < 0.0) throw std::invalid_argument("transport_residual: need t - delta_t >= 0");

  const AmplitudeSet plus =
      build_amplitudes(modes, t + delta_t, kernel, alpha, set.variant, set.epsilon, quadrature_nodes);
  const AmplitudeSet minus =
      build_amplitudes(modes, t_minus, kernel, alpha, set.variant, set.epsilon, quadrature_nodes);

  const double s_nl = set.phase_scale;  // same scale multiplies the potential
  Field v_eff = (s_nl != 0.0) ? effective_potential(set, kernel)
                              : Field(kernel.grid_ptr(), Representation::physical);

  std::vector<double> residuals;
  residuals.reserve(set.count());
  for (std::size_t j = 0; j < set.count(); ++j) {
    Field dt_A = (1.0 / (2.0 * delta_t)) * (plus.amplitudes[j] - minus.amplitudes[j]);
    Field res = std::move(dt_A);
    for (int a = 0; a < kernel.grid().dimension(); ++a) {
      if (modes.modes[j].k[a] == 0.0) continue;
      res += modes.modes[j].k[a] * to_physical(derivative(set.amplitudes[j], a));
    }
    if (s_nl != 0.0) {
      const Field& A = set.amplitudes[j];
      for (std::size_t i = 0; i < res.size(); ++i)
        res[i] += Complex(0.0, s_nl) * v_eff[i].real() * A[i];
    }
    residuals.push_back(linf_norm(res));
  }
  return residuals;
}

}  // namespace hwkb
