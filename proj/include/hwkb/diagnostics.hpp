#pragma once

// Discrete Wiener-algebra calculus and the residual terms of the WKB
// approximation.
//
// The discrete Wiener norm is the l1 sum of Fourier-series coefficients,
// ||f||_W = wiener_weight * sum_m |F(xi_m)| (see grid.hpp). Under this
// normalization:
//   * a pure mode a e^{i m.x} has norm |a|,
//   * ||f g||_W <= ||f||_W ||g||_W with constant exactly 1,
//   * sup |f| <= ||f||_W (embedding constant 1),
//   * ||K*f||_W <= convolution_multiplier_sup(K) * ||f||_W.
//
// Residual terms of the ansatz u_app = sum_j A_j e^{i phi_j / eps}:
//   X2  = 1/2 sum_j e^{i phi_j/eps} Lap A_j
//   Y   = -   sum_j e^{i phi_j/eps} (K * sum_l |A_l|^2) A_j
//   Y_R = -   sum_j e^{i phi_j/eps} (K * sum_{l != m} A_l conj(A_m)
//                                     e^{i(phi_l - phi_m)/eps}) A_j
// combined into the remainder
//   eps^2 X2 + eps Y_R                 (alpha = 1, standard)
//   eps^2 X2 + eps^alpha (Y + Y_R)     (alpha > 1, standard)
//   eps^2 X2 + eps^alpha Y_R           (epsilon_modulated, any alpha >= 1).

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"
#include "hwkb/kernels.hpp"
#include "hwkb/wkb.hpp"

namespace hwkb {

inline double wiener_norm(const Field& f) {
  const Field spec = to_spectral(f);
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) s += std::abs(spec[i]);
  return f.grid().wiener_weight() * s;
}

struct NormReport {
  double wiener = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::vector<double> per_mode_wiener;
};

inline NormReport make_norm_report(const Field& f) {
  NormReport r;
  r.wiener = wiener_norm(f);
  r.l2 = l2_norm(f);
  r.linf = linf_norm(f);
  return r;
}

inline NormReport make_norm_report(const Field& f, const AmplitudeSet& set) {
  NormReport r = make_norm_report(f);
  for (const Field& A : set.amplitudes) r.per_mode_wiener.push_back(wiener_norm(A));
  return r;
}

// ||A||_A = sum_j ||A_j||_W.
inline double amplitude_norm(const AmplitudeSet& set) {
  double s = 0.0;
  for (const Field& A : set.amplitudes) s += wiener_norm(A);
  return s;
}

inline std::vector<double> per_mode_wiener(const AmplitudeSet& set) {
  std::vector<double> out;
  out.reserve(set.count());
  for (const Field& A : set.amplitudes) out.push_back(wiener_norm(A));
  return out;
}

namespace detail {

// Spatial derivatives of A_j = a~ e^{i s S} by the product rule, from
// spectrally differentiated factors (a~ = translated profile). Composites
// like e^{iS} are never differentiated directly.
struct AmplitudeDerivatives {
  std::vector<Field> grad;  // per axis, physical
  Field lap;                // physical
};

inline AmplitudeDerivatives amplitude_derivatives(const AmplitudeSet& set, std::size_t j,
                                                  const Grid& grid) {
  const double s = set.phase_scale;
  const Field& a = set.translated[j];
  const Field& S = set.slow_phase[j];
  const int dim = grid.dimension();

  std::vector<Field> da(dim), dS(dim);
  for (int ax = 0; ax < dim; ++ax) {
    da[ax] = to_physical(derivative(a, ax));
    if (s != 0.0) dS[ax] = to_physical(derivative(S, ax));
  }
  const Field lap_a = to_physical(laplacian(a));
  Field lap_S = (s != 0.0) ? to_physical(laplacian(S)) : Field();

  AmplitudeDerivatives out;
  out.grad.reserve(dim);
  for (int ax = 0; ax < dim; ++ax) {
    Field gax(a.grid_ptr(), Representation::physical);
    for (std::size_t i = 0; i < gax.size(); ++i) {
      Complex val = da[ax][i];
      if (s != 0.0) val += Complex(0.0, s) * a[i] * dS[ax][i].real();
      const Complex phase = (s != 0.0) ? std::polar(1.0, s * S[i].real()) : Complex(1.0, 0.0);
      gax[i] = phase * val;
    }
    out.grad.push_back(std::move(gax));
  }

  Field lap(a.grid_ptr(), Representation::physical);
  for (std::size_t i = 0; i < lap.size(); ++i) {
    Complex val = lap_a[i];
    if (s != 0.0) {
      Complex cross{0.0, 0.0};
      double grad_S_sq = 0.0;
      for (int ax = 0; ax < dim; ++ax) {
        cross += da[ax][i] * dS[ax][i].real();
        grad_S_sq += dS[ax][i].real() * dS[ax][i].real();
      }
      val += Complex(0.0, 2.0 * s) * cross +
             a[i] * (Complex(0.0, s) * lap_S[i].real() - s * s * grad_S_sq);
    }
    const Complex phase = (s != 0.0) ? std::polar(1.0, s * S[i].real()) : Complex(1.0, 0.0);
    lap[i] = phase * val;
  }
  out.lap = std::move(lap);
  return out;
}

}  // namespace detail

// sum_j sum_axes ||d_axis A_j||_W, the gradient A-norm of the remainder bound.
inline double gradient_amplitude_norm(const AmplitudeSet& set, const ModeSpec& modes) {
  if (set.count() != modes.count())
    throw std::invalid_argument("gradient_amplitude_norm: amplitude/mode count mismatch");
  if (set.count() == 0) return 0.0;
  const Grid& grid = set.amplitudes[0].grid();
  double s = 0.0;
  for (std::size_t j = 0; j < set.count(); ++j) {
    const auto der = detail::amplitude_derivatives(set, j, grid);
    for (const Field& g : der.grad) s += wiener_norm(g);
  }
  return s;
}

// sum_j ||Lap A_j||_W.
inline double laplacian_amplitude_norm(const AmplitudeSet& set, const ModeSpec& modes) {
  if (set.count() != modes.count())
    throw std::invalid_argument("laplacian_amplitude_norm: amplitude/mode count mismatch");
  if (set.count() == 0) return 0.0;
  const Grid& grid = set.amplitudes[0].grid();
  double s = 0.0;
  for (std::size_t j = 0; j < set.count(); ++j)
    s += wiener_norm(detail::amplitude_derivatives(set, j, grid).lap);
  return s;
}

struct ResidualReport {
  Field x2;         // X2, physical
  Field y;          // Y, physical
  Field yr;         // Y_R, physical
  Field remainder;  // per-variant combination
  double x2_wiener = 0.0;
  double y_wiener = 0.0;
  double yr_wiener = 0.0;
  double remainder_wiener = 0.0;
};

inline ResidualReport residual_terms(const AmplitudeSet& set, const ModeSpec& modes,
                                     const Kernel& kernel, double eps, double alpha) {
  if (set.count() != modes.count())
    throw std::invalid_argument("residual_terms: amplitude/mode count mismatch");
  const GridPtr grid = kernel.grid_ptr();
  validate_lattice_compatibility(modes, eps, *grid);
  const double t = set.t;

  // Per-mode carrier samples e^{i phi_j / eps}.
  std::vector<std::vector<Complex>> carrier(set.count());
  for (std::size_t j = 0; j < set.count(); ++j) {
    const Vec kc = (1.0 / eps) * modes.modes[j].k;
    const Complex c = phase_time_factor(modes.modes[j].k, t, eps);
    carrier[j].resize(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i)
      carrier[j][i] = c * std::polar(1.0, dot(kc, grid->coordinate(i)));
  }

  ResidualReport r;
  r.x2 = Field(grid, Representation::physical);
  r.y = Field(grid, Representation::physical);
  r.yr = Field(grid, Representation::physical);

  // X2
  for (std::size_t j = 0; j < set.count(); ++j) {
    const auto der = detail::amplitude_derivatives(set, j, *grid);
    for (std::size_t i = 0; i < grid->size(); ++i)
      r.x2[i] += 0.5 * carrier[j][i] * der.lap[i];
  }

  // Y from the effective potential
  {
    Field rho(grid, Representation::physical);
    for (const Field& A : set.amplitudes) rho += abs_squared(A);
    const Field v = convolve(kernel, rho);
    for (std::size_t j = 0; j < set.count(); ++j)
      for (std::size_t i = 0; i < grid->size(); ++i)
        r.y[i] -= carrier[j][i] * v[i] * set.amplitudes[j][i];
  }

  // Y_R from the oscillatory cross densities
  if (set.count() >= 2) {
    Field cross(grid, Representation::physical);
    for (std::size_t l = 0; l < set.count(); ++l) {
      for (std::size_t m = 0; m < set.count(); ++m) {
        if (l == m) continue;
        const Vec dk = (1.0 / eps) * (modes.modes[l].k - modes.modes[m].k);
        const Complex c = phase_time_factor(modes.modes[l].k, t, eps) *
                          std::conj(phase_time_factor(modes.modes[m].k, t, eps));
        const Field& Al = set.amplitudes[l];
        const Field& Am = set.amplitudes[m];
        for (std::size_t i = 0; i < grid->size(); ++i)
          cross[i] += Al[i] * std::conj(Am[i]) * c * std::polar(1.0, dot(dk, grid->coordinate(i)));
      }
    }
    const Field kc = convolve(kernel, cross);
    for (std::size_t j = 0; j < set.count(); ++j)
      for (std::size_t i = 0; i < grid->size(); ++i)
        r.yr[i] -= carrier[j][i] * kc[i] * set.amplitudes[j][i];
  }

  // Remainder combination
  r.remainder = Field(grid, Representation::physical);
  const double e2 = eps * eps;
  const double ea = std::pow(eps, alpha);
  if (set.variant == AmplitudeVariant::epsilon_modulated) {
    for (std::size_t i = 0; i < grid->size(); ++i)
      r.remainder[i] = e2 * r.x2[i] + ea * r.yr[i];
  } else if (alpha == 1.0) {
    for (std::size_t i = 0; i < grid->size(); ++i)
      r.remainder[i] = e2 * r.x2[i] + eps * r.yr[i];
  } else {
    for (std::size_t i = 0; i < grid->size(); ++i)
      r.remainder[i] = e2 * r.x2[i] + ea * (r.y[i] + r.yr[i]);
  }

  r.x2_wiener = wiener_norm(r.x2);
  r.y_wiener = wiener_norm(r.y);
  r.yr_wiener = wiener_norm(r.yr);
  r.remainder_wiener = wiener_norm(r.remainder);
  return r;
}

// Ratio of ||Y_R||_W against the high-frequency averaging bound
//
//   ||Y_R||_W <= eps * C_K * ||A||_A^2 (||A||_A + ||grad A||_A),
//   C_K = |Lambda|_inf * max(d * sup|xi Khat|, 2 sup|Khat|) * convolution_scale,
//
// with |Lambda|_inf = 1 / min pairwise gap and the suprema taken over the
// frequency lattice. The convolution_scale factor adjusts the kernel
// suprema to the multiplier that actually realizes K* on this grid.
// A ratio <= 1 confirms the bound; it requires at least two modes.
inline double yr_bound_check(const ResidualReport& report, const AmplitudeSet& set,
                             const ModeSpec& modes, const Kernel& kernel, double eps) {
  if (modes.count() < 2)
    throw std::invalid_argument("yr_bound_check: bound is vacuous for fewer than two modes");
  const MinGapReport gaps = check_min_gap(modes);
  const int d = kernel.grid().dimension();
  const double scale = kernel.grid().convolution_scale();
  const double ck = gaps.lambda_sup *
                    std::max(d * scale * kernel.sup_xi_khat(), 2.0 * scale * kernel.sup_khat());
  const double a_norm = amplitude_norm(set);
  const double grad_norm = gradient_amplitude_norm(set, modes);
  const double denom = eps * ck * a_norm * a_norm * (a_norm + grad_norm);
  if (denom == 0.0) return report.yr_wiener == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return report.yr_wiener / denom;
}

// Lattice max of |u - v| (the harness takes the max over snapshot times).
inline double sup_error(const Field& u, const Field& v) {
  require_same_grid(u, v, "sup_error");
  return linf_norm(to_physical(u) - to_physical(v));
}

}  // namespace hwkb
