#pragma once

// Randomized property suites for the Wiener-algebra calculus, the kernel
// operators and the WKB construction. Each check reports its worst
// violation; a suite passes when every check stays within its tolerance.
// The random stream is a fixed-seed mt19937_64 mapped to uniforms directly
// from the raw 64-bit output, so results are reproducible everywhere.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hwkb/diagnostics.hpp"
#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"
#include "hwkb/kernels.hpp"
#include "hwkb/wkb.hpp"

namespace hwkb {

class CheckRng {
 public:
  explicit CheckRng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int a, int b) { return a + static_cast<int>(eng_() % static_cast<std::uint64_t>(b - a + 1)); }
  Complex unit_complex() { return std::polar(1.0, kTwoPi * uniform()); }

 private:
  std::mt19937_64 eng_;
};

struct CheckResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass() const { return failures == 0; }
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> results;
  bool pass() const {
    for (const auto& r : results)
      if (!r.pass()) return false;
    return true;
  }
};

// Random field with spectrum supported on |m| <= band bins per axis,
// normalized to unit Wiener norm.
inline Field random_band_limited(CheckRng& rng, const GridPtr& grid, int band) {
  Field spec(grid, Representation::spectral);
  const int n = grid->points_per_axis();
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto idx = grid->decompose(i);
    bool inside = true;
    for (int a = 0; a < grid->dimension(); ++a) {
      const int signed_idx = idx[a] < n / 2 ? idx[a] : idx[a] - n;
      if (std::abs(signed_idx) > band) inside = false;
    }
    if (inside) spec[i] = rng.uniform(0.1, 1.0) * rng.unit_complex();
  }
  const double w = wiener_norm(spec);
  return to_physical((1.0 / w) * spec);
}

namespace detail {

inline void tally(CheckResult& r, double violation) {
  ++r.checks;
  r.worst = std::max(r.worst, violation);
  if (violation > r.tolerance) ++r.failures;
}

}  // namespace detail

// Wiener algebra properties: submultiplicativity, unitarity of
// the free group, the trilinear convolution estimate and the shifted-band
// norm identity.
inline SuiteResult wiener_suite(const GridPtr& grid, const Kernel& kernel, int n_checks,
                                std::uint64_t seed = 0x5eedULL) {
  CheckRng rng(seed);
  SuiteResult suite;
  suite.suite = "wiener";
  const int band = grid->points_per_axis() / 8;
  const double conv_sup = kernel.convolution_multiplier_sup();

  CheckResult submult{"submultiplicativity ||fg|| <= ||f|| ||g||", 0, 0, 0.0, 1e-9};
  CheckResult unitary{"free-group unitarity on W", 0, 0, 0.0, 1e-12};
  CheckResult trilinear{"trilinear ||(K*(uv))w|| bound", 0, 0, 0.0, 1e-9};
  CheckResult shift_eq{"shifted-band norm equality", 0, 0, 0.0, 1e-9};
  CheckResult shift_le{"shifted-band norm bound", 0, 0, 0.0, 1e-9};

  for (int c = 0; c < n_checks; ++c) {
    const Field f = random_band_limited(rng, grid, band);
    const Field g = random_band_limited(rng, grid, band);
    detail::tally(submult, wiener_norm(pointwise(f, g)) - wiener_norm(f) * wiener_norm(g));

    const double t = rng.uniform(-2.0, 2.0);
    const double eps = rng.uniform(0.05, 1.0);
    const Field uf = apply_multiplier(
        f, [&](const Vec& xi) { return std::polar(1.0, 0.5 * t * eps * norm_sq(xi)); });
    detail::tally(unitary, std::abs(wiener_norm(uf) - wiener_norm(f)));

    const Field w = random_band_limited(rng, grid, band);
    detail::tally(trilinear, wiener_norm(pointwise(convolve(kernel, pointwise(f, g)), w)) -
                                 conv_sup * wiener_norm(f) * wiener_norm(g) * wiener_norm(w));

    // Disjoint lattice shifts: equality. The shifts are multiples of the
    // frequency spacing with gaps larger than twice the band.
    {
      const int n_modes = rng.uniform_int(2, 3);
      std::vector<Field> parts;
      std::vector<int> bins;
      int bin = rng.uniform_int(-band, band);
      for (int j = 0; j < n_modes; ++j) {
        parts.push_back(random_band_limited(rng, grid, band / 2));
        bins.push_back(bin);
        bin += band + 2 + rng.uniform_int(0, band / 2);
      }
      Field sum(grid, Representation::physical);
      double norm_sum = 0.0;
      for (int j = 0; j < n_modes; ++j) {
        const Vec kshift{bins[j] * grid->freq_spacing(), 0.0, 0.0};
        sum += pointwise(parts[j], plane_wave(grid, kshift));
        norm_sum += wiener_norm(parts[j]);
      }
      detail::tally(shift_eq, std::abs(wiener_norm(sum) - norm_sum));
    }

    // Arbitrary (possibly overlapping) shifts: one-sided bound.
    {
      const Vec k1{rng.uniform_int(-band, band) * grid->freq_spacing(), 0.0, 0.0};
      const Vec k2{rng.uniform_int(-band, band) * grid->freq_spacing(), 0.0, 0.0};
      const Field sum =
          pointwise(f, plane_wave(grid, k1)) + pointwise(g, plane_wave(grid, k2));
      detail::tally(shift_le, wiener_norm(sum) - (wiener_norm(f) + wiener_norm(g)));
    }
  }

  suite.results = {submult, unitary, trilinear, shift_eq, shift_le};
  return suite;
}

// Kernel operator properties: hypothesis suprema against the configured
// bound, convolution/translation commutation, realness, and the Young-type
// multiplier bound.
inline SuiteResult kernel_suite(const Kernel& kernel, double hypothesis_bound, int n_checks,
                                std::uint64_t seed = 0xbeefULL) {
  CheckRng rng(seed);
  SuiteResult suite;
  suite.suite = "kernel";
  const GridPtr grid = kernel.grid_ptr();
  const int band = grid->points_per_axis() / 8;
  const double conv_sup = kernel.convolution_multiplier_sup();

  CheckResult hypothesis{"hypothesis (1+|xi|)|Khat| bounded", 0, 0, 0.0, 0.0};
  const auto report = verify_kernel_hypothesis(kernel, hypothesis_bound);
  hypothesis.checks = 1;
  hypothesis.worst = report.sup_one_plus_xi_khat;
  hypothesis.tolerance = hypothesis_bound;
  if (!(report.khat_bounded && report.decay_ok && report.gradient_ok)) hypothesis.failures = 1;

  CheckResult commute{"convolution commutes with translation", 0, 0, 0.0, 1e-10};
  CheckResult realness{"K * (real f) is real", 0, 0, 0.0, 1e-10};
  CheckResult young{"Young bound ||K*(uv)|| <= sup|M_K| ||uv||", 0, 0, 0.0, 1e-9};

  for (int c = 0; c < n_checks; ++c) {
    const Field f = random_band_limited(rng, grid, band);
    Vec v{0.0, 0.0, 0.0};
    for (int a = 0; a < grid->dimension(); ++a)
      v[a] = rng.uniform(-0.25, 0.25) * grid->box_length();
    const Field lhs = convolve(kernel, translate(f, v));
    const Field rhs = translate(convolve(kernel, f), v);
    detail::tally(commute, linf_norm(lhs - rhs));

    const Field fr = real_part(f);
    detail::tally(realness,
                  max_imag(convolve(kernel, fr)) / std::max(1e-300, wiener_norm(fr)));

    const Field g = random_band_limited(rng, grid, band);
    const Field fg = pointwise(f, g);
    detail::tally(young, wiener_norm(convolve(kernel, fg)) - conv_sup * wiener_norm(fg));
  }

  suite.results = {hypothesis, commute, realness, young};
  return suite;
}

// WKB construction invariants on a concrete mode set: the eikonal identity
// of the plane-wave phases, modulus transport against the closed-form
// shifted profile, per-mode mass conservation, the Wiener bound on the
// assembled wave, and single-mode gauge consistency between variants.
inline SuiteResult wkb_suite(const ModeSpec& modes, const Kernel& kernel, double eps, double alpha,
                             AmplitudeVariant variant, int quadrature_nodes = 8) {
  SuiteResult suite;
  suite.suite = "wkb";
  const GridPtr grid = kernel.grid_ptr();

  CheckResult eikonal{"eikonal identity d_t phi + |grad phi|^2/2 = 0", 0, 0, 0.0, 0.0};
  for (const Mode& m : modes.modes) {
    const double dt_phi = -0.5 * norm_sq(m.k);
    const double grad_sq = 0.5 * norm_sq(m.k);
    detail::tally(eikonal, std::abs(dt_phi + grad_sq));
  }

  CheckResult modulus{"modulus transport |A_j| = |a_j(.-t k_j)|", 0, 0, 0.0, 1e-10};
  CheckResult mass{"per-mode mass ||A_j||_L2 = ||a_j||_L2", 0, 0, 0.0, 1e-10};
  CheckResult uapp_norm{"||u_app||_W <= ||A||_A", 0, 0, 0.0, 1e-10};

  for (double t : {0.0, 0.25, 0.5}) {
    const AmplitudeSet set =
        build_amplitudes(modes, t, kernel, alpha, variant, eps, quadrature_nodes);
    for (std::size_t j = 0; j < modes.count(); ++j) {
      // closed-form shifted profile where available (Gaussian modes)
      if (const auto* gp = std::get_if<GaussianProfile>(&modes.modes[j].profile)) {
        Mode shifted = modes.modes[j];
        GaussianProfile moved = *gp;
        moved.center = moved.center + t * modes.modes[j].k;
        shifted.profile = moved;
        const Field ref = sample_profile(shifted, grid);
        double worst = 0.0;
        const Field& A = set.amplitudes[j];
        for (std::size_t i = 0; i < A.size(); ++i)
          worst = std::max(worst, std::abs(std::abs(A[i]) - std::abs(ref[i])));
        detail::tally(modulus, worst);
      }
      const double m0 = l2_norm(sample_profile(modes.modes[j], grid));
      detail::tally(mass, std::abs(l2_norm(set.amplitudes[j]) - m0) / std::max(1e-300, m0));
    }
    const Field u_app = assemble_u_app(set, modes, t, eps);
    detail::tally(uapp_norm, wiener_norm(u_app) - amplitude_norm(set));
  }

  CheckResult gauge{"single-mode |u_app| gauge consistency", 0, 0, 0.0, 1e-12};
  {
    ModeSpec single;
    single.modes.push_back(modes.modes[0]);
    for (double t : {0.25, 0.5}) {
      const auto std_set = build_amplitudes(single, t, kernel, alpha,
                                            AmplitudeVariant::standard, eps, quadrature_nodes);
      const auto mod_set = build_amplitudes(single, t, kernel, alpha,
                                            AmplitudeVariant::epsilon_modulated, eps,
                                            quadrature_nodes);
      const Field a = assemble_u_app(std_set, single, t, eps);
      const Field b = assemble_u_app(mod_set, single, t, eps);
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(a[i]) - std::abs(b[i])));
      detail::tally(gauge, worst);
    }
  }

  suite.results = {eikonal, modulus, mass, uapp_norm, gauge};
  return suite;
}

}  // namespace hwkb
