// Wiener-norm calculus, residual terms of the ansatz and the
// high-frequency averaging bound on the oscillatory remainder.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "hwkb/checks.hpp"
#include "hwkb/diagnostics.hpp"
#include "hwkb/wkb.hpp"
#include "scenario.hpp"

using namespace hwkb;

TEST_CASE("wiener norm") {
  SECTION("pure mode") {
    const auto g = make_grid(GridSpec{1, 128, kTwoPi});
    const Complex a(0.3, -0.4);
    Field f = a * plane_wave(g, Vec{5.0, 0.0, 0.0});
    CHECK(wiener_norm(f) == Catch::Approx(std::abs(a)).epsilon(1e-12));
  }

  SECTION("wrapped Gaussian matches the continuum value") {
    // ||e^{-x^2/2}||_W = 1 under the convention in use
    const auto g = make_grid(GridSpec{1, 2048, 32.0 * kPi});
    Field f(g, Representation::physical);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double x = g->coordinate(i)[0];
      f[i] = std::exp(-0.5 * x * x);
    }
    CHECK(std::abs(wiener_norm(f) - 1.0) < 1e-6);
  }

  SECTION("submultiplicativity on random band-limited pairs") {
    const auto g = make_grid(GridSpec{1, 256, 10.0});
    CheckRng rng(21);
    for (int c = 0; c < 100; ++c) {
      const Field f = random_band_limited(rng, g, 50);
      const Field h = random_band_limited(rng, g, 50);
      CHECK(wiener_norm(pointwise(f, h)) <= wiener_norm(f) * wiener_norm(h) + 1e-9);
    }
  }
}

TEST_CASE("amplitude family norm") {
  const double eps = 0.125;
  const auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
  const auto g = scenario::grid_for(cfg, eps);
  const Kernel k(scenario::kernel_spec(), g);

  SECTION("single mode reduces to the Wiener norm") {
    ModeSpec one;
    one.modes.push_back(cfg.modes.modes[0]);
    const auto set = build_amplitudes(one, 0.2, k, 1.0, AmplitudeVariant::standard, eps);
    CHECK(amplitude_norm(set) == Catch::Approx(wiener_norm(set.amplitudes[0])));
  }

  SECTION("homogeneity under scaling") {
    auto set = build_amplitudes(cfg.modes, 0.2, k, 1.0, AmplitudeVariant::standard, eps);
    const double base = amplitude_norm(set);
    const Complex c(1.5, -2.0);
    for (Field& A : set.amplitudes) A = c * A;
    CHECK(amplitude_norm(set) == Catch::Approx(std::abs(c) * base).epsilon(1e-12));
  }

  SECTION("bounds the assembled wave at random times") {
    CheckRng rng(5);
    for (int c = 0; c < 10; ++c) {
      const double t = rng.uniform(0.0, 0.5);
      const auto set = build_amplitudes(cfg.modes, t, k, 1.0, AmplitudeVariant::standard, eps);
      CHECK(wiener_norm(assemble_u_app(set, cfg.modes, t, eps)) <= amplitude_norm(set) + 1e-10);
    }
  }
}

TEST_CASE("residual terms") {
  SECTION("single mode has no oscillatory cross term") {
    const double eps = 0.125;
    auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
    ModeSpec one;
    one.modes.push_back(cfg.modes.modes[0]);
    cfg.modes = one;
    const auto g = scenario::grid_for(cfg, eps);
    const Kernel k(scenario::kernel_spec(), g);
    const auto set = build_amplitudes(one, 0.25, k, 1.0, AmplitudeVariant::standard, eps);
    const auto rep = residual_terms(set, one, k, eps, 1.0);
    CHECK(rep.yr_wiener == 0.0);
    CHECK(linf_norm(rep.yr) == 0.0);
  }

  SECTION("zero kernel leaves only the dispersive term") {
    const double eps = 0.125;
    const auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
    const auto g = scenario::grid_for(cfg, eps);
    const Kernel k(ZeroKernel{}, g);
    const auto set = build_amplitudes(cfg.modes, 0.25, k, 1.0, AmplitudeVariant::standard, eps);
    const auto rep = residual_terms(set, cfg.modes, k, eps, 1.0);
    CHECK(rep.y_wiener == 0.0);
    CHECK(rep.yr_wiener == 0.0);
    CHECK(linf_norm(rep.remainder - eps * eps * rep.x2) < 1e-15);
  }

  SECTION("Wiener estimates of the dispersive and averaged terms") {
    const double eps = 1.0 / 32.0;
    const auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
    const auto g = scenario::grid_for(cfg, eps);
    const Kernel k(scenario::kernel_spec(), g);
    const auto set = build_amplitudes(cfg.modes, 0.25, k, 1.0, AmplitudeVariant::standard, eps);
    const auto rep = residual_terms(set, cfg.modes, k, eps, 1.0);

    const double a_norm = amplitude_norm(set);
    CHECK(rep.x2_wiener <= 0.5 * laplacian_amplitude_norm(set, cfg.modes) + 1e-9);
    CHECK(rep.y_wiener <=
          k.convolution_multiplier_sup() * a_norm * a_norm * a_norm + 1e-9);
  }

  SECTION("remainder combinations per variant") {
    const double eps = 0.125;
    const auto cfg = scenario::sweep_config(1.5, AmplitudeVariant::standard, {eps});
    const auto g = scenario::grid_for(cfg, eps);
    const Kernel k(scenario::kernel_spec(), g);

    const auto std_set = build_amplitudes(cfg.modes, 0.25, k, 1.5, AmplitudeVariant::standard, eps);
    const auto std_rep = residual_terms(std_set, cfg.modes, k, eps, 1.5);
    Field expect = eps * eps * std_rep.x2 + std::pow(eps, 1.5) * (std_rep.y + std_rep.yr);
    CHECK(linf_norm(std_rep.remainder - expect) < 1e-15);

    const auto mod_set =
        build_amplitudes(cfg.modes, 0.25, k, 1.5, AmplitudeVariant::epsilon_modulated, eps);
    const auto mod_rep = residual_terms(mod_set, cfg.modes, k, eps, 1.5);
    expect = eps * eps * mod_rep.x2 + std::pow(eps, 1.5) * mod_rep.yr;
    CHECK(linf_norm(mod_rep.remainder - expect) < 1e-15);
  }
}

TEST_CASE("oscillatory remainder bound") {
  SECTION("ratio stays below one and is stable under eps halving") {
    const double t = 0.25;
    std::vector<double> ratios;
    for (double eps : {0.125, 0.0625, 0.03125}) {
      const auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
      const auto g = scenario::grid_for(cfg, eps);
      const Kernel k(scenario::kernel_spec(), g);
      const auto set = build_amplitudes(cfg.modes, t, k, 1.0, AmplitudeVariant::standard, eps);
      const auto rep = residual_terms(set, cfg.modes, k, eps, 1.0);
      const double ratio = yr_bound_check(rep, set, cfg.modes, k, eps);
      INFO("eps = " << eps << " ratio = " << ratio);
      CHECK(ratio <= 1.0 + 1e-6);
      CHECK(ratio > 0.0);
      ratios.push_back(ratio);
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) {
      const double step = ratios[i] / ratios[i - 1];
      INFO("halving step " << i << " ratio change " << step);
      CHECK(step >= 0.3);
      CHECK(step <= 3.0);
    }
  }

  SECTION("zero kernel gives a zero ratio") {
    const double eps = 0.125;
    const auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
    const auto g = scenario::grid_for(cfg, eps);
    const Kernel k(ZeroKernel{}, g);
    const auto set = build_amplitudes(cfg.modes, 0.25, k, 1.0, AmplitudeVariant::standard, eps);
    const auto rep = residual_terms(set, cfg.modes, k, eps, 1.0);
    CHECK(yr_bound_check(rep, set, cfg.modes, k, eps) == 0.0);
  }

  SECTION("fewer than two modes is vacuous") {
    const double eps = 0.125;
    auto cfg = scenario::sweep_config(1.0, AmplitudeVariant::standard, {eps});
    ModeSpec one;
    one.modes.push_back(cfg.modes.modes[0]);
    const auto g = scenario::grid_for(cfg, eps);
    const Kernel k(scenario::kernel_spec(), g);
    const auto set = build_amplitudes(one, 0.25, k, 1.0, AmplitudeVariant::standard, eps);
    const auto rep = residual_terms(set, one, k, eps, 1.0);
    CHECK_THROWS_AS(yr_bound_check(rep, set, one, k, eps), std::invalid_argument);
  }
}

TEST_CASE("sup error") {
  const auto g = make_grid(GridSpec{1, 256, 10.0});
  CheckRng rng(31);
  const Field u = random_band_limited(rng, g, 50);

  SECTION("identical fields") { CHECK(sup_error(u, u) == 0.0); }

  SECTION("constant offset") {
    Field v = u;
    const Complex c(0.25, -0.6);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c;
    CHECK(sup_error(u, v) == Catch::Approx(std::abs(c)).epsilon(1e-12));
  }

  SECTION("Wiener norm dominates the sup error") {
    const Field v = random_band_limited(rng, g, 50);
    CHECK(wiener_norm(u - v) >= sup_error(u, v) - 1e-12);
  }

  SECTION("grid mismatch is rejected") {
    const auto g2 = make_grid(GridSpec{1, 128, 10.0});
    CHECK_THROWS_AS(sup_error(u, Field(g2, Representation::physical)), std::invalid_argument);
  }
}

TEST_CASE("wiener algebra property suite") {
  const auto g = make_grid(GridSpec{1, 256, 32.0 * kPi});
  const Kernel k(scenario::kernel_spec(), g);
  const auto suite = wiener_suite(g, k, 100);
  for (const auto& r : suite.results) {
    INFO(r.name << " worst=" << r.worst);
    CHECK(r.failures == 0);
  }
}
