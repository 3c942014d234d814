// Grid construction, transform convention, multiplier calculus and exact
// spectral translation.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "hwkb/checks.hpp"
#include "hwkb/diagnostics.hpp"
#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"

using namespace hwkb;

namespace {

GridPtr grid_1d(int n, double length) {
  return make_grid(GridSpec{1, n, length});
}

Field gaussian_1d(const GridPtr& g, double center, double width) {
  Field f(g, Representation::physical);
  const double L = g->box_length();
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double x = g->coordinate(i)[0];
    double q = 0.0;
    for (int p = -2; p <= 2; ++p) {
      const double dx = x - center - p * L;
      q += std::exp(-0.5 * dx * dx / (width * width));
    }
    f[i] = q;
  }
  return f;
}

}  // namespace

TEST_CASE("grid lattice arithmetic") {
  const auto g = grid_1d(8, kTwoPi);
  CHECK(g->spacing() == Catch::Approx(kTwoPi / 8));
  CHECK(g->freq_spacing() == Catch::Approx(1.0));
  CHECK(g->node(0) == Catch::Approx(-kPi));
  CHECK(g->node(1) == Catch::Approx(-kPi + kTwoPi / 8));
  // frequencies in FFT storage order: 0..3, then -4..-1
  CHECK(g->freq(0) == 0.0);
  CHECK(g->freq(3) == Catch::Approx(3.0));
  CHECK(g->freq(4) == Catch::Approx(-4.0));
  CHECK(g->freq(7) == Catch::Approx(-1.0));

  const auto g2 = make_grid(GridSpec{2, 4, 4.0});
  CHECK(g2->freq_spacing() == Catch::Approx(kTwoPi / 4));
  CHECK(g2->size() == 16);

  CHECK_THROWS_AS(make_grid(GridSpec{1, 6, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridSpec{1, 8, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(GridSpec{4, 8, 1.0}), std::invalid_argument);
}

TEST_CASE("forward transform of trivial data") {
  const auto g = grid_1d(64, kTwoPi);

  SECTION("constant function concentrates at xi = 0") {
    Field f(g, Representation::physical);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0;
    const Field spec = transform(f, Direction::forward);
    CHECK(std::abs(spec[0] - Complex(g->box_length() / std::sqrt(kTwoPi), 0.0)) < 1e-12);
    for (std::size_t i = 1; i < spec.size(); ++i) CHECK(std::abs(spec[i]) < 1e-12);
  }

  SECTION("pure lattice mode has a single coefficient") {
    const int m = 3;
    const Field f = plane_wave(g, Vec{static_cast<double>(m), 0.0, 0.0});
    const Field spec = transform(f, Direction::forward);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      if (g->frequency(i)[0] == m) {
        CHECK(std::abs(spec[i] - Complex(g->box_length() / std::sqrt(kTwoPi), 0.0)) < 1e-11);
      } else {
        CHECK(std::abs(spec[i]) < 1e-11);
      }
    }
  }

  SECTION("representation tag mismatch is rejected") {
    Field bad(g, Representation::spectral);
    CHECK_THROWS_AS(transform(bad, Direction::forward), std::invalid_argument);
    Field p(g, Representation::physical);
    CHECK_THROWS_AS(transform(p, Direction::inverse), std::invalid_argument);
  }
}

TEST_CASE("wrapped Gaussian matches the analytic transform") {
  // e^{-x^2/2} transforms to e^{-xi^2/2} under the convention in use.
  const auto g = grid_1d(1024, 32.0 * kPi);
  const Field f = gaussian_1d(g, 0.0, 1.0);
  const Field spec = transform(f, Direction::forward);
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double xi = g->frequency(i)[0];
    worst = std::max(worst, std::abs(spec[i] - Complex(std::exp(-0.5 * xi * xi), 0.0)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("round trip and Parseval") {
  const auto g = grid_1d(256, 10.0);
  CheckRng rng(11);

  for (int c = 0; c < 100; ++c) {
    const Field f = random_band_limited(rng, g, 60);
    const Field back = transform(transform(f, Direction::forward), Direction::inverse);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      num = std::max(num, std::abs(back[i] - f[i]));
      den = std::max(den, std::abs(f[i]));
    }
    CHECK(num <= 1e-12 * std::max(1.0, den));

    const double phys = l2_norm(f);
    const double spec = l2_norm(transform(f, Direction::forward));
    CHECK(std::abs(phys - spec) <= 1e-10 * phys);
  }
}

TEST_CASE("multiplier calculus") {
  const auto g = grid_1d(128, kTwoPi);
  const int m = 5;
  const Field f = plane_wave(g, Vec{static_cast<double>(m), 0.0, 0.0});

  SECTION("Laplacian multiplier is diagonal on pure modes") {
    const Field lap = laplacian(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(lap[i] - Complex(-double(m) * m) * f[i]));
    CHECK(worst < 1e-10);
  }

  SECTION("free-group multiplier composes to the identity") {
    const double t = 0.37, eps = 0.25;
    auto group = [&](double sign) {
      return [sign, t, eps](const Vec& xi) {
        return std::polar(1.0, sign * 0.5 * t * eps * norm_sq(xi));
      };
    };
    CheckRng rng(3);
    const Field h = random_band_limited(rng, g, 30);
    const Field back = apply_multiplier(apply_multiplier(h, group(1.0)), group(-1.0));
    CHECK(linf_norm(back - h) < 1e-12);
  }

  SECTION("identity multiplier is bit-exact in spectral representation") {
    CheckRng rng(4);
    const Field h = to_spectral(random_band_limited(rng, g, 30));
    const Field same = apply_multiplier(h, [](const Vec&) { return Complex(1.0, 0.0); },
                                        Representation::spectral);
    for (std::size_t i = 0; i < h.size(); ++i) {
      CHECK(same[i].real() == h[i].real());
      CHECK(same[i].imag() == h[i].imag());
    }
  }

  SECTION("non-finite multiplier is rejected") {
    CHECK_THROWS_AS(apply_multiplier(f, [](const Vec& xi) {
      return Complex(1.0 / norm_sq(xi), 0.0);  // infinite at xi = 0
    }), std::runtime_error);
  }

  SECTION("multiplier action is linear") {
    CheckRng rng(5);
    const Field a = random_band_limited(rng, g, 30);
    const Field b = random_band_limited(rng, g, 30);
    const Complex ca(0.7, -0.2), cb(-0.4, 1.1);
    auto mult = [](const Vec& xi) { return Complex(std::cos(xi[0]), 0.3 * xi[0]); };
    const Field lhs = apply_multiplier(ca * a + cb * b, mult);
    const Field rhs = ca * apply_multiplier(a, mult) + cb * apply_multiplier(b, mult);
    CHECK(linf_norm(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("spectral translation") {
  const auto g = grid_1d(1024, 32.0 * kPi);

  SECTION("full period is the identity") {
    CheckRng rng(6);
    const Field f = random_band_limited(rng, g, 100);
    CHECK(linf_norm(translate(f, g->box_length()) - f) < 1e-12);
  }

  SECTION("one-cell shift equals the cyclic index shift") {
    CheckRng rng(7);
    const Field f = random_band_limited(rng, g, 400);
    const Field s = translate(f, g->spacing());
    const std::size_t n = f.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(s[i] - f[(i + n - 1) % n]));
    CHECK(worst < 1e-12);
  }

  SECTION("wrapped Gaussian against the shifted closed form") {
    const Field f = gaussian_1d(g, 0.0, 1.0);
    const Field s = translate(f, 0.3);
    const Field ref = gaussian_1d(g, 0.3, 1.0);
    CHECK(linf_norm(s - ref) < 1e-8);
  }

  SECTION("translate composed with its inverse") {
    CheckRng rng(8);
    const Field f = random_band_limited(rng, g, 100);
    const Vec v{1.2345, 0.0, 0.0};
    CHECK(linf_norm(translate(translate(f, v), Vec{-v[0], 0.0, 0.0}) - f) < 1e-10);
  }

  SECTION("non-finite shift is rejected") {
    const Field f = gaussian_1d(g, 0.0, 1.0);
    CHECK_THROWS_AS(translate(f, Vec{std::nan(""), 0.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("two-dimensional transforms") {
  const auto g = make_grid(GridSpec{2, 32, kTwoPi});

  SECTION("pure mode concentrates on one lattice point") {
    const Field f = plane_wave(g, Vec{3.0, -2.0, 0.0});
    const Field spec = transform(f, Direction::forward);
    const double expected = g->box_length() * g->box_length() / kTwoPi;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const Vec xi = g->frequency(i);
      if (xi[0] == 3.0 && xi[1] == -2.0) {
        CHECK(std::abs(spec[i] - Complex(expected, 0.0)) < 1e-11);
      } else {
        CHECK(std::abs(spec[i]) < 1e-11);
      }
    }
  }

  SECTION("Laplacian eigenvalue and translation") {
    const Field f = plane_wave(g, Vec{3.0, -2.0, 0.0});
    const Field lap = laplacian(f);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(lap[i] + 13.0 * f[i]));
    CHECK(worst < 1e-10);

    const Vec v{0.3, -0.2, 0.0};
    const Field moved = translate(f, v);
    double worst_shift = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec x = g->coordinate(i);
      const Complex ref = std::polar(1.0, 3.0 * (x[0] - v[0]) - 2.0 * (x[1] - v[1]));
      worst_shift = std::max(worst_shift, std::abs(moved[i] - ref));
    }
    CHECK(worst_shift < 1e-10);
  }
}

TEST_CASE("Wiener norm embeds the sup norm") {
  const auto g = grid_1d(256, 10.0);
  CheckRng rng(9);
  for (int c = 0; c < 20; ++c) {
    const Field f = random_band_limited(rng, g, 60);
    CHECK(wiener_norm(f) >= linf_norm(f) - 1e-12);
  }
}
