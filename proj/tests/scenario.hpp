#pragma once

// Canonical two-mode test scenario shared by the suites: d = 1, carriers
// k = {-1, 2} (minimum gap 3), unit-width wrapped Gaussians centered at 0
// and 2 with weights 1 and 0.8 + 0.3i, exponential kernel e^{-|x|} on the
// box of length 32*pi.

#include "hwkb/harness.hpp"
#include "hwkb/kernels.hpp"
#include "hwkb/wkb.hpp"

namespace scenario {

inline hwkb::ModeSpec modes() {
  hwkb::ModeSpec m;
  m.modes.push_back({hwkb::Vec{-1.0, 0.0, 0.0},
                     hwkb::GaussianProfile{hwkb::Vec{0.0, 0.0, 0.0}, 1.0, {1.0, 0.0}}});
  m.modes.push_back({hwkb::Vec{2.0, 0.0, 0.0},
                     hwkb::GaussianProfile{hwkb::Vec{2.0, 0.0, 0.0}, 1.0, {0.8, 0.3}}});
  return m;
}

inline hwkb::KernelSpec kernel_spec() { return hwkb::Exponential1d{1.0, 1.0}; }

inline constexpr double kBoxLength = 32.0 * hwkb::kPi;

inline hwkb::SweepConfig sweep_config(double alpha, hwkb::AmplitudeVariant variant,
                                      std::vector<double> epsilons) {
  hwkb::SweepConfig cfg;
  cfg.scenario = "scenario_a";
  cfg.dimension = 1;
  cfg.alpha = alpha;
  cfg.variant = variant;
  cfg.epsilons = std::move(epsilons);
  cfg.modes = modes();
  cfg.kernel = kernel_spec();
  cfg.T = 0.5;
  cfg.snapshot_count = 11;
  cfg.grid.box_length = kBoxLength;
  cfg.grid.n_max = 32768;
  cfg.eta = 2e-3;
  return cfg;
}

inline hwkb::GridPtr grid_for(const hwkb::SweepConfig& cfg, double eps) {
  return hwkb::make_grid(hwkb::resolve_grid(cfg, eps));
}

// CSV with the wall-clock column blanked, for byte comparisons between
// sweeps (runtime is the one column that is not a deterministic function
// of the configuration).
inline std::string strip_runtime_column(const std::string& csv) {
  std::string out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string::npos) eol = csv.size();
    std::string line = csv.substr(pos, eol - pos);
    const std::size_t last_comma = line.rfind(',');
    if (last_comma != std::string::npos) line.resize(last_comma);
    out += line + "\n";
    pos = eol + 1;
  }
  return out;
}

}  // namespace scenario
