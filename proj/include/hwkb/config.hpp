#pragma once

// Scenario configuration files: one JSON document per scenario (comments
// allowed) whose keys mirror SweepConfig. See scenarios/ for annotated
// examples and the README for the key reference.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwkb/harness.hpp"

namespace hwkb {

namespace detail {

inline Vec parse_vec(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.empty() || j.size() > 3)
    throw std::runtime_error(std::string("config: ") + what + " must be an array of 1..3 numbers");
  Vec v{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

inline KernelSpec parse_kernel(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "zero") return ZeroKernel{};
  if (family == "constant") return ConstantKernel{j.at("value").get<double>()};
  if (family == "yukawa3d")
    return Yukawa3d{j.value("sign", 1.0), j.at("lambda").get<double>()};
  if (family == "exponential1d")
    return Exponential1d{j.value("sign", 1.0), j.at("lambda").get<double>()};
  throw std::runtime_error("config: unknown kernel family '" + family + "'");
}

}  // namespace detail

inline SweepConfig parse_config(const nlohmann::json& j) {
  SweepConfig cfg;
  cfg.scenario = j.value("scenario", cfg.scenario);
  cfg.dimension = j.value("dimension", cfg.dimension);
  cfg.alpha = j.value("alpha", cfg.alpha);

  const std::string variant = j.value("variant", "standard");
  if (variant == "standard") {
    cfg.variant = AmplitudeVariant::standard;
  } else if (variant == "epsilon_modulated") {
    cfg.variant = AmplitudeVariant::epsilon_modulated;
  } else {
    throw std::runtime_error("config: unknown variant '" + variant + "'");
  }

  cfg.epsilons = j.at("epsilons").get<std::vector<double>>();
  cfg.kernel = detail::parse_kernel(j.at("kernel"));

  for (const auto& jm : j.at("modes")) {
    Mode m;
    m.k = detail::parse_vec(jm.at("k"), "mode k");
    const auto& jp = jm.at("profile");
    GaussianProfile g;
    g.center = detail::parse_vec(jp.at("center"), "profile center");
    g.width = jp.at("width").get<double>();
    const auto& w = jp.at("weight");
    g.weight = Complex(w.at(0).get<double>(), w.size() > 1 ? w.at(1).get<double>() : 0.0);
    m.profile = g;
    cfg.modes.modes.push_back(m);
  }

  cfg.T = j.value("T", cfg.T);
  cfg.snapshot_count = j.value("snapshots", cfg.snapshot_count);
  if (j.contains("grid")) {
    const auto& jg = j.at("grid");
    cfg.grid.box_length = jg.value("box_length", cfg.grid.box_length);
    cfg.grid.sigma_margin = jg.value("sigma_margin", cfg.grid.sigma_margin);
    cfg.grid.safety = jg.value("safety", cfg.grid.safety);
    cfg.grid.n_max = jg.value("n_max", cfg.grid.n_max);
    cfg.grid.n_min = jg.value("n_min", cfg.grid.n_min);
  }
  cfg.eta = j.value("eta", cfg.eta);
  cfg.dt_initial = j.value("dt_initial", cfg.dt_initial);
  cfg.quadrature_nodes = j.value("quadrature_nodes", cfg.quadrature_nodes);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.rate_tol_low = j.value("rate_tol_low", cfg.rate_tol_low);
  cfg.rate_tol_high = j.value("rate_tol_high", cfg.rate_tol_high);
  cfg.hypothesis_bound = j.value("hypothesis_bound", cfg.hypothesis_bound);
  return cfg;
}

inline SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/true,
                                           /*ignore_comments=*/true);
  return parse_config(j);
}

}  // namespace hwkb
