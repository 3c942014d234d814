#pragma once

// Empirical convergence-rate fitting: least-squares slope of log(error)
// against log(eps), with a floor filter that discards points whose error
// is dominated by the time-splitting tolerance of the solver.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hwkb {

// Theoretical approximation order in eps:
//   beta = 1        for alpha = 1 and alpha >= 2,
//   beta = alpha-1  for alpha in (1, 2).
inline double beta_theory(double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("beta_theory: alpha must be >= 1");
  if (alpha == 1.0 || alpha >= 2.0) return 1.0;
  return alpha - 1.0;
}

struct RateFit {
  double beta = 0.0;
  double stderr_beta = 0.0;
  int used = 0;
  int dropped = 0;
};

// Fits log(error) = beta * log(eps) + c by least squares over the points
// with error >= 100 * eta * eps^2 (points below that are floor-dominated
// by the splitting tolerance and are dropped, their count reported).
// Requires at least 3 usable points.
inline RateFit fit_rate(const std::vector<double>& epsilons, const std::vector<double>& errors,
                        double eta) {
  if (epsilons.size() != errors.size())
    throw std::invalid_argument("fit_rate: size mismatch");
  std::vector<double> lx, ly;
  int dropped = 0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double eps = epsilons[i];
    const double err = errors[i];
    if (!(eps > 0.0)) throw std::invalid_argument("fit_rate: eps must be positive");
    if (!(err > 0.0) || !std::isfinite(err) || err < 100.0 * eta * eps * eps) {
      ++dropped;
      continue;
    }
    lx.push_back(std::log(eps));
    ly.push_back(std::log(err));
  }
  const int n = static_cast<int>(lx.size());
  if (n < 3)
    throw std::runtime_error("fit_rate: fewer than 3 usable points after floor filtering");

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_rate: eps values must be distinct");

  RateFit fit;
  fit.beta = sxy / sxx;
  fit.used = n;
  fit.dropped = dropped;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - my - fit.beta * (lx[i] - mx);
    ss_res += r * r;
  }
  fit.stderr_beta = (n > 2) ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace hwkb
