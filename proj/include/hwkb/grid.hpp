#pragma once

// Periodic-box discretization of R^d (d = 1,2,3) on [-L/2, L/2)^d with N
// samples per axis, N a power of two. Physical nodes are x_n = -L/2 + n*h,
// h = L/N; the frequency lattice is xi_m = m * (2*pi/L) with signed index
// m in {-N/2, ..., N/2-1} stored in FFT order (0, 1, ..., N/2-1, -N/2, ..., -1).
//
// Transform convention (defined here once; every other constant in the
// library is derived from it):
//
//   forward:  F(xi_m) = (2*pi)^(-d/2) * h^d     * sum_n f(x_n) exp(-i x_n . xi_m)
//   inverse:  f(x_n)  = (2*pi)^(-d/2) * (2*pi/L)^d * sum_m F(xi_m) exp(+i x_n . xi_m)
//
// i.e. Riemann sums of the continuum pair
//   f^(xi) = (2*pi)^(-d/2) Int f(x) e^{-i x.xi} dx,
//   f(x)   = (2*pi)^(-d/2) Int f^(xi) e^{+i x.xi} dxi.
//
// Derived constants:
//   * Parseval:        h^d sum |f(x_n)|^2 = (2*pi/L)^d sum |F(xi_m)|^2.
//   * Fourier-series coefficient of f at xi_m:  c_m = inverse_scale * F(xi_m),
//     so the discrete Wiener norm  ||f||_W = sum_m |c_m|  gives a pure mode
//     a*e^{i m x} norm |a| and is submultiplicative with constant exactly 1.
//   * Convolution:     (K * f)^ = (2*pi)^(d/2) Khat(xi) * F(xi), so the
//     convolution multiplier carries the factor convolution_scale().

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hwkb {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Coordinates and wavevectors; components beyond the grid dimension are zero.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm_sq(const Vec& v) { return dot(v, v); }
inline double norm(const Vec& v) { return std::sqrt(norm_sq(v)); }

inline Vec operator-(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec operator+(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec operator*(double s, const Vec& v) { return {s * v[0], s * v[1], s * v[2]}; }

struct GridSpec {
  int dimension = 1;        // d in {1,2,3}
  int points_per_axis = 0;  // N, power of two
  double box_length = 0.0;  // L > 0, same for every axis

  void validate() const {
    if (dimension < 1 || dimension > 3)
      throw std::invalid_argument("GridSpec: dimension must be 1, 2 or 3");
    if (points_per_axis < 2 || (points_per_axis & (points_per_axis - 1)) != 0)
      throw std::invalid_argument("GridSpec: points_per_axis must be a power of two >= 2");
    if (!(box_length > 0.0) || !std::isfinite(box_length))
      throw std::invalid_argument("GridSpec: box_length must be positive and finite");
  }
};

class Grid {
 public:
  explicit Grid(const GridSpec& spec) : spec_(spec) {
    spec.validate();
    n_ = spec.points_per_axis;
    dim_ = spec.dimension;
    size_ = 1;
    for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
    h_ = spec.box_length / n_;
    dk_ = kTwoPi / spec.box_length;
    node_.resize(n_);
    freq_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      node_[i] = -0.5 * spec.box_length + i * h_;
      const int signed_idx = (i < n_ / 2) ? i : i - n_;
      freq_[i] = signed_idx * dk_;
    }
  }

  const GridSpec& spec() const { return spec_; }
  int dimension() const { return dim_; }
  int points_per_axis() const { return n_; }
  double box_length() const { return spec_.box_length; }
  std::size_t size() const { return size_; }
  double spacing() const { return h_; }
  double freq_spacing() const { return dk_; }
  double nyquist() const { return (n_ / 2) * dk_; }

  // Riemann-sum weights of the convention above.
  double forward_scale() const { return std::pow(kTwoPi, -0.5 * dim_) * std::pow(h_, dim_); }
  double inverse_scale() const { return std::pow(kTwoPi, -0.5 * dim_) * std::pow(dk_, dim_); }
  // Weight turning raw coefficients into Fourier-series coefficients; the
  // discrete Wiener norm is wiener_weight() * sum_m |F(xi_m)|.
  double wiener_weight() const { return inverse_scale(); }
  // (K*f)^ = convolution_scale() * Khat * fhat.
  double convolution_scale() const { return std::pow(kTwoPi, 0.5 * dim_); }
  // Quadrature weights for the L^2 norm in each representation.
  double l2_weight_physical() const { return std::pow(h_, dim_); }
  double l2_weight_spectral() const { return std::pow(dk_, dim_); }

  std::array<int, 3> decompose(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
      flat /= static_cast<std::size_t>(n_);
    }
    return idx;
  }

  Vec coordinate(std::size_t flat) const {
    const auto idx = decompose(flat);
    Vec x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) x[a] = node_[idx[a]];
    return x;
  }

  Vec frequency(std::size_t flat) const {
    const auto idx = decompose(flat);
    Vec xi{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) xi[a] = freq_[idx[a]];
    return xi;
  }

  // Parity (-1)^(sum of axis indices): the phase relating the DFT over
  // node-order samples to the transform with true x in [-L/2, L/2).
  double center_phase(std::size_t flat) const {
    const auto idx = decompose(flat);
    int s = 0;
    for (int a = 0; a < dim_; ++a) s += idx[a];
    return (s & 1) ? -1.0 : 1.0;
  }

  double node(int i) const { return node_.at(i); }
  double freq(int i) const { return freq_.at(i); }

  std::array<int, 3> fft_dims() const {
    std::array<int, 3> d{1, 1, 1};
    for (int a = 0; a < dim_; ++a) d[a] = n_;
    return d;
  }

 private:
  GridSpec spec_;
  int n_ = 0;
  int dim_ = 1;
  std::size_t size_ = 0;
  double h_ = 0.0;
  double dk_ = 0.0;
  std::vector<double> node_;
  std::vector<double> freq_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(const GridSpec& spec) { return std::make_shared<Grid>(spec); }

}  // namespace hwkb
