#pragma once

// Complex-valued fields sampled on a Grid, in either physical (node samples)
// or spectral (transform values on the frequency lattice) representation,
// plus the Fourier-multiplier calculus built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwkb/fft.hpp"
#include "hwkb/grid.hpp"

namespace hwkb {

using Complex = std::complex<double>;

enum class Representation { physical, spectral };

class Field {
 public:
  Field() = default;
  Field(GridPtr grid, Representation rep)
      : grid_(std::move(grid)), rep_(rep), v_(grid_->size(), Complex{0.0, 0.0}) {}
  Field(GridPtr grid, Representation rep, std::vector<Complex> samples)
      : grid_(std::move(grid)), rep_(rep), v_(std::move(samples)) {
    if (v_.size() != grid_->size())
      throw std::invalid_argument("Field: sample count does not match grid size");
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Representation representation() const { return rep_; }
  std::size_t size() const { return v_.size(); }

  Complex& operator[](std::size_t i) { return v_[i]; }
  const Complex& operator[](std::size_t i) const { return v_[i]; }
  std::vector<Complex>& data() { return v_; }
  const std::vector<Complex>& data() const { return v_; }

  bool same_grid(const Field& other) const {
    if (grid_ == other.grid_) return true;
    const GridSpec& a = grid_->spec();
    const GridSpec& b = other.grid_->spec();
    return a.dimension == b.dimension && a.points_per_axis == b.points_per_axis &&
           a.box_length == b.box_length;
  }

 private:
  GridPtr grid_;
  Representation rep_ = Representation::physical;
  std::vector<Complex> v_;
};

inline void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!a.same_grid(b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

enum class Direction { forward, inverse };

// Discrete realization of the transform pair documented in grid.hpp.
// Forward maps physical -> spectral, inverse maps spectral -> physical;
// a mismatched representation tag is an error.
inline Field transform(const Field& f, Direction dir) {
  const Grid& g = f.grid();
  if (dir == Direction::forward && f.representation() != Representation::physical)
    throw std::invalid_argument("transform: forward requires a physical-representation field");
  if (dir == Direction::inverse && f.representation() != Representation::spectral)
    throw std::invalid_argument("transform: inverse requires a spectral-representation field");

  const std::size_t n = g.size();
  Field out(f.grid_ptr(),
            dir == Direction::forward ? Representation::spectral : Representation::physical);
  if (dir == Direction::forward) {
    detail::dft(g.dimension(), g.fft_dims(), FFTW_FORWARD, f.data().data(), out.data().data());
    const double s = g.forward_scale();
    for (std::size_t i = 0; i < n; ++i) out[i] *= s * g.center_phase(i);
  } else {
    Field tmp(f.grid_ptr(), Representation::spectral);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] * g.center_phase(i);
    detail::dft(g.dimension(), g.fft_dims(), FFTW_BACKWARD, tmp.data().data(), out.data().data());
    const double s = g.inverse_scale();
    for (std::size_t i = 0; i < n; ++i) out[i] *= s;
  }
  return out;
}

inline Field to_spectral(const Field& f) {
  return f.representation() == Representation::spectral ? f : transform(f, Direction::forward);
}

inline Field to_physical(const Field& f) {
  return f.representation() == Representation::physical ? f : transform(f, Direction::inverse);
}

// Pointwise multiplication of the spectral data by m(xi) over the frequency
// lattice; the result is returned in the requested representation (default:
// the input's). Non-finite multiplier values are rejected.
template <class M>
Field apply_multiplier(const Field& f, M&& m, Representation out_rep) {
  Field spec = to_spectral(f);
  const Grid& g = spec.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex mv = m(g.frequency(i));
    if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
      throw std::runtime_error("apply_multiplier: non-finite multiplier value on the lattice");
    spec[i] *= mv;
  }
  return out_rep == Representation::spectral ? std::move(spec) : to_physical(spec);
}

template <class M>
Field apply_multiplier(const Field& f, M&& m) {
  return apply_multiplier(f, std::forward<M>(m), f.representation());
}

// Exact shift x -> x - v through the phase multiplier e^{-i xi . v};
// spectrally exact for band-limited data, v need not be a lattice multiple.
inline Field translate(const Field& f, const Vec& v) {
  for (int a = 0; a < 3; ++a)
    if (!std::isfinite(v[a])) throw std::invalid_argument("translate: non-finite shift");
  return apply_multiplier(f, [&v](const Vec& xi) {
    return std::polar(1.0, -dot(xi, v));
  });
}

inline Field translate(const Field& f, double v) { return translate(f, Vec{v, 0.0, 0.0}); }

// Spectral derivative along one axis (multiplier i*xi_a).
inline Field derivative(const Field& f, int axis) {
  return apply_multiplier(f, [axis](const Vec& xi) { return Complex(0.0, xi[axis]); });
}

inline Field laplacian(const Field& f) {
  return apply_multiplier(f, [](const Vec& xi) { return Complex(-norm_sq(xi), 0.0); });
}

// --- pointwise arithmetic (representations must match) ---

inline Field& operator+=(Field& a, const Field& b) {
  require_same_grid(a, b, "operator+=");
  if (a.representation() != b.representation())
    throw std::invalid_argument("operator+=: representation mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Field operator+(Field a, const Field& b) { return a += b; }

inline Field& operator-=(Field& a, const Field& b) {
  require_same_grid(a, b, "operator-=");
  if (a.representation() != b.representation())
    throw std::invalid_argument("operator-=: representation mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Field operator-(Field a, const Field& b) { return a -= b; }

inline Field operator*(Complex s, Field f) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= s;
  return f;
}

inline Field operator*(double s, Field f) { return Complex(s, 0.0) * f; }

// Pointwise product of physical-representation fields.
inline Field pointwise(const Field& a, const Field& b) {
  require_same_grid(a, b, "pointwise");
  if (a.representation() != Representation::physical || b.representation() != Representation::physical)
    throw std::invalid_argument("pointwise: both fields must be physical");
  Field out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

inline Field conjugate(Field f) {
  if (f.representation() != Representation::physical)
    throw std::invalid_argument("conjugate: physical representation expected");
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::conj(f[i]);
  return f;
}

// |f|^2 as a (real-valued) physical field.
inline Field abs_squared(const Field& f) {
  Field p = to_physical(f);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = Complex(std::norm(p[i]), 0.0);
  return p;
}

// --- norms (fixed summation order: storage order) ---

inline double l2_norm(const Field& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i]);
  const double w = f.representation() == Representation::physical
                       ? f.grid().l2_weight_physical()
                       : f.grid().l2_weight_spectral();
  return std::sqrt(w * s);
}

inline double linf_norm(const Field& f) {
  const Field p = to_physical(f);
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i]));
  return m;
}

inline double max_imag(const Field& f) {
  const Field p = to_physical(f);
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i].imag()));
  return m;
}

inline Field real_part(const Field& f) {
  Field p = to_physical(f);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = Complex(p[i].real(), 0.0);
  return p;
}

// Plane-wave sample e^{i k . x} on the grid (k need not be on the lattice).
inline Field plane_wave(const GridPtr& grid, const Vec& k) {
  Field f(grid, Representation::physical);
  for (std::size_t i = 0; i < grid->size(); ++i)
    f[i] = std::polar(1.0, dot(k, grid->coordinate(i)));
  return f;
}

}  // namespace hwkb
