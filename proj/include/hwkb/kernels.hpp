#pragma once

// Interaction kernels K given by their Fourier multiplier Khat(xi), the
// boundedness checks behind the approximation theory, and the convolution
// K*f realized spectrally as the diagonal action convolution_scale()*Khat.
//
// Built-in families (Khat real and even):
//   zero                          Khat = 0
//   constant(c)                   Khat = c            (delta-type kernel)
//   yukawa3d(sign, lambda)        Khat = sign / (lambda^2 + |xi|^2)
//                                 (screened Coulomb e^{-lambda|x|}/|x|, d=3)
//   exponential1d(sign, lambda)   Khat = sign * sqrt(2/pi) * lambda / (lambda^2 + xi^2)
//                                 (kernel sign * e^{-lambda|x|}, d=1)
//   custom(fn)                    Khat = fn(xi)

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hwkb/field.hpp"
#include "hwkb/grid.hpp"

namespace hwkb {

struct ZeroKernel {};

struct ConstantKernel {
  double value = 0.0;
};

struct Yukawa3d {
  double sign = 1.0;    // +1 or -1
  double lambda = 1.0;  // screening length, > 0
};

struct Exponential1d {
  double sign = 1.0;
  double lambda = 1.0;
};

struct CustomKernel {
  std::function<double(const Vec&)> khat;
};

using KernelSpec = std::variant<ZeroKernel, ConstantKernel, Yukawa3d, Exponential1d, CustomKernel>;

inline void validate_kernel_spec(const KernelSpec& spec) {
  if (const auto* y = std::get_if<Yukawa3d>(&spec)) {
    if (!(y->lambda > 0.0)) throw std::invalid_argument("yukawa3d: lambda must be positive");
    if (y->sign != 1.0 && y->sign != -1.0)
      throw std::invalid_argument("yukawa3d: sign must be +1 or -1");
  } else if (const auto* e = std::get_if<Exponential1d>(&spec)) {
    if (!(e->lambda > 0.0)) throw std::invalid_argument("exponential1d: lambda must be positive");
    if (e->sign != 1.0 && e->sign != -1.0)
      throw std::invalid_argument("exponential1d: sign must be +1 or -1");
  } else if (const auto* c = std::get_if<CustomKernel>(&spec)) {
    if (!c->khat) throw std::invalid_argument("custom kernel: empty multiplier");
  }
}

inline double multiplier_at(const KernelSpec& spec, const Vec& xi) {
  struct Eval {
    const Vec& xi;
    double operator()(const ZeroKernel&) const { return 0.0; }
    double operator()(const ConstantKernel& k) const { return k.value; }
    double operator()(const Yukawa3d& k) const {
      return k.sign / (k.lambda * k.lambda + norm_sq(xi));
    }
    double operator()(const Exponential1d& k) const {
      return k.sign * std::sqrt(2.0 / kPi) * k.lambda / (k.lambda * k.lambda + norm_sq(xi));
    }
    double operator()(const CustomKernel& k) const { return k.khat(xi); }
  };
  return std::visit(Eval{xi}, spec);
}

inline std::string kernel_name(const KernelSpec& spec) {
  struct Name {
    std::string operator()(const ZeroKernel&) const { return "zero"; }
    std::string operator()(const ConstantKernel& k) const {
      return "constant(" + std::to_string(k.value) + ")";
    }
    std::string operator()(const Yukawa3d& k) const {
      return "yukawa3d(sign=" + std::to_string(static_cast<int>(k.sign)) +
             ", lambda=" + std::to_string(k.lambda) + ")";
    }
    std::string operator()(const Exponential1d& k) const {
      return "exponential1d(sign=" + std::to_string(static_cast<int>(k.sign)) +
             ", lambda=" + std::to_string(k.lambda) + ")";
    }
    std::string operator()(const CustomKernel&) const { return "custom"; }
  };
  return std::visit(Name{}, spec);
}

struct KernelHypothesisReport {
  double sup_khat = 0.0;               // sup |Khat|
  double sup_one_plus_xi_khat = 0.0;   // sup (1+|xi|)|Khat|
  double sup_xi_khat = 0.0;            // max over axes of sup |xi_a Khat|
  double bound = 0.0;                  // configured admissibility bound
  bool khat_bounded = false;           // sup |Khat| <= bound
  bool decay_ok = false;             // sup (1+|xi|)|Khat| <= bound
  bool gradient_ok = false;            // sup |xi_a Khat| <= bound
};

// Kernel bound to a grid: the multiplier is cached on the frequency lattice.
class Kernel {
 public:
  Kernel(KernelSpec spec, GridPtr grid) : spec_(std::move(spec)), grid_(std::move(grid)) {
    validate_kernel_spec(spec_);
    khat_.resize(grid_->size());
    for (std::size_t i = 0; i < grid_->size(); ++i)
      khat_[i] = multiplier_at(spec_, grid_->frequency(i));
  }

  const KernelSpec& spec() const { return spec_; }
  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& lattice_multiplier() const { return khat_; }

  bool is_zero() const { return std::holds_alternative<ZeroKernel>(spec_); }

  // sup over the lattice of |Khat|, of the per-axis |xi_a Khat|, and of
  // (1+|xi|)|Khat|; these feed both the hypothesis report and the
  // remainder-bound constant.
  double sup_khat() const {
    double s = 0.0;
    for (double k : khat_) s = std::max(s, std::abs(k));
    return s;
  }

  double sup_xi_khat() const {
    double s = 0.0;
    for (std::size_t i = 0; i < khat_.size(); ++i) {
      const Vec xi = grid_->frequency(i);
      for (int a = 0; a < grid_->dimension(); ++a)
        s = std::max(s, std::abs(xi[a] * khat_[i]));
    }
    return s;
  }

  double sup_one_plus_xi_khat() const {
    double s = 0.0;
    for (std::size_t i = 0; i < khat_.size(); ++i) {
      const Vec xi = grid_->frequency(i);
      s = std::max(s, (1.0 + norm(xi)) * std::abs(khat_[i]));
    }
    return s;
  }

  // Scaled multiplier of the convolution operator f -> K*f; all Wiener-norm
  // estimates of convolutions use this sup, not the raw sup |Khat|.
  double convolution_multiplier_sup() const { return grid_->convolution_scale() * sup_khat(); }

 private:
  KernelSpec spec_;
  GridPtr grid_;
  std::vector<double> khat_;
};

inline Kernel make_kernel(KernelSpec spec, GridPtr grid) {
  return Kernel(std::move(spec), std::move(grid));
}

// Reports the three lattice suprema and flags them against `bound`.
// Non-finite multiplier samples (e.g. a Coulomb-type 1/|xi|^2 at xi = 0)
// are rejected.
inline KernelHypothesisReport verify_kernel_hypothesis(const Kernel& kernel, double bound = 1e3) {
  for (double k : kernel.lattice_multiplier())
    if (!std::isfinite(k))
      throw std::runtime_error("verify_kernel_hypothesis: non-finite multiplier sample");
  KernelHypothesisReport r;
  r.sup_khat = kernel.sup_khat();
  r.sup_xi_khat = kernel.sup_xi_khat();
  r.sup_one_plus_xi_khat = kernel.sup_one_plus_xi_khat();
  r.bound = bound;
  r.khat_bounded = r.sup_khat <= bound;
  r.decay_ok = r.sup_one_plus_xi_khat <= bound;
  r.gradient_ok = r.sup_xi_khat <= bound;
  return r;
}

// K*f via the cached lattice multiplier; linear in f and commuting with
// translations by construction.
inline Field convolve(const Kernel& kernel, const Field& f) {
  if (!(f.grid().spec().dimension == kernel.grid().spec().dimension &&
        f.grid().spec().points_per_axis == kernel.grid().spec().points_per_axis &&
        f.grid().spec().box_length == kernel.grid().spec().box_length))
    throw std::invalid_argument("convolve: field grid does not match kernel cache");
  Field spec = to_spectral(f);
  const double scale = kernel.grid().convolution_scale();
  const auto& khat = kernel.lattice_multiplier();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (!std::isfinite(khat[i]))
      throw std::runtime_error("convolve: non-finite multiplier sample");
    spec[i] *= scale * khat[i];
  }
  return f.representation() == Representation::spectral ? spec : to_physical(spec);
}

}  // namespace hwkb
