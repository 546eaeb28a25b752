#pragma once

#include <cmath>
#include <limits>

#include "lpiso/errors.hpp"

namespace lpiso {

/// Exponent of an L^p / l^q norm: a real p >= 1, or infinity.
class NormExponent {
 public:
  // Implicit on purpose: call sites read `norm_p(f, 2.0, 1.0)`.
  NormExponent(double p) : p_(p) {  // NOLINT(google-explicit-constructor)
    if (!(p >= 1.0)) {
      throw Error(Errc::InvalidArgument, "norm exponent must be >= 1");
    }
  }

  static NormExponent infinity() { return NormExponent(std::numeric_limits<double>::infinity()); }

  double value() const noexcept { return p_; }
  bool is_infinite() const noexcept { return std::isinf(p_); }

  friend bool operator==(NormExponent a, NormExponent b) noexcept { return a.p_ == b.p_; }

 private:
  double p_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace lpiso
