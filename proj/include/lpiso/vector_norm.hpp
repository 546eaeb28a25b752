#pragma once

#include <Eigen/Dense>

#include "lpiso/exponent.hpp"

namespace lpiso {

using Vector = Eigen::VectorXd;

/// l^q norm of a finite vector. Magnitudes are summed in ascending order, so the
/// result is invariant (bit for bit) under permutations and sign flips.
double lq_norm(const Vector& v, NormExponent q);

/// Exact componentwise equality (no tolerance).
inline bool same_vector(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace lpiso
