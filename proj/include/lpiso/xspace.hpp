#pragma once

#include <cstdint>
#include <vector>

#include "lpiso/exponent.hpp"
#include "lpiso/vector_norm.hpp"

namespace lpiso {

/// The value space X = R^d with the l^q norm.
struct XSpec {
  int dim = 1;
  NormExponent q = 2.0;

  XSpec() = default;
  XSpec(int d, NormExponent qq);

  friend bool operator==(const XSpec&, const XSpec&) = default;
};

/// Signed permutation of R^d: (s v)_i = signs[i] * v[perm[i]].
/// These are isometries of every l^q norm simultaneously.
class XIsom {
 public:
  XIsom(std::vector<int> perm, std::vector<int> signs);

  static XIsom identity(int dim);
  /// All signs -1.
  static XIsom negation(int dim);

  int dim() const noexcept { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const noexcept { return perm_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  bool is_identity() const noexcept;

  friend bool operator==(const XIsom&, const XIsom&) = default;

 private:
  std::vector<int> perm_;
  std::vector<int> signs_;
};

double x_norm(const Vector& v, const XSpec& spec);
Vector x_apply(const XIsom& s, const Vector& v);
/// The isometry v -> s(t(v)).
XIsom x_compose(const XIsom& s, const XIsom& t);
XIsom x_invert(const XIsom& s);
/// Uniformly random signed permutation, deterministic per seed.
XIsom x_random(std::uint64_t seed, int dim);

}  // namespace lpiso
