#include "lpiso/xspace.hpp"

#include <algorithm>
#include <numeric>

#include "lpiso/errors.hpp"
#include "lpiso/random.hpp"

namespace lpiso {

XSpec::XSpec(int d, NormExponent qq) : dim(d), q(qq) {
  if (d < 1) throw Error(Errc::InvalidArgument, "XSpec dimension must be >= 1");
}

XIsom::XIsom(std::vector<int> perm, std::vector<int> signs) : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.empty()) throw Error(Errc::InvalidArgument, "XIsom needs dimension >= 1");
  if (perm_.size() != signs_.size()) throw Error(Errc::DimensionMismatch, "perm and signs differ in length");
  std::vector<bool> seen(perm_.size(), false);
  for (int p : perm_) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm_.size() || seen[static_cast<std::size_t>(p)]) {
      throw Error(Errc::InvalidArgument, "perm is not a bijection");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw Error(Errc::InvalidArgument, "signs must be +1 or -1");
  }
}

XIsom XIsom::identity(int dim) {
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  return XIsom(std::move(perm), std::vector<int>(static_cast<std::size_t>(dim), 1));
}

XIsom XIsom::negation(int dim) {
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  return XIsom(std::move(perm), std::vector<int>(static_cast<std::size_t>(dim), -1));
}

bool XIsom::is_identity() const noexcept {
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (perm_[i] != static_cast<int>(i) || signs_[i] != 1) return false;
  }
  return true;
}

double x_norm(const Vector& v, const XSpec& spec) {
  if (v.size() != spec.dim) throw Error(Errc::DimensionMismatch, "vector length differs from XSpec dim");
  return lq_norm(v, spec.q);
}

Vector x_apply(const XIsom& s, const Vector& v) {
  if (v.size() != s.dim()) throw Error(Errc::DimensionMismatch, "vector length differs from isometry dim");
  Vector out(v.size());
  for (int i = 0; i < s.dim(); ++i) {
    out[i] = s.signs()[static_cast<std::size_t>(i)] * v[s.perm()[static_cast<std::size_t>(i)]];
  }
  return out;
}

XIsom x_compose(const XIsom& s, const XIsom& t) {
  if (s.dim() != t.dim()) throw Error(Errc::DimensionMismatch, "composing isometries of different dim");
  const auto n = static_cast<std::size_t>(s.dim());
  std::vector<int> perm(n);
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(s.perm()[i]);
    perm[i] = t.perm()[j];
    signs[i] = s.signs()[i] * t.signs()[j];
  }
  return XIsom(std::move(perm), std::move(signs));
}

XIsom x_invert(const XIsom& s) {
  const auto n = static_cast<std::size_t>(s.dim());
  std::vector<int> perm(n);
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(s.perm()[i]);
    perm[j] = static_cast<int>(i);
    signs[j] = s.signs()[i];
  }
  return XIsom(std::move(perm), std::move(signs));
}

XIsom x_random(std::uint64_t seed, int dim) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "dimension must be >= 1");
  Rng rng(seed);
  return random_xisom(rng, dim);
}

}  // namespace lpiso
