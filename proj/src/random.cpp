#include "lpiso/random.hpp"

#include <cmath>

#include "lpiso/accurate_sum.hpp"
#include "lpiso/errors.hpp"

namespace lpiso {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(base ^ h) + mix64(index));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  return perm;
}

XIsom random_xisom(Rng& rng, int dim) {
  auto perm = random_permutation(rng, dim);
  std::vector<int> signs(static_cast<std::size_t>(dim));
  for (auto& s : signs) s = rng.coin() ? 1 : -1;
  return XIsom(std::move(perm), std::move(signs));
}

std::vector<double> random_partition(Rng& rng, int cells, double min_len) {
  if (cells < 1) throw Error(Errc::InvalidArgument, "partition needs at least one cell");
  if (cells * min_len >= 1.0) throw Error(Errc::InvalidArgument, "minimum cell length too large");
  std::vector<double> draws(static_cast<std::size_t>(cells));
  double total = 0.0;
  for (auto& d : draws) {
    d = rng.exponential() + 1e-3;
    total += d;
  }
  const double free = 1.0 - cells * min_len;
  std::vector<double> breaks{0.0};
  AccurateSum acc;
  for (int k = 0; k + 1 < cells; ++k) {
    acc += min_len + free * draws[static_cast<std::size_t>(k)] / total;
    breaks.push_back(static_cast<double>(acc.value()));
  }
  breaks.push_back(1.0);
  return breaks;
}

StepFn random_step(Rng& rng, const StepSpec& spec) {
  const int cells = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_cells)));
  std::vector<double> breaks = random_partition(rng, cells, std::min(0.01, 0.5 / cells));
  std::vector<Vector> values;
  values.reserve(static_cast<std::size_t>(cells));
  for (int k = 0; k < cells; ++k) {
    Vector v(spec.dim);
    if (rng.coin(spec.zero_prob)) {
      v.setZero();
    } else {
      for (int i = 0; i < spec.dim; ++i) v[i] = rng.uniform(-spec.value_range, spec.value_range);
    }
    values.push_back(std::move(v));
  }
  return make_step(std::move(breaks), std::move(values));
}

}  // namespace lpiso
