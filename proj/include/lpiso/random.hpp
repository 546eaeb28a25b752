#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "lpiso/step_function.hpp"
#include "lpiso/xspace.hpp"

namespace lpiso {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based seed splitting: the seed of item `index` in stream `tag`
/// depends only on (base, tag, index), so any trial can be replayed alone.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index) noexcept;

/// mt19937_64 with portable transforms (the std distributions are
/// implementation-defined, which would break reproducible reports).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double exponential() { return -std::log1p(-uniform()); }
  bool coin(double p_true = 0.5) { return uniform() < p_true; }

 private:
  std::mt19937_64 engine_;
};

std::vector<int> random_permutation(Rng& rng, int n);
XIsom random_xisom(Rng& rng, int dim);

/// Breaks 0 = b_0 < ... < b_n = 1 with every cell at least `min_len` long.
std::vector<double> random_partition(Rng& rng, int cells, double min_len);

struct StepSpec {
  int dim = 1;
  int max_cells = 8;
  double value_range = 1.0;
  /// Probability that a cell is exactly zero.
  double zero_prob = 0.0;
};

StepFn random_step(Rng& rng, const StepSpec& spec);

}  // namespace lpiso
