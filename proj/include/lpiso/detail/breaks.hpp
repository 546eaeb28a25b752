#pragma once

#include <cstddef>
#include <vector>

namespace lpiso::detail {

/// Sorted union of breakpoints, always starting at 0 and ending at 1. Points
/// closer than kSnapTol to a kept point are dropped; `primary` points win over
/// `secondary` ones, so exact endpoints survive next to computed images.
std::vector<double> merge_breaks(std::vector<double> primary, std::vector<double> secondary = {});

inline double midpoint(const std::vector<double>& breaks, std::size_t k) {
  return 0.5 * (breaks[k] + breaks[k + 1]);
}

}  // namespace lpiso::detail
