#pragma once

#include <vector>

namespace lpiso {

/// Breakpoints closer than this are identified; cells thinner than this are dropped.
inline constexpr double kSnapTol = 1e-12;

/// Non-degenerate closed subinterval [lo, hi] of [0, 1].
class Interval {
 public:
  /// Endpoints within kSnapTol outside [0,1] are clamped. Throws InvalidInterval
  /// when lo >= hi - kSnapTol or an endpoint is further outside [0,1].
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

using IntervalList = std::vector<Interval>;

/// Sorts by left endpoint; throws OverlappingIntervals if two members overlap by
/// more than kSnapTol.
IntervalList sorted_disjoint(IntervalList a);

/// Pairwise intersection of two disjoint families (pieces thinner than kSnapTol dropped).
IntervalList intersect(const IntervalList& a, const IntervalList& b);

double total_length(const IntervalList& a);

}  // namespace lpiso
