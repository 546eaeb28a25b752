#include "lpiso/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "lpiso/accurate_sum.hpp"
#include "lpiso/detail/breaks.hpp"
#include "lpiso/errors.hpp"

namespace lpiso {

// ---------------------------------------------------------------------------
// vector norms

double lq_norm(const Vector& v, NormExponent q) {
  if (v.size() == 0) return 0.0;
  std::vector<double> mags(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) mags[static_cast<std::size_t>(i)] = std::fabs(v[i]);
  std::sort(mags.begin(), mags.end());
  if (q.is_infinite()) return mags.back();
  const double qv = q.value();
  if (mags.back() == 0.0) return 0.0;
  // Scale by the largest magnitude to avoid overflow/underflow in the powers.
  const double scale = mags.back();
  long double acc = 0.0L;
  for (double m : mags) {
    const long double r = static_cast<long double>(m) / scale;
    acc += qv == 1.0 ? r : (qv == 2.0 ? r * r : std::pow(r, static_cast<long double>(qv)));
  }
  const long double root = qv == 1.0 ? acc : (qv == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0L / qv));
  return static_cast<double>(root * scale);
}

// ---------------------------------------------------------------------------
// intervals

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw Error(Errc::InvalidInterval, "non-finite endpoint");
  }
  if (lo_ < -kSnapTol || hi_ > 1.0 + kSnapTol) {
    throw Error(Errc::InvalidInterval, "interval escapes [0,1]");
  }
  lo_ = std::clamp(lo_, 0.0, 1.0);
  hi_ = std::clamp(hi_, 0.0, 1.0);
  if (!(lo_ < hi_ - kSnapTol)) {
    throw Error(Errc::InvalidInterval,
                "degenerate or reversed interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

IntervalList sorted_disjoint(IntervalList a) {
  std::sort(a.begin(), a.end(), [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (a[k].lo() < a[k - 1].hi() - kSnapTol) {
      throw Error(Errc::OverlappingIntervals, "intervals overlap");
    }
  }
  return a;
}

IntervalList intersect(const IntervalList& a, const IntervalList& b) {
  const IntervalList sa = sorted_disjoint(a);
  const IntervalList sb = sorted_disjoint(b);
  IntervalList out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double lo = std::max(sa[i].lo(), sb[j].lo());
    const double hi = std::min(sa[i].hi(), sb[j].hi());
    if (lo < hi - kSnapTol) out.emplace_back(lo, hi);
    if (sa[i].hi() < sb[j].hi()) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

double total_length(const IntervalList& a) {
  AccurateSum s;
  for (const auto& iv : a) s += iv.length();
  return static_cast<double>(s.value());
}

// ---------------------------------------------------------------------------
// breakpoint merging

namespace detail {

namespace {

std::vector<double> dedupe_sorted(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double b : pts) {
    if (!(b > kSnapTol && b < 1.0 - kSnapTol)) continue;
    if (out.empty() || b - out.back() > kSnapTol) out.push_back(b);
  }
  return out;
}

}  // namespace

std::vector<double> merge_breaks(std::vector<double> primary, std::vector<double> secondary) {
  std::vector<double> kept = dedupe_sorted(std::move(primary));
  if (!secondary.empty()) {
    std::vector<double> extra;
    for (double s : dedupe_sorted(std::move(secondary))) {
      const auto it = std::lower_bound(kept.begin(), kept.end(), s);
      if (it != kept.end() && *it - s <= kSnapTol) continue;
      if (it != kept.begin() && s - *(it - 1) <= kSnapTol) continue;
      extra.push_back(s);
    }
    std::vector<double> both;
    both.reserve(kept.size() + extra.size());
    std::merge(kept.begin(), kept.end(), extra.begin(), extra.end(), std::back_inserter(both));
    kept = std::move(both);
  }
  std::vector<double> out;
  out.reserve(kept.size() + 2);
  out.push_back(0.0);
  out.insert(out.end(), kept.begin(), kept.end());
  out.push_back(1.0);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// StepFn construction

namespace {

int checked_dim(const std::vector<double>& breaks, const std::vector<Vector>& values) {
  if (breaks.size() < 2) {
    throw Error(Errc::CoverageError, "a step function needs at least the breaks 0 and 1");
  }
  if (values.size() + 1 != breaks.size()) {
    throw Error(Errc::DimensionMismatch, "values count must equal breaks count - 1");
  }
  const auto dim = values.front().size();
  if (dim < 1) throw Error(Errc::DimensionMismatch, "value dimension must be >= 1");
  for (const auto& v : values) {
    if (v.size() != dim) throw Error(Errc::DimensionMismatch, "values of unequal dimension");
  }
  for (double b : breaks) {
    if (!std::isfinite(b)) throw Error(Errc::NonMonotoneBreaks, "non-finite breakpoint");
  }
  if (std::fabs(breaks.front()) > kSnapTol || std::fabs(breaks.back() - 1.0) > kSnapTol) {
    throw Error(Errc::CoverageError, "breaks must start at 0 and end at 1");
  }
  return static_cast<int>(dim);
}

}  // namespace

StepFn StepFn::make(std::vector<double> breaks, std::vector<Vector> values) {
  const int dim = checked_dim(breaks, values);
  breaks.front() = 0.0;
  breaks.back() = 1.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (breaks[k + 1] < breaks[k] - kSnapTol) {
      throw Error(Errc::NonMonotoneBreaks, "breaks must be non-decreasing");
    }
  }

  // Drop thin cells: each one is absorbed by its left neighbour (the first
  // surviving cell absorbs any thin cells in front of it).
  std::vector<double> nb{0.0};
  std::vector<Vector> nv;
  nb.reserve(breaks.size());
  nv.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double hi = breaks[k + 1];
    if (hi - nb.back() <= kSnapTol) {
      if (!nv.empty()) nb.back() = std::max(nb.back(), hi);
      continue;
    }
    nv.push_back(std::move(values[k]));
    nb.push_back(hi);
  }
  nb.back() = 1.0;

  // Merge equal neighbours.
  std::vector<double> mb{0.0};
  std::vector<Vector> mv;
  for (std::size_t k = 0; k < nv.size(); ++k) {
    if (!mv.empty() && same_vector(mv.back(), nv[k])) {
      mb.back() = nb[k + 1];
    } else {
      mv.push_back(std::move(nv[k]));
      mb.push_back(nb[k + 1]);
    }
  }
  return StepFn(std::move(mb), std::move(mv), dim);
}

StepFn StepFn::from_cells(std::vector<double> breaks, std::vector<Vector> values) {
  const int dim = checked_dim(breaks, values);
  breaks.front() = 0.0;
  breaks.back() = 1.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (!(breaks[k + 1] - breaks[k] > kSnapTol)) {
      throw Error(Errc::NonMonotoneBreaks, "breaks must increase by more than the snap tolerance");
    }
  }
  return StepFn(std::move(breaks), std::move(values), dim);
}

StepFn StepFn::constant(const Vector& v) { return from_cells({0.0, 1.0}, {v}); }

StepFn StepFn::zero(int dim) {
  if (dim < 1) throw Error(Errc::DimensionMismatch, "dimension must be >= 1");
  return constant(Vector::Zero(dim));
}

StepFn StepFn::scalar(std::vector<double> breaks, const std::vector<double>& values) {
  std::vector<Vector> vs;
  vs.reserve(values.size());
  for (double v : values) vs.push_back(Vector::Constant(1, v));
  return make(std::move(breaks), std::move(vs));
}

std::size_t StepFn::cell_index(double x) const {
  const auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, x);
  return static_cast<std::size_t>(it - (breaks_.begin() + 1));
}

bool StepFn::is_canonical() const {
  for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
    if (same_vector(values_[k], values_[k + 1])) return false;
  }
  return true;
}

bool operator==(const StepFn& a, const StepFn& b) {
  if (a.dim_ != b.dim_ || a.breaks_ != b.breaks_) return false;
  for (std::size_t k = 0; k < a.values_.size(); ++k) {
    if (!same_vector(a.values_[k], b.values_[k])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// algebra

namespace {

void require_same_dim(const StepFn& f, const StepFn& g) {
  if (f.dim() != g.dim()) throw Error(Errc::DimensionMismatch, "step functions of different dimension");
}

using detail::merge_breaks;
using detail::midpoint;

}  // namespace

std::pair<StepFn, StepFn> refine_common(const StepFn& f, const StepFn& g) {
  require_same_dim(f, g);
  std::vector<double> all(f.breaks().begin(), f.breaks().end());
  all.insert(all.end(), g.breaks().begin(), g.breaks().end());
  std::vector<double> common = merge_breaks(std::move(all));

  std::vector<Vector> fv;
  std::vector<Vector> gv;
  fv.reserve(common.size() - 1);
  gv.reserve(common.size() - 1);
  for (std::size_t k = 0; k + 1 < common.size(); ++k) {
    const double m = midpoint(common, k);
    fv.push_back(f(m));
    gv.push_back(g(m));
  }
  return {StepFn::from_cells(common, std::move(fv)), StepFn::from_cells(common, std::move(gv))};
}

StepFn linear_combine(double a, const StepFn& f, double b, const StepFn& g) {
  auto [rf, rg] = refine_common(f, g);
  std::vector<Vector> vals;
  vals.reserve(rf.cells());
  for (std::size_t k = 0; k < rf.cells(); ++k) vals.push_back(a * rf.value(k) + b * rg.value(k));
  return make_step(std::vector<double>(rf.breaks().begin(), rf.breaks().end()), std::move(vals));
}

StepFn operator*(double c, const StepFn& f) {
  std::vector<Vector> vals;
  vals.reserve(f.cells());
  for (const auto& v : f.values()) vals.push_back(c * v);
  return make_step(std::vector<double>(f.breaks().begin(), f.breaks().end()), std::move(vals));
}

StepFn operator+(const StepFn& f, const StepFn& g) { return linear_combine(1.0, f, 1.0, g); }
StepFn operator-(const StepFn& f, const StepFn& g) { return linear_combine(1.0, f, -1.0, g); }
StepFn operator-(const StepFn& f) { return -1.0 * f; }

StepFn indicator_multiply(const StepFn& f, const IntervalList& A) {
  const IntervalList sorted = sorted_disjoint(A);
  std::vector<double> all(f.breaks().begin(), f.breaks().end());
  for (const auto& iv : sorted) {
    all.push_back(iv.lo());
    all.push_back(iv.hi());
  }
  const std::vector<double> common = merge_breaks(std::move(all));
  std::vector<Vector> vals;
  vals.reserve(common.size() - 1);
  const Vector zero = Vector::Zero(f.dim());
  for (std::size_t k = 0; k + 1 < common.size(); ++k) {
    const double m = midpoint(common, k);
    const bool inside = std::any_of(sorted.begin(), sorted.end(),
                                    [m](const Interval& iv) { return iv.contains(m); });
    vals.push_back(inside ? f(m) : zero);
  }
  return make_step(common, std::move(vals));
}

// ---------------------------------------------------------------------------
// norms

double norm_p_pow(const StepFn& f, NormExponent p, NormExponent q) {
  if (p.is_infinite()) throw Error(Errc::InvalidArgument, "norm_p_pow needs a finite exponent");
  const long double pv = p.value();
  AccurateSum acc;
  for (std::size_t k = 0; k < f.cells(); ++k) {
    const long double n = lq_norm(f.value(k), q);
    if (n == 0.0L) continue;
    const long double np = pv == 1.0L ? n : (pv == 2.0L ? n * n : std::pow(n, pv));
    acc += static_cast<long double>(f.width(k)) * np;
  }
  return static_cast<double>(acc.value());
}

double norm_p(const StepFn& f, NormExponent p, NormExponent q) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, lq_norm(v, q));
    return m;
  }
  const double s = norm_p_pow(f, p, q);
  const double pv = p.value();
  if (pv == 1.0) return s;
  if (pv == 2.0) return std::sqrt(s);
  return static_cast<double>(std::pow(static_cast<long double>(s), 1.0L / pv));
}

double support_measure(const StepFn& f) {
  AccurateSum acc;
  for (std::size_t k = 0; k < f.cells(); ++k) {
    if (lq_norm(f.value(k), NormExponent::infinity()) > kSnapTol) acc += f.width(k);
  }
  return static_cast<double>(acc.value());
}

// ---------------------------------------------------------------------------
// affine reparametrizations

StepFn pullback_affine(const StepFn& f, double a, double b) {
  if (!(b > 0.0)) throw Error(Errc::NonPositiveSlope, "pullback slope must be positive");
  if (a < -kSnapTol || a + b > 1.0 + kSnapTol) {
    throw Error(Errc::RangeError, "affine image escapes [0,1]");
  }
  std::vector<double> nb{0.0};
  std::vector<Vector> vals;
  const auto br = f.breaks();
  for (std::size_t k = 1; k + 1 < br.size(); ++k) {
    const double s = (br[k] - a) / b;
    if (s > kSnapTol && s < 1.0 - kSnapTol) nb.push_back(s);
  }
  nb.push_back(1.0);
  vals.reserve(nb.size() - 1);
  for (std::size_t k = 0; k + 1 < nb.size(); ++k) {
    vals.push_back(f(a + b * midpoint(nb, k)));
  }
  return make_step(std::move(nb), std::move(vals));
}

StepFn pushforward_affine(const StepFn& g, double a, double b) {
  if (!(b > 0.0)) throw Error(Errc::NonPositiveSlope, "pushforward slope must be positive");
  if (a < -kSnapTol || a + b > 1.0 + kSnapTol) {
    throw Error(Errc::RangeError, "affine image escapes [0,1]");
  }
  const Vector zero = Vector::Zero(g.dim());
  const double end = a + b;
  std::vector<double> nb{0.0};
  std::vector<Vector> vals;
  if (a > kSnapTol) {
    vals.push_back(zero);
    nb.push_back(a);
  }
  const auto br = g.breaks();
  for (std::size_t k = 0; k < g.cells(); ++k) {
    const double hi = k + 1 == g.cells() ? end : a + b * br[k + 1];
    vals.push_back(g.value(k));
    nb.push_back(hi);
  }
  if (1.0 - end > kSnapTol) {
    vals.push_back(zero);
    nb.push_back(1.0);
  } else {
    nb.back() = 1.0;
  }
  return make_step(std::move(nb), std::move(vals));
}

}  // namespace lpiso
