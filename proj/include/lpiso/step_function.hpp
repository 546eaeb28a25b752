#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lpiso/exponent.hpp"
#include "lpiso/interval.hpp"
#include "lpiso/vector_norm.hpp"

namespace lpiso {

/// Piecewise-constant function [0,1] -> R^d.
///
/// Cell k is [breaks[k], breaks[k+1]) (the last cell is closed at 1) and carries
/// values[k]. Instances are immutable. `make` produces the canonical form
/// (no cell thinner than kSnapTol, no two adjacent cells with equal values);
/// `from_cells` keeps the given cell structure, which is what a common
/// refinement needs.
class StepFn {
 public:
  /// Canonicalizing constructor. Breaks within kSnapTol of 0/1 are snapped,
  /// cells thinner than kSnapTol are merged into their left neighbour, equal
  /// neighbours are merged.
  static StepFn make(std::vector<double> breaks, std::vector<Vector> values);

  /// Validating constructor that keeps the cell structure as given.
  static StepFn from_cells(std::vector<double> breaks, std::vector<Vector> values);

  static StepFn constant(const Vector& v);
  static StepFn zero(int dim);
  /// d = 1 convenience.
  static StepFn scalar(std::vector<double> breaks, const std::vector<double>& values);

  int dim() const noexcept { return dim_; }
  std::size_t cells() const noexcept { return values_.size(); }
  std::span<const double> breaks() const noexcept { return breaks_; }
  const std::vector<Vector>& values() const noexcept { return values_; }
  double width(std::size_t k) const { return breaks_[k + 1] - breaks_[k]; }
  const Vector& value(std::size_t k) const { return values_[k]; }

  /// Index of the cell containing x (x clamped into [0,1]).
  std::size_t cell_index(double x) const;
  const Vector& operator()(double x) const { return values_[cell_index(x)]; }

  bool is_canonical() const;
  StepFn canonical() const { return make(breaks_, values_); }

  friend bool operator==(const StepFn& a, const StepFn& b);

 private:
  StepFn(std::vector<double> breaks, std::vector<Vector> values, int dim)
      : breaks_(std::move(breaks)), values_(std::move(values)), dim_(dim) {}

  std::vector<double> breaks_;
  std::vector<Vector> values_;
  int dim_;
};

inline StepFn make_step(std::vector<double> breaks, std::vector<Vector> values) {
  return StepFn::make(std::move(breaks), std::move(values));
}

/// Both functions re-expressed on the union of their breakpoints.
std::pair<StepFn, StepFn> refine_common(const StepFn& f, const StepFn& g);

/// a*f + b*g, canonical.
StepFn linear_combine(double a, const StepFn& f, double b, const StepFn& g);

StepFn operator*(double c, const StepFn& f);
StepFn operator+(const StepFn& f, const StepFn& g);
StepFn operator-(const StepFn& f, const StepFn& g);
StepFn operator-(const StepFn& f);

/// chi_A * f for a family A of pairwise disjoint intervals.
StepFn indicator_multiply(const StepFn& f, const IntervalList& A);

/// Bochner norm (int ||f(s)||_q^p ds)^(1/p); p = infinity gives the essential sup.
double norm_p(const StepFn& f, NormExponent p, NormExponent q = 2.0);

/// int ||f(s)||_q^p ds, for finite p (no final root).
double norm_p_pow(const StepFn& f, NormExponent p, NormExponent q = 2.0);

/// Total length of the cells whose value is not (numerically) zero.
double support_measure(const StepFn& f);

/// s -> f(a + b*s). Requires b > 0 and [a, a+b] inside [0,1].
StepFn pullback_affine(const StepFn& f, double a, double b);

/// u -> g((u - a)/b) on [a, a+b], zero elsewhere. Left inverse of pullback_affine
/// on the band [a, a+b].
StepFn pushforward_affine(const StepFn& g, double a, double b);

}  // namespace lpiso
