#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpiso/step_function.hpp"

namespace lpiso {

/// Piecewise-constant function on [0,1]^2 over a rectangular grid of cells.
/// values are stored row-major: value(i, j) lives on [x_i, x_{i+1}) x [y_j, y_{j+1}).
class StepFn2D {
 public:
  StepFn2D(std::vector<double> xbreaks, std::vector<double> ybreaks, std::vector<Vector> values);

  int dim() const noexcept { return dim_; }
  std::size_t xcells() const noexcept { return xbreaks_.size() - 1; }
  std::size_t ycells() const noexcept { return ybreaks_.size() - 1; }
  std::span<const double> xbreaks() const noexcept { return xbreaks_; }
  std::span<const double> ybreaks() const noexcept { return ybreaks_; }
  const std::vector<Vector>& values() const noexcept { return values_; }
  const Vector& value(std::size_t i, std::size_t j) const { return values_[i * ycells() + j]; }

  /// y -> F(x, y) for x in x-cell i.
  StepFn slice(std::size_t i) const;

 private:
  std::vector<double> xbreaks_;
  std::vector<double> ybreaks_;
  std::vector<Vector> values_;
  int dim_;
};

/// Norm in L^p(m (x) m, X): sum over rectangles of area * ||v||_q^p, then one root.
double norm_2d(const StepFn2D& F, NormExponent p, NormExponent q = 2.0);

/// Norm in L^p(m, L^p(m, X)): the outer p-norm of x -> ||F(x, .)||_p.
double iterated_norm(const StepFn2D& F, NormExponent p, NormExponent q = 2.0);

}  // namespace lpiso
