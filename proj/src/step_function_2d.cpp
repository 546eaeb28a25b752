#include "lpiso/step_function_2d.hpp"

#include <cmath>

#include "lpiso/accurate_sum.hpp"
#include "lpiso/errors.hpp"

namespace lpiso {

namespace {

void check_axis(std::vector<double>& b) {
  if (b.size() < 2) throw Error(Errc::CoverageError, "axis needs at least the breaks 0 and 1");
  if (std::fabs(b.front()) > kSnapTol || std::fabs(b.back() - 1.0) > kSnapTol) {
    throw Error(Errc::CoverageError, "axis breaks must start at 0 and end at 1");
  }
  b.front() = 0.0;
  b.back() = 1.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    if (!(b[k + 1] - b[k] > kSnapTol)) throw Error(Errc::NonMonotoneBreaks, "axis breaks not increasing");
  }
}

}  // namespace

StepFn2D::StepFn2D(std::vector<double> xbreaks, std::vector<double> ybreaks, std::vector<Vector> values)
    : xbreaks_(std::move(xbreaks)), ybreaks_(std::move(ybreaks)), values_(std::move(values)), dim_(0) {
  check_axis(xbreaks_);
  check_axis(ybreaks_);
  if (values_.size() != xcells() * ycells()) {
    throw Error(Errc::DimensionMismatch, "value grid does not match the break lists");
  }
  dim_ = static_cast<int>(values_.front().size());
  if (dim_ < 1) throw Error(Errc::DimensionMismatch, "value dimension must be >= 1");
  for (const auto& v : values_) {
    if (v.size() != dim_) throw Error(Errc::DimensionMismatch, "values of unequal dimension");
  }
}

StepFn StepFn2D::slice(std::size_t i) const {
  std::vector<Vector> row(values_.begin() + static_cast<std::ptrdiff_t>(i * ycells()),
                          values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * ycells()));
  return StepFn::from_cells(ybreaks_, std::move(row));
}

double norm_2d(const StepFn2D& F, NormExponent p, NormExponent q) {
  if (p.is_infinite()) throw Error(Errc::InvalidArgument, "norm_2d needs a finite exponent");
  const long double pv = p.value();
  AccurateSum acc;
  for (std::size_t i = 0; i < F.xcells(); ++i) {
    const long double dx = F.xbreaks()[i + 1] - F.xbreaks()[i];
    for (std::size_t j = 0; j < F.ycells(); ++j) {
      const long double dy = F.ybreaks()[j + 1] - F.ybreaks()[j];
      const long double n = lq_norm(F.value(i, j), q);
      acc += dx * dy * std::pow(n, pv);
    }
  }
  return static_cast<double>(std::pow(acc.value(), 1.0L / pv));
}

double iterated_norm(const StepFn2D& F, NormExponent p, NormExponent q) {
  // Curry: each x-cell carries the scalar ||F(x, .)||_{L^p(m, X)}.
  std::vector<Vector> inner;
  inner.reserve(F.xcells());
  for (std::size_t i = 0; i < F.xcells(); ++i) {
    inner.push_back(Vector::Constant(1, norm_p(F.slice(i), p, q)));
  }
  const StepFn outer = StepFn::from_cells({F.xbreaks().begin(), F.xbreaks().end()}, std::move(inner));
  return norm_p(outer, p, 1.0);
}

}  // namespace lpiso
