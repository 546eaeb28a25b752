#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lpiso/homotopy.hpp"

namespace lpiso {

/// Unit-sphere orbit of a scalar L^p[0,1] function under the isometry group.
enum class OrbitClass { FullSupport, PartialSupport };

std::string_view to_string(OrbitClass c) noexcept;

/// Lamperti's disjointness functional. p = 1:
///   ||f+g|| + ||f-g|| - 2(||f|| + ||g||);
/// otherwise the power form ||f+g||^p + ||f-g||^p - 2(||f||^p + ||g||^p).
/// Vanishes iff f, g are disjointly supported when p != 2 (d = 1); vanishes
/// identically at p = 2. Negative for overlapping scalars when p < 2, positive when p > 2.
double lamperti_functional(const StepFn& f, const StepFn& g, NormExponent p, NormExponent q = 2.0);

/// Requires d = 1 and | ||f||_p - 1 | <= 1e-9 (NotUnitNorm otherwise).
OrbitClass orbit_class(const StepFn& f, NormExponent p);

/// Isometry T with T f = g, built by matching cumulative p-mass of the supports
/// and cumulative length of the zero sets. Throws OrbitMismatch / NotUnitNorm.
LampertiIsometry rearrangement_isometry(const StepFn& f, const StepFn& g, NormExponent p);

/// h(t_k, T) f for t_k = k/(samples-1), T = rearrangement_isometry(f, g).
/// The first sample is g, the last is f.
std::vector<StepFn> orbit_path(const StepFn& f, const StepFn& g, NormExponent p, int samples);

/// Full-support unit vector within eps of the unit vector g.
StepFn orbit_dense_approx(const StepFn& g, double eps, NormExponent p);

/// Random unit-norm scalar step function in the given orbit. Nonzero values have
/// magnitude in [0.1, 1] before normalization; PartialSupport draws at least one zero cell.
StepFn random_sphere_point(Rng& rng, OrbitClass orbit, NormExponent p, int max_cells = 6);

/// (T f)(t) = sigma_t f(phi^-1(t)), no density weight. T must be scalar (d = 1).
StepFn linfty_apply(const LampertiIsometry& T, const StepFn& f);

struct SeparationWitness {
  IntervalList A;
  double distance = 0.0;
};

/// Searches the cells C of the common refinement of T and S for one with
/// T chi_C != S chi_C; returns the cell with the largest sup-distance (first on
/// ties), or nothing when T and S agree on every such indicator.
std::optional<SeparationWitness> linfty_separation(const LampertiIsometry& T, const LampertiIsometry& S);

/// Cells on which both T and S act by a single affine leg and a constant sign.
std::vector<double> linfty_common_cells(const LampertiIsometry& T, const LampertiIsometry& S);

}  // namespace lpiso
