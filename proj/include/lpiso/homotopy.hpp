#pragma once

#include <cstdint>
#include <vector>

#include "lpiso/lp_sum.hpp"

namespace lpiso {

/// A time t in [0, 1].
class HomotopyTime {
 public:
  HomotopyTime(double t);  // NOLINT(google-explicit-constructor)
  double value() const noexcept { return t_; }

 private:
  double t_;
};

/// alpha(t, f) = chi_[0,t] f.
StepFn alpha(HomotopyTime t, const StepFn& f);

/// beta(t, f)(s) = (1-t)^{1/p} f(t + (1-t)s); beta(1, .) = 0.
/// ||beta(t,f)||^p = int_t^1 ||f||^p, so beta is contractive.
StepFn beta(HomotopyTime t, const StepFn& f, NormExponent p);

/// gamma(t, g)(u) = (1-t)^{-1/p} g((u-t)/(1-t)) on [t,1], zero on [0,t);
/// gamma(1, .) = 0. Isometric onto the band [t,1] for t < 1, and
/// gamma(t, beta(t, f)) = chi_[t,1] f.
StepFn gamma(HomotopyTime t, const StepFn& g, NormExponent p);

/// The two disjointly supported summands of h(t,T)F.
struct HomotopyParts {
  SumFn alpha_part;  ///< sum_i alpha_i(t, f_i)
  SumFn gamma_part;  ///< sum_i gamma_i(t, P_i T(sum_i beta_i(t, f_i)))
};

HomotopyParts homotopy_parts(HomotopyTime t, const SumIsometry& T, const SumFn& F, NormExponent p);

/// h(t,T)F = sum_i alpha_i(t,f_i) + sum_i gamma_i(t, P_i T(sum_i beta_i(t,f_i))).
/// h(0,T) = T, h(1,T) = id, and every h(t,T) is an isometry.
SumFn homotopy_apply(HomotopyTime t, const SumIsometry& T, const SumFn& F, NormExponent p);

/// int_{t0}^1 ||f(h_t(s)) - f(h_{t0}(s))||_q^p ds with
/// h_t(s) = (t-t0)/(1-t0) + (1-t)/(1-t0) s, computed exactly on a common refinement.
double fact2_integral(const StepFn& f, double t0, double t, NormExponent p, NormExponent q = 2.0);

/// For each delta: max over t in {t0 +- delta, t0 +- delta/2} cap [0,1] of
/// ||h(t,T)F - h(t0,T)F||.
std::vector<double> continuity_probe(const SumIsometry& T, const SumFn& F, double t0,
                                     const std::vector<double>& deltas, NormExponent p);

struct SotSearchResult {
  bool found = false;
  double delta = 0.0;         ///< time radius of the accepted neighbourhood
  double probe_radius = 0.0;  ///< SOT radius around T on the beta(t0, f_j) probes
  int rounds = 0;
  int tested = 0;             ///< (t, S) pairs checked in the accepted round
  int perturbed = 0;          ///< how many of those S differ from T
  double worst = 0.0;         ///< max ||h(t,S)F - h(t0,T)F|| seen in the accepted round
  bool beta_within = false;   ///< beta_j(t, f_j) stayed within eps/4n of beta_j(t0, f_j) as well
};

/// Searches a neighbourhood |t - t0| < delta, SOT-ball of radius r around T
/// (probes beta(t0, f_j)) on which ||h(t,S)F - h(t0,T)F|| < eps, mirroring the
/// delta/4n argument: starts from r = eps/(4n) and halves delta and r until every
/// sampled (t, S) passes. The beta closeness of the argument is reported but not required. S ranges over T precomposed with near-identity
/// rearrangements. Gives up once delta drops below 10 * kSnapTol.
SotSearchResult sot_continuity_search(const SumIsometry& T, const SumFn& F, double t0, double eps,
                                      NormExponent p, std::uint64_t seed, int max_rounds = 48);

}  // namespace lpiso
