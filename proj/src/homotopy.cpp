#include "lpiso/homotopy.hpp"

#include <algorithm>
#include <cmath>

#include "lpiso/errors.hpp"

namespace lpiso {

HomotopyTime::HomotopyTime(double t) : t_(t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::InvalidArgument, "homotopy time must lie in [0,1]");
}

namespace {

double root_p(double x, NormExponent p) {
  if (p.is_infinite()) return 1.0;
  if (p.value() == 1.0) return x;
  if (p.value() == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p.value());
}

}  // namespace

StepFn alpha(HomotopyTime t, const StepFn& f) {
  const double tv = t.value();
  if (tv <= kSnapTol) return StepFn::zero(f.dim());
  if (tv >= 1.0) return f;
  return indicator_multiply(f, {Interval(0.0, tv)});
}

StepFn beta(HomotopyTime t, const StepFn& f, NormExponent p) {
  const double tv = t.value();
  if (tv >= 1.0) return StepFn::zero(f.dim());
  const double len = 1.0 - tv;
  if (tv == 0.0) return f;
  return root_p(len, p) * pullback_affine(f, tv, len);
}

StepFn gamma(HomotopyTime t, const StepFn& g, NormExponent p) {
  const double tv = t.value();
  if (tv >= 1.0) return StepFn::zero(g.dim());
  if (tv == 0.0) return g;
  const double len = 1.0 - tv;
  return (1.0 / root_p(len, p)) * pushforward_affine(g, tv, len);
}

HomotopyParts homotopy_parts(HomotopyTime t, const SumIsometry& T, const SumFn& F, NormExponent p) {
  require_exponent(T, p);
  std::vector<Component> a;
  std::vector<Component> b;
  a.reserve(F.size());
  b.reserve(F.size());
  for (const auto& c : F.components()) {
    a.push_back(Component{c.id, alpha(t, c.fn), c.xspec});
    b.push_back(Component{c.id, beta(t, c.fn, p), c.xspec});
  }
  const SumFn moved = apply_sum_isometry(T, SumFn(std::move(b)));
  std::vector<Component> g;
  g.reserve(F.size());
  for (const auto& c : F.components()) {
    g.push_back(Component{c.id, gamma(t, sum_project(moved, c.id), p), c.xspec});
  }
  return HomotopyParts{SumFn(std::move(a)), SumFn(std::move(g))};
}

SumFn homotopy_apply(HomotopyTime t, const SumIsometry& T, const SumFn& F, NormExponent p) {
  // Shortcuts keep the endpoint identities exact.
  if (t.value() >= 1.0) {
    require_exponent(T, p);
    return F;
  }
  auto parts = homotopy_parts(t, T, F, p);
  if (t.value() == 0.0) return parts.gamma_part;
  return parts.alpha_part + parts.gamma_part;
}

double fact2_integral(const StepFn& f, double t0, double t, NormExponent p, NormExponent q) {
  if (!(t0 >= 0.0 && t0 < 1.0)) throw Error(Errc::InvalidT0, "t0 must lie in [0,1)");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::InvalidArgument, "t must lie in [0,1]");
  // Substituting s = t0 + (1-t0)u turns f(h_t(s)) into f(t + (1-t)u).
  const StepFn base = pullback_affine(f, t0, 1.0 - t0);
  const StepFn moved = t >= 1.0 ? StepFn::constant(f.values().back()) : pullback_affine(f, t, 1.0 - t);
  return (1.0 - t0) * norm_p_pow(moved - base, p, q);
}

std::vector<double> continuity_probe(const SumIsometry& T, const SumFn& F, double t0,
                                     const std::vector<double>& deltas, NormExponent p) {
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0) || (k > 0 && deltas[k] > deltas[k - 1])) {
      throw Error(Errc::InvalidArgument, "deltas must be positive and decreasing");
    }
  }
  const SumFn ref = homotopy_apply(t0, T, F, p);
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) {
    double worst = 0.0;
    for (double t : {t0 - d, t0 - d / 2, t0 + d / 2, t0 + d}) {
      if (t < 0.0 || t > 1.0) continue;
      worst = std::max(worst, sum_norm(homotopy_apply(t, T, F, p) - ref, p));
    }
    out.push_back(worst);
  }
  return out;
}

namespace {

// Near-identity rearrangement on every component: [0,c] -> [0,c+shift],
// [c,1] -> [c+shift,1], with a sign flip on the moved sliver.
SumIsometry nudge(Rng& rng, const SumFn& shape, NormExponent p, double size) {
  ComponentWise g;
  for (const auto& comp : shape.components()) {
    const double c = rng.uniform(0.2, 0.8);
    const double shift = rng.coin() ? size : -size;
    const double m = c + shift;
    RearrangeMap phi({Piece{Interval(0.0, c), Interval(0.0, m)}, Piece{Interval(c, 1.0), Interval(m, 1.0)}});
    const int d = comp.xspec.dim;
    SigmaField sigma({0.0, std::min(c, m), std::max(c, m), 1.0},
                     {XIsom::identity(d), XIsom::negation(d), XIsom::identity(d)});
    g.maps.emplace(comp.id, LampertiIsometry(std::move(phi), p, std::move(sigma), comp.xspec));
  }
  return SumIsometry{{Generator{std::move(g)}}};
}

}  // namespace

SotSearchResult sot_continuity_search(const SumIsometry& T, const SumFn& F, double t0, double eps,
                                      NormExponent p, std::uint64_t seed, int max_rounds) {
  if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  const HomotopyTime start(t0);
  Rng rng(seed);
  const double n = static_cast<double>(F.size());
  const SumFn ref = homotopy_apply(start, T, F, p);

  std::vector<SumFn> probes;
  for (const auto& c : F.components()) probes.push_back(F.zero_like().with(c.id, beta(start, c.fn, p)));

  SotSearchResult res;
  double delta = 0.25;
  double radius = eps / (4.0 * n);
  // Below the snap tolerance time shifts stop being resolved, so success there would be vacuous.
  int round = 1;
  for (; round <= max_rounds && delta >= 10.0 * kSnapTol; ++round, delta /= 2.0, radius /= 2.0) {
    // Delta_j: beta_j(., f_j) stays within eps/4n of beta_j(t0, f_j).
    std::vector<double> times{t0};
    for (double frac : {0.999, 0.5, 0.25}) {
      for (double t : {t0 - frac * delta, t0 + frac * delta}) {
        if (t >= 0.0 && t <= 1.0) times.push_back(t);
      }
    }
    // Sufficient, not necessary: recorded, but the search gates on h itself.
    bool beta_ok = true;
    for (const auto& c : F.components()) {
      const StepFn b0 = beta(start, c.fn, p);
      for (double t : times) {
        if (norm_p(beta(t, c.fn, p) - b0, p, c.xspec.q) >= eps / (4.0 * n)) beta_ok = false;
      }
    }

    // Members of the SOT ball: T itself and T precomposed with shrinking nudges.
    std::vector<SumIsometry> members{T};
    for (int attempt = 0; attempt < 4; ++attempt) {
      double size = radius;
      for (int shrink = 0; shrink < 40; ++shrink, size /= 4.0) {
        SumIsometry S = then(nudge(rng, F, p, size), T);
        if (sot_distance(S, T, probes, p) < radius) {
          members.push_back(std::move(S));
          break;
        }
      }
    }

    double worst = 0.0;
    int tested = 0;
    bool ok = true;
    for (const auto& S : members) {
      for (double t : times) {
        const double d = sum_norm(homotopy_apply(t, S, F, p) - ref, p);
        worst = std::max(worst, d);
        ++tested;
        if (!(d < eps)) ok = false;
      }
    }
    if (ok) {
      res.found = true;
      res.delta = delta;
      res.probe_radius = radius;
      res.rounds = round;
      res.tested = tested;
      res.perturbed = static_cast<int>(members.size()) - 1;
      res.worst = worst;
      res.beta_within = beta_ok;
      return res;
    }
  }
  res.rounds = round - 1;
  return res;
}

}  // namespace lpiso
