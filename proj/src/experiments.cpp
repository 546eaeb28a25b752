#include "lpiso/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "lpiso/accurate_sum.hpp"
#include "lpiso/detail/breaks.hpp"
#include "lpiso/errors.hpp"

namespace lpiso {

namespace {

const XSpec kScalar{1, 2.0};
constexpr double kUnitTol = 1e-9;
// Residual widths below this are absorbed when matching segments.
constexpr double kAbsorb = 4.0 * kSnapTol;

void require_scalar(const StepFn& f) {
  if (f.dim() != 1) throw Error(Errc::DimensionMismatch, "orbit operations need scalar (d = 1) functions");
}

void require_unit(const StepFn& f, NormExponent p) {
  require_scalar(f);
  if (std::fabs(norm_p(f, p, 1.0) - 1.0) > kUnitTol) {
    throw Error(Errc::NotUnitNorm, "function is not on the unit sphere");
  }
}

double pow_p(double x, double p) { return p == 1.0 ? x : std::pow(x, p); }

// A run of [lo, hi] carrying normalized measure `dens` per unit length.
struct Segment {
  double lo;
  double hi;
  double dens;
  int sign;
};

struct Split {
  std::vector<Segment> support;
  std::vector<Segment> zeros;
};

// Support cells weighted by |f|^p (p-mass), zero cells weighted by length;
// both families normalized to total measure 1.
Split split(const StepFn& f, double p) {
  Split s;
  AccurateSum mass;
  AccurateSum zero_len;
  for (std::size_t k = 0; k < f.cells(); ++k) {
    const double v = f.value(k)[0];
    if (std::fabs(v) > kSnapTol) {
      s.support.push_back({f.breaks()[k], f.breaks()[k + 1], pow_p(std::fabs(v), p), v > 0 ? 1 : -1});
      mass += f.width(k) * pow_p(std::fabs(v), p);
    } else {
      s.zeros.push_back({f.breaks()[k], f.breaks()[k + 1], 1.0, 1});
      zero_len += f.width(k);
    }
  }
  for (auto& seg : s.support) seg.dens /= static_cast<double>(mass.value());
  for (auto& seg : s.zeros) seg.dens /= static_cast<double>(zero_len.value());
  return s;
}

struct Leg {
  Piece piece;
  int sign;
};

// Monotone matching of cumulative measure: the k-th quantile of `from` goes to
// the k-th quantile of `to`. Positions drive the walk, so any absorbed residue
// is carried forward consistently.
void match(const std::vector<Segment>& from, const std::vector<Segment>& to, bool signed_legs,
           std::vector<Leg>& out) {
  std::size_t i = 0;
  std::size_t j = 0;
  double a = from.empty() ? 0.0 : from[0].lo;
  double b = to.empty() ? 0.0 : to[0].lo;
  while (i < from.size() && j < to.size()) {
    const Segment& A = from[i];
    const Segment& B = to[j];
    const bool lastA = i + 1 == from.size();
    const bool lastB = j + 1 == to.size();
    const double remA = (A.hi - a) * A.dens;
    const double remB = (B.hi - b) * B.dens;
    double endA;
    double endB;
    if (lastA && lastB) {
      endA = A.hi;
      endB = B.hi;
    } else if (lastB || (!lastA && remA <= remB)) {
      endA = A.hi;
      endB = b + remA / B.dens;
      if (lastB) {
        endB = std::min(endB, B.hi - kAbsorb);
      } else if (B.hi - endB <= kAbsorb) {
        endB = B.hi;
      }
    } else {
      endB = B.hi;
      endA = a + remB / A.dens;
      if (lastA) {
        endA = std::min(endA, A.hi - kAbsorb);
      } else if (A.hi - endA <= kAbsorb) {
        endA = A.hi;
      }
    }
    if (endA - a <= 2.0 * kSnapTol) endA = std::min(A.hi, a + 2.0 * kSnapTol);
    if (endB - b <= 2.0 * kSnapTol) endB = std::min(B.hi, b + 2.0 * kSnapTol);
    out.push_back(Leg{Piece{Interval(a, endA), Interval(b, endB)}, signed_legs ? A.sign * B.sign : 1});
    if (endA >= A.hi) {
      if (++i < from.size()) a = from[i].lo;
    } else {
      a = endA;
    }
    if (endB >= B.hi) {
      if (++j < to.size()) b = to[j].lo;
    } else {
      b = endB;
    }
  }
  if (i < from.size() || j < to.size()) {
    throw Error(Errc::InvalidArgument, "measure matching did not exhaust both sides");
  }
}

}  // namespace

std::string_view to_string(OrbitClass c) noexcept {
  return c == OrbitClass::FullSupport ? "FULL_SUPPORT" : "PARTIAL_SUPPORT";
}

double lamperti_functional(const StepFn& f, const StepFn& g, NormExponent p, NormExponent q) {
  const StepFn sum = f + g;
  const StepFn diff = f - g;
  if (p.value() == 1.0) {
    return norm_p(sum, p, q) + norm_p(diff, p, q) - 2.0 * (norm_p(f, p, q) + norm_p(g, p, q));
  }
  AccurateSum acc;
  acc += norm_p_pow(sum, p, q);
  acc += norm_p_pow(diff, p, q);
  acc += -2.0L * norm_p_pow(f, p, q);
  acc += -2.0L * norm_p_pow(g, p, q);
  return static_cast<double>(acc.value());
}

OrbitClass orbit_class(const StepFn& f, NormExponent p) {
  require_unit(f, p);
  return support_measure(f) >= 1.0 - kSnapTol ? OrbitClass::FullSupport : OrbitClass::PartialSupport;
}

LampertiIsometry rearrangement_isometry(const StepFn& f, const StepFn& g, NormExponent p) {
  if (p.is_infinite()) throw Error(Errc::InvalidArgument, "rearrangement needs a finite exponent");
  if (orbit_class(f, p) != orbit_class(g, p)) throw Error(Errc::OrbitMismatch, "orbit mismatch");

  const Split sf = split(f, p.value());
  const Split sg = split(g, p.value());
  std::vector<Leg> legs;
  match(sf.support, sg.support, true, legs);
  match(sf.zeros, sg.zeros, false, legs);

  std::vector<Piece> pieces;
  pieces.reserve(legs.size());
  for (const auto& l : legs) pieces.push_back(l.piece);

  std::sort(legs.begin(), legs.end(), [](const Leg& x, const Leg& y) { return x.piece.dst.lo() < y.piece.dst.lo(); });
  std::vector<double> breaks;
  std::vector<XIsom> isoms;
  for (const auto& l : legs) {
    breaks.push_back(l.piece.dst.lo());
    isoms.push_back(XIsom({0}, {l.sign}));
  }
  breaks.front() = 0.0;
  breaks.push_back(1.0);
  return LampertiIsometry(RearrangeMap(std::move(pieces)), p, SigmaField(std::move(breaks), std::move(isoms)),
                          kScalar);
}

std::vector<StepFn> orbit_path(const StepFn& f, const StepFn& g, NormExponent p, int samples) {
  if (samples < 2) throw Error(Errc::InvalidArgument, "an orbit path needs at least 2 samples");
  const SumIsometry T = SumIsometry::componentwise(0, rearrangement_isometry(f, g, p));
  const SumFn F = SumFn::single(f, kScalar);
  std::vector<StepFn> path;
  path.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = k + 1 == samples ? 1.0 : static_cast<double>(k) / (samples - 1);
    path.push_back(sum_project(homotopy_apply(t, T, F, p), 0));
  }
  return path;
}

StepFn orbit_dense_approx(const StepFn& g, double eps, NormExponent p) {
  if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  if (orbit_class(g, p) == OrbitClass::FullSupport) return g;

  const double zero_len = 1.0 - support_measure(g);
  // ||r - g|| <= 2 c |Z|^{1/p} for r = (g + c chi_Z)/||g + c chi_Z||.
  const double c = eps / (4.0 * std::pow(zero_len, 1.0 / p.value()));
  if (c <= 10.0 * kSnapTol) throw Error(Errc::InvalidArgument, "eps too small to resolve the support");
  std::vector<Vector> vals;
  vals.reserve(g.cells());
  for (const auto& v : g.values()) {
    vals.push_back(std::fabs(v[0]) > kSnapTol ? v : Vector::Constant(1, c));
  }
  const StepFn raw = make_step({g.breaks().begin(), g.breaks().end()}, std::move(vals));
  return (1.0 / norm_p(raw, p, 1.0)) * raw;
}

StepFn random_sphere_point(Rng& rng, OrbitClass orbit, NormExponent p, int max_cells) {
  const bool partial = orbit == OrbitClass::PartialSupport;
  const int cells = (partial ? 2 : 1) + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_cells)));
  const std::vector<double> breaks = random_partition(rng, cells, 0.02);
  const auto forced_zero = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(cells)));
  std::vector<Vector> vals;
  bool any_nonzero = false;
  for (std::size_t k = 0; k < static_cast<std::size_t>(cells); ++k) {
    const bool zero = partial && (k == forced_zero || rng.coin(0.25));
    double v = 0.0;
    if (!zero) {
      v = rng.uniform(0.1, 1.0) * (rng.coin() ? 1.0 : -1.0);
      any_nonzero = true;
    }
    vals.push_back(Vector::Constant(1, v));
  }
  if (!any_nonzero) vals[(forced_zero + 1) % vals.size()][0] = 1.0;
  const StepFn raw = make_step(breaks, std::move(vals));
  return (1.0 / norm_p(raw, p, 1.0)) * raw;
}

StepFn linfty_apply(const LampertiIsometry& T, const StepFn& f) {
  require_scalar(f);
  const LampertiIsometry unweighted(T.phi(), NormExponent::infinity(), T.sigma(), T.xspec());
  return apply_lamperti(unweighted, f);
}

std::vector<double> linfty_common_cells(const LampertiIsometry& T, const LampertiIsometry& S) {
  std::vector<double> primary;
  std::vector<double> images;
  for (const LampertiIsometry* U : {&T, &S}) {
    for (const auto& pc : U->phi().pieces()) {
      primary.push_back(pc.src.lo());
      primary.push_back(pc.src.hi());
    }
    for (double b : U->sigma().breaks()) images.push_back(U->phi().backward(b));
  }
  return detail::merge_breaks(std::move(primary), std::move(images));
}

std::optional<SeparationWitness> linfty_separation(const LampertiIsometry& T, const LampertiIsometry& S) {
  const std::vector<double> cells = linfty_common_cells(T, S);
  std::optional<SeparationWitness> best;
  const StepFn one = StepFn::constant(Vector::Constant(1, 1.0));
  for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
    const IntervalList A{Interval(cells[k], cells[k + 1])};
    const StepFn chi = indicator_multiply(one, A);
    const double d = norm_p(linfty_apply(T, chi) - linfty_apply(S, chi), NormExponent::infinity(), 1.0);
    if (d > 0.0 && (!best || d > best->distance)) best = SeparationWitness{A, d};
  }
  return best;
}

}  // namespace lpiso
