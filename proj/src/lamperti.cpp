#include "lpiso/lamperti.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpiso/detail/breaks.hpp"
#include "lpiso/errors.hpp"
#include "lpiso/random.hpp"

namespace lpiso {

using detail::merge_breaks;
using detail::midpoint;

// ---------------------------------------------------------------------------
// RearrangeMap

namespace {

template <class Get>
void check_partition(const std::vector<std::size_t>& order, Get get, const char* which) {
  const Interval& first = get(order.front());
  if (first.lo() > kSnapTol) {
    throw Error(Errc::CoverageError, std::string(which) + " intervals do not start at 0");
  }
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double prev_hi = get(order[k - 1]).hi();
    const double lo = get(order[k]).lo();
    if (lo < prev_hi - kSnapTol) {
      throw Error(Errc::OverlappingIntervals, std::string(which) + " intervals overlap");
    }
    if (lo > prev_hi + kSnapTol) {
      throw Error(Errc::CoverageError, std::string(which) + " intervals leave a gap");
    }
  }
  if (get(order.back()).hi() < 1.0 - kSnapTol) {
    throw Error(Errc::CoverageError, std::string(which) + " intervals do not reach 1");
  }
}

}  // namespace

RearrangeMap::RearrangeMap(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(Errc::CoverageError, "rearrangement needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.src.lo() < b.src.lo(); });
  std::vector<std::size_t> by_src(pieces_.size());
  std::iota(by_src.begin(), by_src.end(), 0);
  check_partition(by_src, [this](std::size_t k) -> const Interval& { return pieces_[k].src; }, "src");

  by_dst_ = by_src;
  std::sort(by_dst_.begin(), by_dst_.end(),
            [this](std::size_t a, std::size_t b) { return pieces_[a].dst.lo() < pieces_[b].dst.lo(); });
  check_partition(by_dst_, [this](std::size_t k) -> const Interval& { return pieces_[k].dst; }, "dst");
}

RearrangeMap RearrangeMap::identity() { return RearrangeMap({Piece{Interval(0.0, 1.0), Interval(0.0, 1.0)}}); }

std::size_t RearrangeMap::piece_at_src(double x) const {
  const auto it = std::upper_bound(pieces_.begin() + 1, pieces_.end(), x,
                                   [](double v, const Piece& pc) { return v < pc.src.lo(); });
  return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

std::size_t RearrangeMap::piece_at_dst(double t) const {
  const auto it = std::upper_bound(by_dst_.begin() + 1, by_dst_.end(), t,
                                   [this](double v, std::size_t k) { return v < pieces_[k].dst.lo(); });
  return *(it - 1);
}

double RearrangeMap::forward_in(std::size_t k, double x) const {
  const Piece& pc = pieces_[k];
  if (x - pc.src.lo() <= kSnapTol) return pc.dst.lo();
  if (pc.src.hi() - x <= kSnapTol) return pc.dst.hi();
  return pc.dst.lo() + (x - pc.src.lo()) * (pc.dst.length() / pc.src.length());
}

double RearrangeMap::backward_in(std::size_t k, double t) const {
  const Piece& pc = pieces_[k];
  if (t - pc.dst.lo() <= kSnapTol) return pc.src.lo();
  if (pc.dst.hi() - t <= kSnapTol) return pc.src.hi();
  return pc.src.lo() + (t - pc.dst.lo()) * (pc.src.length() / pc.dst.length());
}

RearrangeMap RearrangeMap::inverse() const {
  std::vector<Piece> inv;
  inv.reserve(pieces_.size());
  for (const auto& pc : pieces_) inv.push_back(Piece{pc.dst, pc.src});
  return RearrangeMap(std::move(inv));
}

// ---------------------------------------------------------------------------
// SigmaField

SigmaField::SigmaField(std::vector<double> breaks, std::vector<XIsom> isoms) {
  if (breaks.size() < 2 || isoms.size() + 1 != breaks.size()) {
    throw Error(Errc::DimensionMismatch, "sigma field needs breaks.size() == isoms.size() + 1 >= 2");
  }
  if (std::fabs(breaks.front()) > kSnapTol || std::fabs(breaks.back() - 1.0) > kSnapTol) {
    throw Error(Errc::CoverageError, "sigma breaks must start at 0 and end at 1");
  }
  const int dim = isoms.front().dim();
  for (const auto& s : isoms) {
    if (s.dim() != dim) throw Error(Errc::DimensionMismatch, "sigma isometries of unequal dimension");
  }
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (!std::isfinite(breaks[k]) || breaks[k + 1] < breaks[k] - kSnapTol) {
      throw Error(Errc::NonMonotoneBreaks, "sigma breaks must be non-decreasing");
    }
  }
  breaks.front() = 0.0;
  breaks.back() = 1.0;
  breaks_.push_back(0.0);
  for (std::size_t k = 0; k < isoms.size(); ++k) {
    const double hi = breaks[k + 1];
    if (hi - breaks_.back() <= kSnapTol) {
      if (!isoms_.empty()) breaks_.back() = std::max(breaks_.back(), hi);
      continue;
    }
    if (!isoms_.empty() && isoms_.back() == isoms[k]) {
      breaks_.back() = hi;
      continue;
    }
    isoms_.push_back(std::move(isoms[k]));
    breaks_.push_back(hi);
  }
  breaks_.back() = 1.0;
}

SigmaField SigmaField::constant(const XIsom& s) { return SigmaField({0.0, 1.0}, {s}); }

const XIsom& SigmaField::operator()(double t) const {
  const auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, t);
  return isoms_[static_cast<std::size_t>(it - (breaks_.begin() + 1))];
}

// ---------------------------------------------------------------------------
// LampertiIsometry

LampertiIsometry::LampertiIsometry(RearrangeMap phi, NormExponent p, SigmaField sigma, XSpec xspec)
    : phi_(std::move(phi)), p_(p), sigma_(std::move(sigma)), xspec_(xspec) {
  if (sigma_.dim() != xspec_.dim) {
    throw Error(Errc::DimensionMismatch, "sigma field dimension differs from XSpec dim");
  }
}

LampertiIsometry LampertiIsometry::identity(NormExponent p, const XSpec& xspec) {
  return LampertiIsometry(RearrangeMap::identity(), p, SigmaField::constant(XIsom::identity(xspec.dim)), xspec);
}

double LampertiIsometry::weight(std::size_t piece) const {
  if (p_.is_infinite()) return 1.0;
  const double d = phi_.pieces()[piece].density();
  const double p = p_.value();
  if (p == 1.0) return d;
  if (p == 2.0) return std::sqrt(d);
  return std::pow(d, 1.0 / p);
}

StepFn apply_lamperti(const LampertiIsometry& T, const StepFn& f) {
  if (f.dim() != T.xspec().dim) throw Error(Errc::DimensionMismatch, "function dim differs from XSpec dim");
  const RearrangeMap& phi = T.phi();

  std::vector<double> primary = T.sigma().breaks();
  for (const auto& pc : phi.pieces()) {
    primary.push_back(pc.dst.lo());
    primary.push_back(pc.dst.hi());
  }
  std::vector<double> images;
  const auto fb = f.breaks();
  for (std::size_t j = 1; j + 1 < fb.size(); ++j) {
    const std::size_t k = phi.piece_at_src(fb[j]);
    const Piece& pc = phi.pieces()[k];
    if (fb[j] - pc.src.lo() > kSnapTol && pc.src.hi() - fb[j] > kSnapTol) {
      images.push_back(phi.forward_in(k, fb[j]));
    }
  }
  const std::vector<double> breaks = merge_breaks(std::move(primary), std::move(images));

  std::vector<Vector> vals;
  vals.reserve(breaks.size() - 1);
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    const double t = midpoint(breaks, c);
    const std::size_t k = phi.piece_at_dst(t);
    const double x = phi.backward_in(k, t);
    vals.push_back(T.weight(k) * x_apply(T.sigma()(t), f(x)));
  }
  return make_step(std::vector<double>(breaks), std::move(vals));
}

namespace {

void require_compatible(const LampertiIsometry& T, const LampertiIsometry& S) {
  if (!(T.p() == S.p()) || !(T.xspec() == S.xspec())) {
    throw Error(Errc::IncompatibleSpaces, "isometries act on different spaces");
  }
}

}  // namespace

LampertiIsometry compose_lamperti(const LampertiIsometry& T, const LampertiIsometry& S) {
  require_compatible(T, S);
  const RearrangeMap& pt = T.phi();
  const RearrangeMap& ps = S.phi();

  // phi = phi_T o phi_S, refined along the overlaps dst(S-piece) cap src(T-piece).
  std::vector<Piece> pieces;
  for (std::size_t a = 0; a < ps.size(); ++a) {
    const Interval& mid = ps.pieces()[a].dst;
    for (std::size_t b = 0; b < pt.size(); ++b) {
      const Interval& tsrc = pt.pieces()[b].src;
      const double lo = std::max(mid.lo(), tsrc.lo());
      const double hi = std::min(mid.hi(), tsrc.hi());
      if (!(hi - lo > kSnapTol)) continue;
      pieces.push_back(Piece{Interval(ps.backward_in(a, lo), ps.backward_in(a, hi)),
                             Interval(pt.forward_in(b, lo), pt.forward_in(b, hi))});
    }
  }
  RearrangeMap phi(std::move(pieces));

  // sigma_t = sigma^T_t o sigma^S_{phi_T^-1(t)}
  std::vector<double> primary = T.sigma().breaks();
  for (const auto& pc : phi.pieces()) {
    primary.push_back(pc.dst.lo());
    primary.push_back(pc.dst.hi());
  }
  std::vector<double> images;
  for (double b : S.sigma().breaks()) images.push_back(pt.forward(b));
  const std::vector<double> breaks = merge_breaks(std::move(primary), std::move(images));
  std::vector<XIsom> isoms;
  isoms.reserve(breaks.size() - 1);
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    const double t = midpoint(breaks, c);
    isoms.push_back(x_compose(T.sigma()(t), S.sigma()(pt.backward(t))));
  }
  return LampertiIsometry(std::move(phi), T.p(), SigmaField(breaks, std::move(isoms)), T.xspec());
}

LampertiIsometry invert_lamperti(const LampertiIsometry& T) {
  const RearrangeMap& phi = T.phi();
  // (T^-1 g)(x) = (sigma_{phi(x)})^-1 w^-1 g(phi(x))
  std::vector<double> primary;
  for (const auto& pc : phi.pieces()) {
    primary.push_back(pc.src.lo());
    primary.push_back(pc.src.hi());
  }
  std::vector<double> images;
  for (double b : T.sigma().breaks()) images.push_back(phi.backward(b));
  const std::vector<double> breaks = merge_breaks(std::move(primary), std::move(images));
  std::vector<XIsom> isoms;
  isoms.reserve(breaks.size() - 1);
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    isoms.push_back(x_invert(T.sigma()(phi.forward(midpoint(breaks, c)))));
  }
  return LampertiIsometry(phi.inverse(), T.p(), SigmaField(breaks, std::move(isoms)), T.xspec());
}

LampertiIsometry random_lamperti(std::uint64_t seed, int pieces, NormExponent p, const XSpec& xspec) {
  if (pieces < 1 || pieces > 49) throw Error(Errc::InvalidArgument, "pieces must lie in [1, 49]");
  Rng rng(seed);
  const std::vector<double> src = random_partition(rng, pieces, 0.02);
  const std::vector<double> dst = random_partition(rng, pieces, 0.02);
  const std::vector<int> pairing = random_permutation(rng, pieces);
  std::vector<Piece> ps;
  ps.reserve(static_cast<std::size_t>(pieces));
  for (std::size_t k = 0; k < static_cast<std::size_t>(pieces); ++k) {
    const auto j = static_cast<std::size_t>(pairing[k]);
    ps.push_back(Piece{Interval(src[k], src[k + 1]), Interval(dst[j], dst[j + 1])});
  }

  const int sigma_cells = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(pieces) + 1));
  std::vector<double> sb = random_partition(rng, sigma_cells, 0.02);
  std::vector<XIsom> isoms;
  isoms.reserve(static_cast<std::size_t>(sigma_cells));
  for (int k = 0; k < sigma_cells; ++k) isoms.push_back(random_xisom(rng, xspec.dim));
  return LampertiIsometry(RearrangeMap(std::move(ps)), p, SigmaField(std::move(sb), std::move(isoms)), xspec);
}

StepFn band_projection(const IntervalList& A, const StepFn& f) { return indicator_multiply(f, A); }

}  // namespace lpiso
