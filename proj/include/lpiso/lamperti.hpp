#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lpiso/step_function.hpp"
#include "lpiso/xspace.hpp"

namespace lpiso {

/// One affine, orientation-preserving leg of a rearrangement: src is sent onto dst.
struct Piece {
  Interval src;
  Interval dst;

  /// Radon-Nikodym density d(mu o phi^-1)/dmu on dst.
  double density() const noexcept { return src.length() / dst.length(); }

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Piecewise-affine bijection of [0,1] (mod null sets). Both the src and the
/// dst intervals partition [0,1] up to kSnapTol gaps.
class RearrangeMap {
 public:
  explicit RearrangeMap(std::vector<Piece> pieces);

  static RearrangeMap identity();

  /// Pieces ordered by src.
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }

  std::size_t piece_at_src(double x) const;
  std::size_t piece_at_dst(double t) const;

  /// phi restricted to piece k (endpoints within kSnapTol map exactly).
  double forward_in(std::size_t k, double x) const;
  double backward_in(std::size_t k, double t) const;
  double forward(double x) const { return forward_in(piece_at_src(x), x); }
  double backward(double t) const { return backward_in(piece_at_dst(t), t); }

  RearrangeMap inverse() const;

  friend bool operator==(const RearrangeMap& a, const RearrangeMap& b) { return a.pieces_ == b.pieces_; }

 private:
  std::vector<Piece> pieces_;
  std::vector<std::size_t> by_dst_;
};

/// Piecewise-constant field t -> sigma_t of signed permutations.
class SigmaField {
 public:
  /// Canonicalizes: thin cells absorbed on the left, equal neighbours merged.
  SigmaField(std::vector<double> breaks, std::vector<XIsom> isoms);

  static SigmaField constant(const XIsom& s);

  int dim() const noexcept { return isoms_.front().dim(); }
  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<XIsom>& isoms() const noexcept { return isoms_; }
  const XIsom& operator()(double t) const;

  friend bool operator==(const SigmaField&, const SigmaField&) = default;

 private:
  std::vector<double> breaks_;
  std::vector<XIsom> isoms_;
};

/// Isometry of L^p([0,1], X) in Lamperti form:
///   (T f)(t) = sigma_t ( d(mu o phi^-1)/dmu (t) )^{1/p} f(phi^-1(t)).
/// With p = infinity the weight is identically 1, which gives the L^inf form.
class LampertiIsometry {
 public:
  LampertiIsometry(RearrangeMap phi, NormExponent p, SigmaField sigma, XSpec xspec);

  static LampertiIsometry identity(NormExponent p, const XSpec& xspec);

  const RearrangeMap& phi() const noexcept { return phi_; }
  NormExponent p() const noexcept { return p_; }
  const SigmaField& sigma() const noexcept { return sigma_; }
  const XSpec& xspec() const noexcept { return xspec_; }

  /// (|src_k| / |dst_k|)^{1/p}.
  double weight(std::size_t piece) const;

  friend bool operator==(const LampertiIsometry&, const LampertiIsometry&) = default;

 private:
  RearrangeMap phi_;
  NormExponent p_;
  SigmaField sigma_;
  XSpec xspec_;
};

StepFn apply_lamperti(const LampertiIsometry& T, const StepFn& f);

/// The isometry f -> T(S(f)).
LampertiIsometry compose_lamperti(const LampertiIsometry& T, const LampertiIsometry& S);
LampertiIsometry invert_lamperti(const LampertiIsometry& T);

/// Random src/dst partitions (cells >= 0.02), random pairing, random sigma field
/// with at most `pieces` breakpoints. pieces = 1 gives phi = id.
LampertiIsometry random_lamperti(std::uint64_t seed, int pieces, NormExponent p, const XSpec& xspec);

/// The band (L^p-) projection f -> chi_A f.
StepFn band_projection(const IntervalList& A, const StepFn& f);

}  // namespace lpiso
