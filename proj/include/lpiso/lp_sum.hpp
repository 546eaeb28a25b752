#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "lpiso/lamperti.hpp"
#include "lpiso/random.hpp"

namespace lpiso {

using ComponentId = int;

struct Component {
  ComponentId id;
  StepFn fn;
  XSpec xspec;
};

/// Element of the finite L^p-sum (+)^p_{i in I} L^p([0,1], X_i).
class SumFn {
 public:
  /// Components are kept sorted by id; ids must be unique.
  explicit SumFn(std::vector<Component> components);

  static SumFn single(StepFn f, const XSpec& xspec, ComponentId id = 0);

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  bool contains(ComponentId id) const noexcept;
  /// Throws UnknownComponent.
  const Component& at(ComponentId id) const;

  /// Same shape, component `id` replaced by f.
  SumFn with(ComponentId id, StepFn f) const;
  /// Same shape with every component zero.
  SumFn zero_like() const;

 private:
  std::vector<Component> components_;
};

double sum_norm(const SumFn& F, NormExponent p);
/// sum_i ||F_i||^p (finite p).
double sum_norm_pow(const SumFn& F, NormExponent p);
/// P_id F.
StepFn sum_project(const SumFn& F, ComponentId id);

/// a F + b G; both must have the same ids and XSpecs.
SumFn sum_combine(double a, const SumFn& F, double b, const SumFn& G);
inline SumFn operator+(const SumFn& F, const SumFn& G) { return sum_combine(1.0, F, 1.0, G); }
inline SumFn operator-(const SumFn& F, const SumFn& G) { return sum_combine(1.0, F, -1.0, G); }

/// Generator acting by a Lamperti isometry on some components (others fixed).
struct ComponentWise {
  std::map<ComponentId, LampertiIsometry> maps;
};

/// Generator exchanging two components with identical XSpec.
struct Swap {
  ComponentId first;
  ComponentId second;
};

using Generator = std::variant<ComponentWise, Swap>;

/// Word in the generators; word[0] acts first.
struct SumIsometry {
  std::vector<Generator> word;

  static SumIsometry identity() { return {}; }
  static SumIsometry componentwise(ComponentId id, LampertiIsometry T);
};

/// The isometry F -> second(first(F)).
SumIsometry then(const SumIsometry& first, const SumIsometry& second);

SumFn apply_sum_isometry(const SumIsometry& T, const SumFn& F);

/// Throws IncompatibleSpaces unless every Lamperti map in T uses exponent p.
void require_exponent(const SumIsometry& T, NormExponent p);

/// max_k ||T F_k - S F_k||: the finite-probe SOT seminorm.
double sot_distance(const SumIsometry& T, const SumIsometry& S, const std::vector<SumFn>& probes,
                    NormExponent p);

struct SumSpec {
  int components = 2;
  XSpec xspec;
  StepSpec step;
};

SumFn random_sum_fn(Rng& rng, const SumSpec& spec);

/// Random word of ComponentWise/Swap generators over the ids of `shape`.
SumIsometry random_sum_isometry(Rng& rng, const SumFn& shape, NormExponent p, int max_pieces = 4,
                                int max_word = 3);

}  // namespace lpiso
