#include "lpiso/lp_sum.hpp"

#include <algorithm>
#include <cmath>

#include "lpiso/accurate_sum.hpp"
#include "lpiso/errors.hpp"

namespace lpiso {

SumFn::SumFn(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(Errc::InvalidArgument, "an L^p-sum needs at least one component");
  std::sort(components_.begin(), components_.end(),
            [](const Component& a, const Component& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (k > 0 && components_[k].id == components_[k - 1].id) {
      throw Error(Errc::InvalidArgument, "duplicate component id " + std::to_string(components_[k].id));
    }
    if (components_[k].fn.dim() != components_[k].xspec.dim) {
      throw Error(Errc::DimensionMismatch, "component function dim differs from its XSpec");
    }
  }
}

SumFn SumFn::single(StepFn f, const XSpec& xspec, ComponentId id) {
  return SumFn({Component{id, std::move(f), xspec}});
}

bool SumFn::contains(ComponentId id) const noexcept {
  return std::any_of(components_.begin(), components_.end(), [id](const Component& c) { return c.id == id; });
}

const Component& SumFn::at(ComponentId id) const {
  const auto it = std::lower_bound(components_.begin(), components_.end(), id,
                                   [](const Component& c, ComponentId v) { return c.id < v; });
  if (it == components_.end() || it->id != id) {
    throw Error(Errc::UnknownComponent, "no component with id " + std::to_string(id));
  }
  return *it;
}

SumFn SumFn::with(ComponentId id, StepFn f) const {
  std::vector<Component> comps = components_;
  for (auto& c : comps) {
    if (c.id == id) {
      if (f.dim() != c.xspec.dim) throw Error(Errc::DimensionMismatch, "replacement has the wrong dim");
      c.fn = std::move(f);
      return SumFn(std::move(comps));
    }
  }
  throw Error(Errc::UnknownComponent, "no component with id " + std::to_string(id));
}

SumFn SumFn::zero_like() const {
  std::vector<Component> comps = components_;
  for (auto& c : comps) c.fn = StepFn::zero(c.xspec.dim);
  return SumFn(std::move(comps));
}

double sum_norm_pow(const SumFn& F, NormExponent p) {
  AccurateSum acc;
  for (const auto& c : F.components()) acc += norm_p_pow(c.fn, p, c.xspec.q);
  return static_cast<double>(acc.value());
}

double sum_norm(const SumFn& F, NormExponent p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const auto& c : F.components()) m = std::max(m, norm_p(c.fn, p, c.xspec.q));
    return m;
  }
  const double s = sum_norm_pow(F, p);
  if (p.value() == 1.0) return s;
  return static_cast<double>(std::pow(static_cast<long double>(s), 1.0L / p.value()));
}

StepFn sum_project(const SumFn& F, ComponentId id) { return F.at(id).fn; }

SumFn sum_combine(double a, const SumFn& F, double b, const SumFn& G) {
  if (F.size() != G.size()) throw Error(Errc::IncompatibleSpaces, "sums over different index sets");
  std::vector<Component> out;
  out.reserve(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) {
    const Component& f = F.components()[k];
    const Component& g = G.components()[k];
    if (f.id != g.id || !(f.xspec == g.xspec)) {
      throw Error(Errc::IncompatibleSpaces, "sums over different index sets or value spaces");
    }
    out.push_back(Component{f.id, linear_combine(a, f.fn, b, g.fn), f.xspec});
  }
  return SumFn(std::move(out));
}

SumIsometry SumIsometry::componentwise(ComponentId id, LampertiIsometry T) {
  ComponentWise g;
  g.maps.emplace(id, std::move(T));
  return SumIsometry{{Generator{std::move(g)}}};
}

SumIsometry then(const SumIsometry& first, const SumIsometry& second) {
  SumIsometry out = first;
  out.word.insert(out.word.end(), second.word.begin(), second.word.end());
  return out;
}

namespace {

struct GeneratorAction {
  const SumFn& in;

  SumFn operator()(const ComponentWise& g) const {
    std::vector<Component> comps = in.components();
    for (const auto& [id, T] : g.maps) {
      auto it = std::find_if(comps.begin(), comps.end(), [id = id](const Component& c) { return c.id == id; });
      if (it == comps.end()) throw Error(Errc::UnknownComponent, "no component with id " + std::to_string(id));
      if (!(T.xspec() == it->xspec)) {
        throw Error(Errc::IncompatibleSpaces, "Lamperti map value space differs from the component's");
      }
      it->fn = apply_lamperti(T, it->fn);
    }
    return SumFn(std::move(comps));
  }

  SumFn operator()(const Swap& g) const {
    const Component& a = in.at(g.first);
    const Component& b = in.at(g.second);
    if (!(a.xspec == b.xspec)) throw Error(Errc::IncompatibleSpaces, "swap across unequal value spaces");
    if (g.first == g.second) return in;
    return in.with(g.first, b.fn).with(g.second, a.fn);
  }
};

}  // namespace

SumFn apply_sum_isometry(const SumIsometry& T, const SumFn& F) {
  SumFn cur = F;
  for (const auto& g : T.word) cur = std::visit(GeneratorAction{cur}, g);
  return cur;
}

void require_exponent(const SumIsometry& T, NormExponent p) {
  for (const auto& g : T.word) {
    if (const auto* cw = std::get_if<ComponentWise>(&g)) {
      for (const auto& [id, L] : cw->maps) {
        if (!(L.p() == p)) {
          throw Error(Errc::IncompatibleSpaces, "Lamperti map on component " + std::to_string(id) +
                                                    " has a different exponent");
        }
      }
    }
  }
}

double sot_distance(const SumIsometry& T, const SumIsometry& S, const std::vector<SumFn>& probes,
                    NormExponent p) {
  if (probes.empty()) throw Error(Errc::EmptyProbeSet, "SOT distance needs at least one probe");
  double d = 0.0;
  for (const auto& x : probes) {
    d = std::max(d, sum_norm(apply_sum_isometry(T, x) - apply_sum_isometry(S, x), p));
  }
  return d;
}

SumFn random_sum_fn(Rng& rng, const SumSpec& spec) {
  std::vector<Component> comps;
  StepSpec step = spec.step;
  step.dim = spec.xspec.dim;
  for (int i = 0; i < spec.components; ++i) comps.push_back(Component{i, random_step(rng, step), spec.xspec});
  return SumFn(std::move(comps));
}

SumIsometry random_sum_isometry(Rng& rng, const SumFn& shape, NormExponent p, int max_pieces, int max_word) {
  SumIsometry T;
  const int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_word)));
  const auto& comps = shape.components();
  for (int w = 0; w < len; ++w) {
    const bool swap = comps.size() > 1 && rng.coin(0.3);
    if (swap) {
      const auto a = rng.below(comps.size());
      auto b = rng.below(comps.size() - 1);
      if (b >= a) ++b;
      if (comps[a].xspec == comps[b].xspec) {
        T.word.emplace_back(Swap{comps[a].id, comps[b].id});
        continue;
      }
    }
    ComponentWise g;
    for (const auto& c : comps) {
      if (!rng.coin(0.8)) continue;
      const int pieces = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_pieces)));
      g.maps.emplace(c.id, random_lamperti(rng.next(), pieces, p, c.xspec));
    }
    T.word.emplace_back(std::move(g));
  }
  return T;
}

}  // namespace lpiso
