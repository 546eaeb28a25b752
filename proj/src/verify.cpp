#include "lpiso/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>

#include "lpiso/errors.hpp"

namespace lpiso {

namespace {

// Outcome of one trial: the largest measured error and the first violated check.
struct Check {
  double error = 0.0;
  bool ok = true;
  std::string detail;

  void bound(double err, double tol, const char* what) {
    error = std::max(error, err);
    if (!(err <= tol)) fail(what);
  }
  void require(bool cond, const char* what) {
    if (!cond) fail(what);
  }
  void fail(const char* what) {
    if (ok) detail = what;
    ok = false;
  }
};

struct Trial {
  Rng& rng;
  NormExponent p;
  const RunConfig& cfg;

  XSpec xspec() const { return XSpec(cfg.d, cfg.q); }
  std::uint64_t seed() { return rng.next(); }
};

using SuiteFn = std::function<void(Trial&, Check&)>;

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

StepFn random_fn(Trial& tr, int max_cells = 7, double zero_prob = 0.0) {
  return random_step(tr.rng, StepSpec{tr.cfg.d, max_cells, 1.0, zero_prob});
}

SumFn random_sum(Trial& tr) {
  const int comps = 1 + static_cast<int>(tr.rng.below(3));
  return random_sum_fn(tr.rng, SumSpec{comps, tr.xspec(), StepSpec{tr.cfg.d, 6, 1.0, 0.0}});
}

// Union of a random subset of cells of a random partition.
IntervalList random_set(Rng& rng) {
  const int cells = 1 + static_cast<int>(rng.below(6));
  const auto b = random_partition(rng, cells, 0.02);
  IntervalList A;
  for (int k = 0; k < cells; ++k) {
    if (rng.coin()) A.emplace_back(b[k], b[k + 1]);
  }
  return A;
}

// ---------------------------------------------------------------------------
// suites

void step_algebra(Trial& tr, Check& c) {
  const StepFn f = random_fn(tr);
  const StepFn g = random_fn(tr);
  const double tol = tr.cfg.tol.internal;

  c.require(make_step({f.breaks().begin(), f.breaks().end()}, f.values()) == f, "canonical form not idempotent");

  const auto [rf, rg] = refine_common(f, g);
  for (int i = 0; i < 64; ++i) {
    const double x = tr.rng.uniform();
    c.require(same_vector(rf(x), f(x)) && same_vector(rg(x), g(x)), "refinement changed a point value");
  }

  const double a = tr.rng.uniform(-3.0, 3.0);
  const double nf = norm_p(f, tr.p, tr.cfg.q);
  c.bound(std::fabs(norm_p(a * f, tr.p, tr.cfg.q) - std::fabs(a) * nf) / std::max(1e-300, std::fabs(a) * nf), tol,
          "homogeneity");
  const double excess = norm_p(f + g, tr.p, tr.cfg.q) - nf - norm_p(g, tr.p, tr.cfg.q);
  c.bound(std::max(0.0, excess), tol, "triangle inequality");

  // Pullbacks compose: (f o h1) o h2 = f o (h1 o h2).
  const double b1 = tr.rng.uniform(0.2, 1.0);
  const double a1 = tr.rng.uniform(0.0, 1.0 - b1);
  const double b2 = tr.rng.uniform(0.2, 1.0);
  const double a2 = tr.rng.uniform(0.0, 1.0 - b2);
  const StepFn lhs = pullback_affine(pullback_affine(f, a1, b1), a2, b2);
  const StepFn rhs = pullback_affine(f, a1 + b1 * a2, b1 * b2);
  if (lhs.cells() != rhs.cells()) {
    c.fail("pullback composition changed the cell structure");
    return;
  }
  double drift = 0.0;
  for (std::size_t k = 0; k < lhs.breaks().size(); ++k) drift = std::max(drift, std::fabs(lhs.breaks()[k] - rhs.breaks()[k]));
  c.bound(drift, tr.cfg.tol.acceptance, "pullback composition moved a break");
  c.require(lhs.values() == rhs.values(), "pullback composition changed a value");
}

void fubini(Trial& tr, Check& c) {
  const int mx = 1 + static_cast<int>(tr.rng.below(5));
  const int my = 1 + static_cast<int>(tr.rng.below(5));
  std::vector<Vector> vals;
  for (int k = 0; k < mx * my; ++k) {
    Vector v(tr.cfg.d);
    for (int i = 0; i < tr.cfg.d; ++i) v[i] = tr.rng.uniform(-1.0, 1.0);
    vals.push_back(v);
  }
  const StepFn2D F(random_partition(tr.rng, mx, 0.01), random_partition(tr.rng, my, 0.01), std::move(vals));
  const double direct = norm_2d(F, tr.p, tr.cfg.q);
  c.bound(std::fabs(direct - iterated_norm(F, tr.p, tr.cfg.q)) / (1.0 + direct), tr.cfg.tol.acceptance,
          "norm_2d differs from the iterated norm");
}

void xspace_isometry(Trial& tr, Check& c) {
  const int d = tr.cfg.d;
  const XIsom s = x_random(tr.seed(), d);
  const XIsom t = x_random(tr.seed(), d);
  const XIsom u = x_random(tr.seed(), d);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = tr.rng.uniform(-1.0, 1.0);
  for (NormExponent q : {NormExponent(1.0), NormExponent(2.0), NormExponent::infinity(), tr.cfg.q}) {
    const XSpec x(d, q);
    const double n = x_norm(v, x);
    c.bound(std::fabs(x_norm(x_apply(s, v), x) - n) / std::max(1e-300, n), 1e-15, "signed permutation changed a norm");
  }
  c.require(x_compose(s, x_compose(t, u)) == x_compose(x_compose(s, t), u), "composition not associative");
  c.require(x_compose(s, x_invert(s)).is_identity() && x_compose(x_invert(s), s).is_identity(), "inverse");
  c.require(same_vector(x_apply(x_compose(s, t), v), x_apply(s, x_apply(t, v))), "composition does not act as s(t(v))");
}

void lamperti_isometry(Trial& tr, Check& c) {
  const int pieces = 1 + static_cast<int>(tr.rng.below(6));
  const LampertiIsometry T = random_lamperti(tr.seed(), pieces, tr.p, tr.xspec());
  const LampertiIsometry S = random_lamperti(tr.seed(), 1 + static_cast<int>(tr.rng.below(6)), tr.p, tr.xspec());
  const StepFn f = random_fn(tr);
  const double nf = norm_p(f, tr.p, tr.cfg.q);
  const double tol = tr.cfg.tol.internal;
  c.bound(std::fabs(norm_p(apply_lamperti(T, f), tr.p, tr.cfg.q) - nf) / nf, tol, "Lamperti map changed a norm");
  c.bound(norm_p(apply_lamperti(compose_lamperti(T, invert_lamperti(T)), f) - f, tr.p, tr.cfg.q) / nf, tol,
          "T o T^-1 is not the identity");
  c.bound(norm_p(apply_lamperti(invert_lamperti(T), apply_lamperti(T, f)) - f, tr.p, tr.cfg.q) / nf, tol,
          "T^-1(T f) != f");
  c.bound(norm_p(apply_lamperti(compose_lamperti(T, S), f) - apply_lamperti(T, apply_lamperti(S, f)), tr.p, tr.cfg.q) /
              nf,
          tol, "composition does not act as T(S f)");
}

double overlap_measure(const StepFn& f, const StepFn& g) {
  const auto [rf, rg] = refine_common(f, g);
  double m = 0.0;
  for (std::size_t k = 0; k < rf.cells(); ++k) {
    if (rf.value(k).cwiseAbs().maxCoeff() > kSnapTol && rg.value(k).cwiseAbs().maxCoeff() > kSnapTol) m += rf.width(k);
  }
  return m;
}

void lp_projection(Trial& tr, Check& c) {
  const StepFn f = random_fn(tr);
  const IntervalList A = random_set(tr.rng);
  const IntervalList B = random_set(tr.rng);
  const double tol = tr.cfg.tol.internal;
  const double total = norm_p_pow(f, tr.p, tr.cfg.q);
  const StepFn pa = band_projection(A, f);
  c.bound(rel(norm_p_pow(pa, tr.p, tr.cfg.q) + norm_p_pow(f - pa, tr.p, tr.cfg.q), total), tol, "L^p-projection identity");
  const StepFn ab = band_projection(A, band_projection(B, f));
  c.require(ab == band_projection(B, band_projection(A, f)), "projections do not commute");
  c.require(ab == band_projection(intersect(A, B), f), "P_A P_B != P_(A cap B)");

  // Lamperti maps keep disjointly supported functions disjoint.
  const LampertiIsometry T = random_lamperti(tr.seed(), 1 + static_cast<int>(tr.rng.below(6)), tr.p, tr.xspec());
  const StepFn g = random_fn(tr);
  const StepFn inside = band_projection(A, f);
  const StepFn outside = g - band_projection(A, g);
  c.bound(overlap_measure(apply_lamperti(T, inside), apply_lamperti(T, outside)), tol, "disjointness not preserved");
}

void disjointness(Trial& tr, Check& c) {
  const int cells = 2 + static_cast<int>(tr.rng.below(5));
  const auto b = random_partition(tr.rng, cells, 0.05);
  const bool overlap = tr.rng.coin();
  const auto pick = static_cast<int>(tr.rng.below(static_cast<std::uint64_t>(cells)));
  std::vector<double> fv(cells, 0.0);
  std::vector<double> gv(cells, 0.0);
  auto draw = [&] { return tr.rng.uniform(0.1, 1.0) * (tr.rng.coin() ? 1.0 : -1.0); };
  for (int k = 0; k < cells; ++k) {
    const auto role = tr.rng.below(4);  // 0 neither, 1 f, 2 g, 3 both
    const bool both = overlap && (k == pick || role == 3);
    if (both || role == 1) fv[k] = draw();
    if (both || role == 2) gv[k] = draw();
    if (!overlap && role == 3) fv[k] = draw();
  }
  const StepFn f = StepFn::scalar(b, fv);
  const StepFn g = StepFn::scalar(b, gv);
  const double v = lamperti_functional(f, g, tr.p, 1.0);
  const double p = tr.p.value();
  if (p == 2.0) {
    c.bound(std::fabs(v), tr.cfg.tol.internal, "functional nonzero at p = 2");
  } else if (!overlap) {
    c.bound(std::fabs(v), tr.cfg.tol.acceptance, "functional nonzero on disjoint supports");
  } else {
    c.require(std::fabs(v) >= 1e-6, "functional too small on overlapping supports");
    c.require(p < 2.0 ? v < 0.0 : v > 0.0, "functional has the wrong sign");
  }
}

void homotopy_isometry(Trial& tr, Check& c) {
  const SumFn F = random_sum(tr);
  const SumIsometry T = random_sum_isometry(tr.rng, F, tr.p);
  const double t = tr.rng.uniform();
  const double nF = sum_norm(F, tr.p);
  const SumFn hF = homotopy_apply(t, T, F, tr.p);
  c.bound(std::fabs(sum_norm(hF, tr.p) - nF) / nF, tr.cfg.tol.acceptance, "h(t,T) changed a norm");
  const auto parts = homotopy_parts(t, T, F, tr.p);
  c.bound(rel(sum_norm_pow(parts.alpha_part, tr.p) + sum_norm_pow(parts.gamma_part, tr.p), sum_norm_pow(hF, tr.p)),
          tr.cfg.tol.internal, "alpha and gamma parts overlap");
  c.bound(sum_norm(homotopy_apply(t, SumIsometry::identity(), F, tr.p) - F, tr.p), tr.cfg.tol.internal,
          "h(t,id) is not the identity");
}

void homotopy_endpoints(Trial& tr, Check& c) {
  const SumFn F = random_sum(tr);
  const SumIsometry T = random_sum_isometry(tr.rng, F, tr.p);
  const double tol = tr.cfg.tol.acceptance;
  c.bound(sum_norm(homotopy_apply(0.0, T, F, tr.p) - apply_sum_isometry(T, F), tr.p), tol, "h(0,T) != T");
  c.bound(sum_norm(homotopy_apply(1.0, T, F, tr.p) - F, tr.p), tol, "h(1,T) != id");
}

void gamma_beta(Trial& tr, Check& c) {
  const StepFn f = random_fn(tr);
  const double t = tr.rng.uniform(0.0, 0.98);
  const StepFn lhs = gamma(t, beta(t, f, tr.p), tr.p);
  const StepFn rhs = indicator_multiply(f, {Interval(t, 1.0)});
  if (lhs.cells() != rhs.cells()) {
    c.fail("gamma o beta changed the cell structure");
    return;
  }
  double err = 0.0;
  for (std::size_t k = 0; k < lhs.cells(); ++k) {
    err = std::max(err, std::fabs(lhs.breaks()[k + 1] - rhs.breaks()[k + 1]));
    err = std::max(err, (lhs.value(k) - rhs.value(k)).cwiseAbs().maxCoeff());
  }
  c.bound(err, tr.cfg.tol.internal, "gamma o beta != chi_[t,1] f");
}

void contractivity(Trial& tr, Check& c) {
  const StepFn f = random_fn(tr);
  const StepFn g = random_fn(tr);
  const double t = tr.rng.uniform();
  const double nf = norm_p(f, tr.p, tr.cfg.q);
  const double ng = norm_p(g, tr.p, tr.cfg.q);
  const double slack = tr.cfg.tol.internal;
  c.bound(std::max(0.0, norm_p(alpha(t, f), tr.p, tr.cfg.q) - nf) / nf, slack, "alpha increased a norm");
  c.bound(std::max(0.0, norm_p(beta(t, f, tr.p), tr.p, tr.cfg.q) - nf) / nf, slack, "beta increased a norm");
  c.bound(std::max(0.0, norm_p(gamma(t, g, tr.p), tr.p, tr.cfg.q) - ng) / ng, slack, "gamma increased a norm");
}

void fact2(Trial& tr, Check& c) {
  const StepFn f = random_fn(tr);
  const double t0 = tr.rng.uniform(0.0, 0.95);
  const double side = t0 < 0.25 ? 1.0 : (t0 > 0.75 ? -1.0 : (tr.rng.coin() ? 1.0 : -1.0));
  const double mass = norm_p_pow(f, tr.p, tr.cfg.q);
  std::vector<double> seq;
  for (int k = 1; k <= 8; ++k) seq.push_back(fact2_integral(f, t0, t0 + side * std::pow(4.0, -k), tr.p, tr.cfg.q));
  c.bound(seq.back() / mass, 1e-3, "fact2 integral not small");
  for (std::size_t k = seq.size() / 2; k < seq.size(); ++k) {
    c.require(seq[k] <= seq[k - 1] + tr.cfg.tol.internal, "fact2 tail not monotone");
  }
}

void sot_continuity(Trial& tr, Check& c) {
  const SumFn F = random_sum(tr);
  const SumIsometry T = random_sum_isometry(tr.rng, F, tr.p);
  const double t0 = tr.rng.uniform();
  const auto res = sot_continuity_search(T, F, t0, 0.01, tr.p, tr.seed());
  c.error = res.worst;
  c.require(res.found, "no neighbourhood found");
}

void orbit_path_suite(Trial& tr, Check& c) {
  const OrbitClass orbit = tr.rng.coin() ? OrbitClass::FullSupport : OrbitClass::PartialSupport;
  const StepFn f = random_sphere_point(tr.rng, orbit, tr.p);
  const StepFn g = random_sphere_point(tr.rng, orbit, tr.p);
  const double tol = tr.cfg.tol.acceptance;
  const auto path = orbit_path(f, g, tr.p, 11);
  c.bound(norm_p(path.front() - g, tr.p, 1.0), tol, "path does not start at g");
  c.bound(norm_p(path.back() - f, tr.p, 1.0), tol, "path does not end at f");
  for (const auto& x : path) {
    c.bound(std::fabs(norm_p(x, tr.p, 1.0) - 1.0), tol, "path left the unit sphere");
    c.require(orbit_class(x, tr.p) == orbit, "path changed orbit");
  }
  const OrbitClass other = orbit == OrbitClass::FullSupport ? OrbitClass::PartialSupport : OrbitClass::FullSupport;
  try {
    rearrangement_isometry(f, random_sphere_point(tr.rng, other, tr.p), tr.p);
    c.fail("cross-orbit pair accepted");
  } catch (const Error& e) {
    c.require(e.code() == Errc::OrbitMismatch, "cross-orbit pair rejected with the wrong error");
  }
}

void linfty_separation_suite(Trial& tr, Check& c) {
  const XSpec scalar(1, NormExponent::infinity());
  const LampertiIsometry T = random_lamperti(tr.seed(), 2 + static_cast<int>(tr.rng.below(5)), kInf, scalar);
  const LampertiIsometry S = random_lamperti(tr.seed(), 2 + static_cast<int>(tr.rng.below(5)), kInf, scalar);
  const auto w = linfty_separation(T, S);
  c.require(w.has_value(), "no witness for distinct maps");
  if (w) c.bound(std::max(0.0, 1.0 - w->distance), tr.cfg.tol.acceptance, "witness distance below 1");
  // Dichotomy: every refinement cell gives distance 0 or >= 1.
  const auto cells = linfty_common_cells(T, S);
  const StepFn one = StepFn::constant(Vector::Constant(1, 1.0));
  for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
    const StepFn chi = indicator_multiply(one, {Interval(cells[k], cells[k + 1])});
    const double d = norm_p(linfty_apply(T, chi) - linfty_apply(S, chi), kInf, 1.0);
    c.require(d == 0.0 || d >= 1.0 - tr.cfg.tol.acceptance, "indicator distance strictly between 0 and 1");
  }
  c.require(!linfty_separation(T, T).has_value(), "witness found for equal maps");
}

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> r{
      {"step-algebra", step_algebra},
      {"fubini", fubini},
      {"xspace-isometry", xspace_isometry},
      {"lamperti-isometry", lamperti_isometry},
      {"lp-projection", lp_projection},
      {"disjointness", disjointness},
      {"homotopy-isometry", homotopy_isometry},
      {"homotopy-endpoints", homotopy_endpoints},
      {"gamma-beta", gamma_beta},
      {"contractivity", contractivity},
      {"fact2", fact2},
      {"sot-continuity", sot_continuity},
      {"orbit-path", orbit_path_suite},
      {"linfty-separation", linfty_separation_suite},
  };
  return r;
}

json failure_json(const TrialFailure& f) {
  return json{{"trial", f.trial}, {"p", f.p}, {"error", f.error}, {"detail", f.detail}};
}

json report_json(const SuiteReport& r, const RunConfig& cfg) {
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back(failure_json(f));
  return json{{"suite", r.suite},      {"p", cfg.p_list},          {"d", cfg.d},
              {"q", to_json(cfg.q)},   {"trials", r.trials},       {"seed", cfg.seed},
              {"failures", std::move(fails)}, {"max_error", r.max_error}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunConfig parse_run_config(const json& j, RunConfig base) {
  if (!j.is_object()) throw Error(Errc::ParseError, "config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "suite") {
        base.suite = v.get<std::string>();
      } else if (key == "p_list" || key == "p") {
        base.p_list = v.is_array() ? v.get<std::vector<double>>() : std::vector<double>{v.get<double>()};
      } else if (key == "d" || key == "dim") {
        base.d = v.get<int>();
      } else if (key == "q") {
        base.q = parse_exponent(v);
      } else if (key == "trials") {
        base.trials = v.get<int>();
      } else if (key == "seed") {
        base.seed = v.get<std::uint64_t>();
      } else if (key == "tolerances") {
        if (v.contains("acceptance")) base.tol.acceptance = v.at("acceptance").get<double>();
        if (v.contains("internal")) base.tol.internal = v.at("internal").get<double>();
      } else if (key == "out") {
        base.out = v.get<std::string>();
      } else if (key == "samples") {
        base.samples = v.get<int>();
      } else if (key == "timestamp") {
        base.timestamp = v.get<bool>();
      } else {
        throw Error(Errc::ParseError, "unknown config field '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  validate(base);
  return base;
}

void validate(const RunConfig& cfg) {
  if (cfg.trials < 1) throw Error(Errc::InvalidArgument, "trials must be >= 1");
  if (cfg.d < 1) throw Error(Errc::InvalidArgument, "d must be >= 1");
  if (cfg.samples < 2) throw Error(Errc::InvalidArgument, "samples must be >= 2");
  if (cfg.p_list.empty()) throw Error(Errc::InvalidArgument, "p_list is empty");
  for (double p : cfg.p_list) {
    if (!(p >= 1.0) || std::isinf(p)) throw Error(Errc::InvalidArgument, "p_list entries must be finite and >= 1");
  }
  if (!(cfg.tol.acceptance > 0.0) || !(cfg.tol.internal > 0.0)) {
    throw Error(Errc::InvalidArgument, "tolerances must be positive");
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

bool is_suite(std::string_view name) { return name == "all" || registry().find(name) != registry().end(); }

SuiteReport run_suite(std::string_view name, const RunConfig& cfg) {
  validate(cfg);
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error(Errc::InvalidArgument, "unknown suite '" + std::string(name) + "'");
  SuiteReport rep;
  rep.suite = std::string(name);
  rep.trials = cfg.trials;
  for (int k = 0; k < cfg.trials; ++k) {
    const double p = cfg.p_list[static_cast<std::size_t>(k) % cfg.p_list.size()];
    Rng rng(derive_seed(cfg.seed, name, static_cast<std::uint64_t>(k)));
    Trial tr{rng, p, cfg};
    Check c;
    try {
      it->second(tr, c);
    } catch (const Error& e) {
      c.fail(e.what());
    }
    rep.max_error = std::max(rep.max_error, c.error);
    if (!c.ok) rep.failures.push_back(TrialFailure{k, p, c.error, c.detail});
  }
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const TrialFailure& a, const TrialFailure& b) { return a.trial < b.trial; });
  return rep;
}

json run_verify(const RunConfig& cfg, bool& passed) {
  validate(cfg);
  if (!is_suite(cfg.suite)) throw Error(Errc::InvalidArgument, "unknown suite '" + cfg.suite + "'");
  json out;
  if (cfg.suite == "all") {
    json subs = json::array();
    json fails = json::array();
    double max_error = 0.0;
    for (const auto& name : suite_names()) {
      const SuiteReport r = run_suite(name, cfg);
      max_error = std::max(max_error, r.max_error);
      for (const auto& f : r.failures) {
        json fj = failure_json(f);
        fj["suite"] = name;
        fails.push_back(std::move(fj));
      }
      subs.push_back(report_json(r, cfg));
    }
    passed = fails.empty();
    out = json{{"suite", "all"}, {"p", cfg.p_list}, {"d", cfg.d}, {"q", to_json(cfg.q)}, {"trials", cfg.trials},
               {"seed", cfg.seed}, {"failures", std::move(fails)}, {"max_error", max_error}, {"suites", std::move(subs)}};
  } else {
    const SuiteReport r = run_suite(cfg.suite, cfg);
    passed = r.failures.empty();
    out = report_json(r, cfg);
  }
  if (cfg.timestamp) out["timestamp"] = utc_timestamp();
  return out;
}

}  // namespace lpiso
