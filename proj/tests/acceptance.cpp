// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path-to-lpiso-cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "lpiso/errors.hpp"
#include "lpiso/io.hpp"

using namespace lpiso;

namespace {

struct Outcome {
  bool pass;
  std::string summary;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const std::vector<double> kP{1.0, 1.5, 2.0, 3.0};
const std::vector<int> kD{1, 3};
const std::vector<NormExponent> kQ{1.0, 2.0, kInf};

struct Case {
  double p;
  SumFn F;
  SumIsometry T;
};

// Cycles through every (p, d, q) combination.
Case sample_case(Rng& rng, int i) {
  const double p = kP[i % 4];
  const int d = kD[(i / 4) % 2];
  const NormExponent q = kQ[(i / 8) % 3];
  const int comps = 1 + static_cast<int>(rng.below(3));
  SumFn F = random_sum_fn(rng, SumSpec{comps, XSpec(d, q), StepSpec{d, 6, 1.0, 0.0}});
  SumIsometry T = random_sum_isometry(rng, F, p);
  return {p, std::move(F), std::move(T)};
}

Outcome homotopy_isometry() {
  Rng rng(derive_seed(2024, "acceptance-1", 0));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Case c = sample_case(rng, i);
    const double t = rng.uniform();
    const double n = sum_norm(c.F, c.p);
    worst = std::max(worst, std::fabs(sum_norm(homotopy_apply(t, c.T, c.F, c.p), c.p) - n) / n);
  }
  return {worst <= 1e-9, fmt("1000 cases, max | ||h(t,T)F|| - ||F|| | / ||F|| = %.3g (bound 1e-9)", worst)};
}

Outcome endpoints() {
  Rng rng(derive_seed(2024, "acceptance-2", 0));
  double e0 = 0.0;
  double e1 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Case c = sample_case(rng, i);
    e0 = std::max(e0, sum_norm(homotopy_apply(0.0, c.T, c.F, c.p) - apply_sum_isometry(c.T, c.F), c.p));
    e1 = std::max(e1, sum_norm(homotopy_apply(1.0, c.T, c.F, c.p) - c.F, c.p));
  }
  return {e0 <= 1e-9 && e1 <= 1e-9, fmt("200 cases, max ||h(0,T)F - TF|| = %.3g, max ||h(1,T)F - F|| = %.3g", e0, e1)};
}

Outcome gamma_beta() {
  Rng rng(derive_seed(2024, "acceptance-3", 0));
  double value_err = 0.0;
  double break_err = 0.0;
  int structure_mismatch = 0;
  for (int i = 0; i < 200; ++i) {
    const double p = kP[i % 4];
    const StepFn f = random_step(rng, StepSpec{kD[(i / 4) % 2], 8, 1.0, 0.2});
    const double t = rng.uniform();
    const StepFn lhs = gamma(t, beta(t, f, p), p);
    const StepFn rhs = indicator_multiply(f, {Interval(t, 1.0)});
    if (lhs.cells() != rhs.cells()) {
      ++structure_mismatch;
      continue;
    }
    for (std::size_t k = 0; k < lhs.cells(); ++k) {
      break_err = std::max(break_err, std::fabs(lhs.breaks()[k + 1] - rhs.breaks()[k + 1]));
      value_err = std::max(value_err, (lhs.value(k) - rhs.value(k)).cwiseAbs().maxCoeff());
    }
  }
  const bool ok = structure_mismatch == 0 && break_err <= kSnapTol && value_err <= 1e-12;
  return {ok, fmt("200 cases, %g cell-structure mismatches, max break shift %.3g, max value error %.3g", structure_mismatch,
                  break_err, value_err)};
}

Outcome contractivity() {
  Rng rng(derive_seed(2024, "acceptance-4", 0));
  double excess = 0.0;
  int printed_violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double p = kP[i % 4];
    const NormExponent q = kQ[(i / 8) % 3];
    const StepFn f = random_step(rng, StepSpec{kD[(i / 4) % 2], 8, 1.0, 0.1});
    const double t = rng.uniform();
    const double n = norm_p(f, p, q);
    excess = std::max({excess, norm_p(alpha(t, f), p, q) - n, norm_p(beta(t, f, p), p, q) - n,
                       norm_p(gamma(t, f, p), p, q) - n});
    // Same beta with the exponent sign as printed, (1-t)^{-1/p}.
    const StepFn printed = std::pow(1.0 - t, -1.0 / p) * pullback_affine(f, t, 1.0 - t);
    if (t < 1.0 && norm_p(printed, p, q) > n + 1e-12) ++printed_violations;
  }
  return {excess <= 1e-12 && printed_violations > 0,
          fmt("1000 cases, max norm increase %.3g (slack 1e-12); printed-exponent beta expands in %g cases", excess,
              printed_violations)};
}

Outcome fact2() {
  Rng rng(derive_seed(2024, "acceptance-5", 0));
  double worst_ratio = 0.0;
  int non_monotone = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = kP[i % 4];
    const NormExponent q = kQ[(i / 8) % 3];
    const StepFn f = random_step(rng, StepSpec{kD[(i / 4) % 2], 8, 1.0, 0.0});
    const double t0 = rng.uniform(0.0, 0.95);
    const double side = t0 < 0.25 ? 1.0 : (t0 > 0.75 ? -1.0 : (rng.coin() ? 1.0 : -1.0));
    std::vector<double> seq;
    for (int k = 1; k <= 8; ++k) seq.push_back(fact2_integral(f, t0, t0 + side * std::pow(4.0, -k), p, q));
    worst_ratio = std::max(worst_ratio, seq.back() / norm_p_pow(f, p, q));
    for (std::size_t k = 4; k < seq.size(); ++k) {
      if (seq[k] > seq[k - 1] + 1e-12) ++non_monotone;
    }
  }
  const StepFn half = StepFn::scalar({0.0, 0.5, 1.0}, {1.0, 0.0});
  const double closed = fact2_integral(half, 0.0, 0.2, 1.0);
  const bool ok = worst_ratio < 1e-3 && non_monotone == 0 && std::fabs(closed - 0.125) <= 1e-12;
  return {ok, fmt("100 cases, max I(t_8)/||f||^p = %.3g, %g tail increases; closed form %.17g", worst_ratio, non_monotone,
                  closed)};
}

Outcome sot_continuity() {
  Rng rng(derive_seed(2024, "acceptance-6", 0));
  int found = 0;
  double worst = 0.0;
  int tested = 0;
  for (int i = 0; i < 100; ++i) {
    const Case c = sample_case(rng, i);
    const double t0 = rng.uniform();
    const auto res = sot_continuity_search(c.T, c.F, t0, 0.01, c.p, rng.next());
    if (res.found && res.worst < 0.01) ++found;
    worst = std::max(worst, res.worst);
    tested += res.tested;
  }
  return {found == 100, fmt("%g/100 searches succeeded, %g (t,S) pairs checked, max distance %.3g (eps 0.01)", found,
                            tested, worst)};
}

Outcome disjointness() {
  Rng rng(derive_seed(2024, "acceptance-7", 0));
  double disjoint_max = 0.0;
  double overlap_min = INFINITY;
  int wrong_sign = 0;
  double p2_max = 0.0;
  auto draw = [&rng] { return rng.uniform(0.1, 1.0) * (rng.coin() ? 1.0 : -1.0); };
  for (int i = 0; i < 1000; ++i) {
    const bool overlap = i >= 500;
    const double p = std::vector<double>{1.0, 1.5, 3.0}[i % 3];
    const int cells = 2 + static_cast<int>(rng.below(6));
    const auto b = random_partition(rng, cells, 0.05);
    std::vector<double> fv(cells, 0.0);
    std::vector<double> gv(cells, 0.0);
    const auto shared = static_cast<int>(rng.below(static_cast<std::uint64_t>(cells)));
    for (int k = 0; k < cells; ++k) {
      const auto role = rng.below(3);  // 0: f only, 1: g only, 2: neither
      if (overlap && k == shared) {
        fv[k] = draw();
        gv[k] = draw();
      } else if (role == 0) {
        fv[k] = draw();
      } else if (role == 1) {
        gv[k] = draw();
      }
    }
    const StepFn f = StepFn::scalar(b, fv);
    const StepFn g = StepFn::scalar(b, gv);
    const double v = lamperti_functional(f, g, p);
    if (overlap) {
      overlap_min = std::min(overlap_min, std::fabs(v));
      if ((p < 2.0) != (v < 0.0)) ++wrong_sign;
    } else {
      disjoint_max = std::max(disjoint_max, std::fabs(v));
    }
    p2_max = std::max(p2_max, std::fabs(lamperti_functional(f, g, 2.0)));
  }
  const bool ok = disjoint_max <= 1e-9 && overlap_min >= 1e-6 && wrong_sign == 0 && p2_max <= 1e-12;
  return {ok, fmt("disjoint max |L| = %.3g, overlap min |L| = %.3g, p=2 max |L| = %.3g", disjoint_max, overlap_min,
                  p2_max) +
                  (wrong_sign ? ", wrong signs present" : ", signs correct")};
}

IntervalList random_set(Rng& rng) {
  const int cells = 1 + static_cast<int>(rng.below(7));
  const auto b = random_partition(rng, cells, 0.02);
  IntervalList A;
  for (int k = 0; k < cells; ++k) {
    if (rng.coin()) A.emplace_back(b[k], b[k + 1]);
  }
  return A;
}

Outcome lp_projection() {
  Rng rng(derive_seed(2024, "acceptance-8", 0));
  double worst = 0.0;
  int commute_fail = 0;
  for (int i = 0; i < 200; ++i) {
    const double p = kP[i % 4];
    const NormExponent q = kQ[(i / 8) % 3];
    const StepFn f = random_step(rng, StepSpec{kD[(i / 4) % 2], 8, 1.0, 0.1});
    const IntervalList A = random_set(rng);
    const IntervalList B = random_set(rng);
    const StepFn pa = band_projection(A, f);
    const double total = norm_p_pow(f, p, q);
    if (total > 0.0) {
      worst = std::max(worst, std::fabs(norm_p_pow(pa, p, q) + norm_p_pow(f - pa, p, q) - total) / total);
    }
    const StepFn ab = band_projection(A, band_projection(B, f));
    if (!(ab == band_projection(B, band_projection(A, f))) || !(ab == band_projection(intersect(A, B), f))) {
      ++commute_fail;
    }
  }
  return {worst <= 1e-12 && commute_fail == 0,
          fmt("200 cases, max relative L^p-identity error %.3g; %g commutation mismatches", worst, commute_fail)};
}

Outcome fubini() {
  Rng rng(derive_seed(2024, "acceptance-9", 0));
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double p = kP[i % 4];
    const int d = kD[(i / 4) % 2];
    const int mx = 1 + static_cast<int>(rng.below(6));
    const int my = 1 + static_cast<int>(rng.below(6));
    std::vector<Vector> vals;
    for (int k = 0; k < mx * my; ++k) {
      Vector v(d);
      for (int j = 0; j < d; ++j) v[j] = rng.uniform(-1.0, 1.0);
      vals.push_back(v);
    }
    const StepFn2D F(random_partition(rng, mx, 0.01), random_partition(rng, my, 0.01), std::move(vals));
    const NormExponent q = kQ[(i / 8) % 3];
    worst = std::max(worst, std::fabs(norm_2d(F, p, q) - iterated_norm(F, p, q)));
  }
  return {worst <= 1e-9, fmt("200 grids, max |norm_2d - iterated_norm| = %.3g (bound 1e-9)", worst)};
}

Outcome orbit_paths() {
  Rng rng(derive_seed(2024, "acceptance-10", 0));
  double end_err = 0.0;
  double norm_err = 0.0;
  int class_changes = 0;
  int cross_accepted = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = kP[i % 4];
    const OrbitClass orbit = i % 2 ? OrbitClass::FullSupport : OrbitClass::PartialSupport;
    const StepFn f = random_sphere_point(rng, orbit, p);
    const StepFn g = random_sphere_point(rng, orbit, p);
    const auto path = orbit_path(f, g, p, 11);
    end_err = std::max({end_err, norm_p(path.front() - g, p, 1.0), norm_p(path.back() - f, p, 1.0)});
    for (const auto& x : path) {
      norm_err = std::max(norm_err, std::fabs(norm_p(x, p, 1.0) - 1.0));
      if (orbit_class(x, p) != orbit) ++class_changes;
    }
    const OrbitClass other = orbit == OrbitClass::FullSupport ? OrbitClass::PartialSupport : OrbitClass::FullSupport;
    try {
      orbit_path(f, random_sphere_point(rng, other, p), p, 11);
      ++cross_accepted;
    } catch (const Error& e) {
      if (e.code() != Errc::OrbitMismatch) ++cross_accepted;
    }
  }
  const bool ok = end_err <= 1e-9 && norm_err <= 1e-9 && class_changes == 0 && cross_accepted == 0;
  return {ok, fmt("100 pairs, max endpoint error %.3g, max |norm - 1| %.3g, %g orbit changes", end_err, norm_err,
                  class_changes) +
                  (cross_accepted ? "; cross-orbit pairs accepted" : "; cross-orbit pairs rejected")};
}

Outcome linfty() {
  Rng rng(derive_seed(2024, "acceptance-11", 0));
  const XSpec scalar(1, kInf);
  double min_dist = INFINITY;
  int missing = 0;
  int equal_with_witness = 0;
  int pairs = 0;
  while (pairs < 100) {
    const LampertiIsometry T = random_lamperti(rng.next(), 2 + static_cast<int>(rng.below(6)), kInf, scalar);
    const LampertiIsometry S = random_lamperti(rng.next(), 2 + static_cast<int>(rng.below(6)), kInf, scalar);
    if (T == S) continue;
    ++pairs;
    const auto w = linfty_separation(T, S);
    if (!w) {
      ++missing;
    } else {
      min_dist = std::min(min_dist, w->distance);
    }
    if (linfty_separation(T, T) || linfty_separation(S, S)) ++equal_with_witness;
  }
  return {missing == 0 && min_dist >= 1.0 - 1e-9 && equal_with_witness == 0,
          fmt("100 distinct pairs, %g without witness, min witness distance %.17g; %g equal pairs with a witness", missing,
              min_dist, equal_with_witness)};
}

Outcome reproducibility(const std::string& cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "lpiso_acceptance";
  fs::create_directories(dir);
  const fs::path a = dir / "a.json";
  const fs::path b = dir / "b.json";
  auto run = [&cli](const fs::path& out) {
    const std::string cmd = cli + " verify --suite all --seed 42 --trials 100 --no-timestamp --out " + out.string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int ca = run(a);
  const int cb = run(b);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ra = slurp(a);
  const std::string rb = slurp(b);
  fs::remove_all(dir);
  const bool ok = ca == 0 && cb == 0 && !ra.empty() && ra == rb;
  return {ok, fmt("two runs of 'verify --suite all --seed 42': exit codes %g/%g, %g report bytes, ", ca, cb,
                  static_cast<double>(ra.size())) +
                  (ra == rb ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <lpiso-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"homotopy isometry", homotopy_isometry},
      {"endpoints h(0,T)=T, h(1,T)=id", endpoints},
      {"gamma o beta reconstruction", gamma_beta},
      {"contractivity of alpha, beta, gamma", contractivity},
      {"fact2 convergence", fact2},
      {"SOT continuity search", sot_continuity},
      {"disjointness functional", disjointness},
      {"L^p-projection identity", lp_projection},
      {"Fubini identification", fubini},
      {"orbit path-connectedness", orbit_paths},
      {"L^inf total separation", linfty},
      {"report reproducibility", [&cli] { return reproducibility(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
