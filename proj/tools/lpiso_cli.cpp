// lpiso: property-suite runner and trace emitter.
//
//   lpiso verify [--suite NAME] [--p 1,2,3] [--dim D] [--q Q] [--trials N] [--seed S]
//                [--config run.json] [--out report.json] [--no-timestamp]
//   lpiso homotopy-trace --isometry T.json --vector F.json [--p P] [--t0 T0] [--samples N] [--out trace.csv]
//   lpiso orbit-path --f f.json --g g.json [--p P] [--samples N] [--out path.csv]
//   lpiso linfty-demo [--seed S] [--out witness.json]
//
// Exit codes: 0 pass, 1 property or orbit failure, 2 usage or parse error.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lpiso/errors.hpp"
#include "lpiso/verify.hpp"

namespace {

using namespace lpiso;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Flags {
  std::string config;
  std::string suite;
  std::vector<double> p;
  int dim = 0;
  std::string q;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  int samples = 0;
  bool no_timestamp = false;
  double t0 = 0.0;
  std::string isometry;
  std::string vector;
  std::string f;
  std::string g;
};

// Config file first, then every flag that was given on the command line.
RunConfig resolve(const CLI::App& sub, const Flags& fl) {
  RunConfig cfg;
  if (!fl.config.empty()) cfg = parse_run_config(read_json_file(fl.config));
  auto given = [&sub](const char* name) { return sub.get_option_no_throw(name) && sub.count(name) > 0; };
  if (given("--suite")) cfg.suite = fl.suite;
  if (given("--p")) cfg.p_list = fl.p;
  if (given("--dim")) cfg.d = fl.dim;
  if (given("--q")) cfg.q = parse_exponent(fl.q == "inf" ? json("inf") : json(std::stod(fl.q)));
  if (given("--trials")) cfg.trials = fl.trials;
  if (given("--seed")) cfg.seed = fl.seed;
  if (given("--out")) cfg.out = fl.out;
  if (given("--samples")) cfg.samples = fl.samples;
  if (given("--no-timestamp") && fl.no_timestamp) cfg.timestamp = false;
  validate(cfg);
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_verify(const RunConfig& cfg) {
  if (!is_suite(cfg.suite)) {
    std::cerr << "lpiso: unknown suite '" << cfg.suite << "'; known suites: all";
    for (const auto& n : suite_names()) std::cerr << ", " << n;
    std::cerr << "\n";
    return kUsage;
  }
  bool passed = false;
  const json report = run_verify(cfg, passed);
  emit(cfg.out, report.dump(2) + "\n");
  if (!passed) std::cerr << "lpiso: " << report["failures"].size() << " failing trial(s)\n";
  return passed ? kPass : kFail;
}

// Exponent carried by the Lamperti maps of T, if any.
std::optional<NormExponent> word_exponent(const SumIsometry& T) {
  for (const auto& g : T.word) {
    if (const auto* cw = std::get_if<ComponentWise>(&g)) {
      if (!cw->maps.empty()) return cw->maps.begin()->second.p();
    }
  }
  return std::nullopt;
}

int cmd_homotopy_trace(const CLI::App& sub, const Flags& fl, const RunConfig& cfg) {
  if (fl.isometry.empty() || fl.vector.empty()) throw CLI::RequiredError("--isometry and --vector");
  const SumIsometry T = parse_sum_isometry(read_json_file(fl.isometry));
  const SumFn F = parse_sum_fn(read_json_file(fl.vector));
  NormExponent p = cfg.p_list.front();
  if (sub.count("--p") == 0 && fl.config.empty()) {
    if (auto wp = word_exponent(T)) p = *wp;
  }
  const HomotopyTime t0(fl.t0);
  const SumFn ref = homotopy_apply(t0, T, F, p);
  const SumFn TF = apply_sum_isometry(T, F);

  std::ostringstream os;
  csv_row(os, {"t", "norm_hF", "dist_to_h_t0", "dist_to_T_action", "dist_to_identity_action"});
  const int n = cfg.samples;
  for (int k = 0; k < n; ++k) {
    const double t = k + 1 == n ? 1.0 : static_cast<double>(k) / (n - 1);
    const SumFn hF = homotopy_apply(t, T, F, p);
    csv_row(os, {csv_number(t), csv_number(sum_norm(hF, p)), csv_number(sum_norm(hF - ref, p)),
                 csv_number(sum_norm(hF - TF, p)), csv_number(sum_norm(hF - F, p))});
  }
  emit(cfg.out, os.str());
  return kPass;
}

int cmd_orbit_path(const Flags& fl, const RunConfig& cfg) {
  if (fl.f.empty() || fl.g.empty()) throw CLI::RequiredError("--f and --g");
  const StepFn f = parse_step_fn(read_json_file(fl.f));
  const StepFn g = parse_step_fn(read_json_file(fl.g));
  const NormExponent p = cfg.p_list.front();
  const auto path = orbit_path(f, g, p, cfg.samples);
  std::ostringstream os;
  csv_row(os, {"t", "norm", "support_measure", "digest"});
  const int n = cfg.samples;
  for (int k = 0; k < n; ++k) {
    const double t = k + 1 == n ? 1.0 : static_cast<double>(k) / (n - 1);
    const StepFn& x = path[static_cast<std::size_t>(k)];
    csv_row(os, {csv_number(t), csv_number(norm_p(x, p, 1.0)), csv_number(support_measure(x)), digest(x)});
  }
  emit(cfg.out, os.str());
  return kPass;
}

int cmd_linfty_demo(const RunConfig& cfg) {
  const XSpec scalar(1, NormExponent::infinity());
  Rng rng(derive_seed(cfg.seed, "linfty-demo", 0));
  const LampertiIsometry T = random_lamperti(rng.next(), 2 + static_cast<int>(rng.below(5)), kInf, scalar);
  const LampertiIsometry S = random_lamperti(rng.next(), 2 + static_cast<int>(rng.below(5)), kInf, scalar);
  const auto w = linfty_separation(T, S);
  json out{{"seed", cfg.seed}, {"T", to_json(T)}, {"S", to_json(S)}};
  out["witness"] = w ? to_json(*w) : json(nullptr);
  emit(cfg.out, out.dump(2) + "\n");
  if (!w || w->distance < 1.0 - cfg.tol.acceptance) {
    std::cerr << "lpiso: no separating indicator with distance >= 1\n";
    return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometry groups of Bochner spaces: property suites and traces"};
  app.require_subcommand(1);
  Flags fl;

  auto common = [&fl](CLI::App* s) {
    s->add_option("--config", fl.config, "JSON RunConfig; flags override it");
    s->add_option("--p", fl.p, "Exponent list, comma separated")->delimiter(',');
    s->add_option("--seed", fl.seed, "Base seed");
    s->add_option("--out", fl.out, "Output path (stdout if omitted)");
    s->add_option("--samples", fl.samples, "Number of t samples");
  };

  CLI::App* verify = app.add_subcommand("verify", "Run property suites and write a JSON report");
  common(verify);
  verify->add_option("--suite", fl.suite, "Suite name or 'all'");
  verify->add_option("--dim", fl.dim, "Dimension d of X = R^d");
  verify->add_option("--q", fl.q, "Exponent q of the value norm (number or 'inf')");
  verify->add_option("--trials", fl.trials, "Trials per suite");
  verify->add_flag("--no-timestamp", fl.no_timestamp, "Omit the timestamp field");

  CLI::App* trace = app.add_subcommand("homotopy-trace", "CSV trace of t -> h(t,T)F");
  common(trace);
  trace->add_option("--isometry", fl.isometry, "SumIsometry or LampertiIsometry JSON");
  trace->add_option("--vector", fl.vector, "SumFn or StepFn JSON");
  trace->add_option("--t0", fl.t0, "Reference time for dist_to_h_t0");

  CLI::App* orbit = app.add_subcommand("orbit-path", "CSV path between two unit vectors of one orbit");
  common(orbit);
  orbit->add_option("--f", fl.f, "StepFn JSON (path end)");
  orbit->add_option("--g", fl.g, "StepFn JSON (path start)");

  CLI::App* demo = app.add_subcommand("linfty-demo", "JSON separation witness for two random L^inf isometries");
  common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(resolve(*verify, fl));
    if (*trace) return cmd_homotopy_trace(*trace, fl, resolve(*trace, fl));
    if (*orbit) return cmd_orbit_path(fl, resolve(*orbit, fl));
    if (*demo) return cmd_linfty_demo(resolve(*demo, fl));
  } catch (const CLI::Error& e) {
    std::cerr << "lpiso: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    if (e.code() == Errc::OrbitMismatch) {
      std::cerr << "lpiso: orbit mismatch\n";
      return kFail;
    }
    std::cerr << "lpiso: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "lpiso: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
