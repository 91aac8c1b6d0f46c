// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <cosparse/certify.hpp>
#include <cosparse/frames.hpp>
#include <cosparse/io.hpp>
#include <cosparse/rng.hpp>
#include <cosparse/solvers.hpp>
#include <cosparse_cli/config.hpp>
#include <cosparse_cli/experiments.hpp>
#include <cosparse_cli/setup.hpp>

#include "oracles.hpp"

using namespace cosparse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

Dictionary concat_if(Index n) {
  return build_concat(identity_dictionary(n), build_oversampled_dft(n, 1), 1.0 / std::sqrt(2.0));
}

// Solves collected by criteria 2-4 for the lemma audit.
std::vector<cli::SolveRecord> g_audited;

Outcome theorem_constants_check() {
  const ConstantsReport half = theorem_constants_for_delta(0.5, 0.5, 0.1, 1.0 / 6.0);
  const ConstantsReport quarter = theorem_constants_for_delta(0.25, 0.5, 0.1, 1.0 / 6.0);
  const bool ok = half.valid && quarter.valid && std::abs(half.C0 - 61.9) <= 0.1 &&
                  std::abs(half.C1 - 28.3) <= 0.1 && std::abs(quarter.C0 - 10.23) <= 0.05 &&
                  std::abs(quarter.C1 - 7.33) <= 0.01;
  return {ok, "delta=1/2: C0=" + fmt(half.C0) + " C1=" + fmt(half.C1) + "; delta=1/4: C0=" +
                  fmt(quarter.C0) + " C1=" + fmt(quarter.C1)};
}

Outcome dirac_comb_check() {
  const auto start = Clock::now();
  const cli::ExperimentResult r = cli::run_experiment(cli::default_config("dirac-comb"));
  const double elapsed = seconds_since(start);
  int exact = 0;
  double worst = 0.0;
  for (const cli::SolveRecord& s : r.solves) {
    const double e = *s.report.relative_error;
    worst = std::max(worst, e);
    if (e <= 1e-4) ++exact;
    g_audited.push_back(s);
  }
  const bool ok = r.solves.size() == 10 && exact >= 9 && elapsed <= 10.0;
  return {ok, std::to_string(exact) + "/" + std::to_string(r.solves.size()) +
                  " trials with relative error <= 1e-4 (worst " + fmt(worst) + "), " + fmt(elapsed) +
                  " s"};
}

Outcome noise_curve_check() {
  const auto start = Clock::now();
  const cli::ExperimentConfig cfg = cli::default_config("noise-curve");
  const cli::ExperimentResult r = cli::run_experiment(cfg);
  const double elapsed = seconds_since(start);
  std::vector<double> x, y;
  for (const cli::SolveRecord& s : r.solves) {
    g_audited.push_back(s);
    if (s.report.method != "analysis") continue;
    x.push_back(s.sigma_rel);
    y.push_back(*s.report.relative_error);
  }
  // Fit the per-level means, as plotted.
  std::vector<double> levels, means;
  for (double sigma : cfg.sigmas) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == sigma) {
        sum += y[i];
        ++count;
      }
    }
    levels.push_back(sigma);
    means.push_back(sum / count);
  }
  const cli::LineFit fit = cli::fit_line(levels, means);
  const bool ok = cfg.sigmas.size() == 5 && cfg.trials == 5 && x.size() == 25 &&
                  fit.r_squared >= 0.95 && fit.intercept <= 0.05 && elapsed <= 300.0;
  return {ok, "R^2=" + fmt(fit.r_squared) + " intercept=" + fmt(fit.intercept) + " slope=" +
                  fmt(fit.slope) + ", " + fmt(elapsed) + " s"};
}

Outcome reweighting_check() {
  const auto start = Clock::now();
  const cli::ExperimentResult r = cli::run_experiment(cli::default_config("radar"));
  const double elapsed = seconds_since(start);
  std::vector<double> plain, rw;
  for (const cli::SolveRecord& s : r.solves) {
    g_audited.push_back(s);
    (s.report.method == "reweighted" ? rw : plain).push_back(s.rmse);
  }
  const double mp = median(plain), mr = median(rw);
  const bool ok = plain.size() == 10 && rw.size() == 10 && mr <= mp;
  return {ok, "median RMSE plain=" + fmt(mp) + " reweighted=" + fmt(mr) + " (ratio " +
                  fmt(mp / mr) + "), " + fmt(elapsed) + " s"};
}

Outcome lemma_audit_check() {
  int checked = 0, skipped = 0, cone_fail = 0, tube_fail = 0, tail_fail = 0;
  double worst_cone = 0.0, worst_tube = 0.0;
  for (const cli::SolveRecord& s : g_audited) {
    const RecoveryReport& r = s.report;
    if (!r.converged) {
      ++skipped;
      continue;
    }
    ++checked;
    const LemmaDiagnostics& d = *r.diagnostics;
    const double cone_limit = r.tol_rel * s.reference_l1;
    const double tube_limit = 2.0 * r.eps + 2.0 * r.tol_feas;
    worst_cone = std::max(worst_cone, d.cone_slack / cone_limit);
    worst_tube = std::max(worst_tube, d.tube_norm / tube_limit);
    if (d.cone_slack > cone_limit) ++cone_fail;
    if (d.tube_norm > tube_limit) ++tube_fail;
    if (!d.tail_holds || d.block_size != 6 * d.s) ++tail_fail;
  }
  const bool ok = checked > 0 && cone_fail == 0 && tube_fail == 0 && tail_fail == 0;
  return {ok, std::to_string(checked) + " converged solves (" + std::to_string(skipped) +
                  " unconverged skipped); failures cone=" + std::to_string(cone_fail) +
                  " tube=" + std::to_string(tube_fail) + " tail=" + std::to_string(tail_fail) +
                  "; worst cone/limit=" + fmt(worst_cone) + " tube/limit=" + fmt(worst_tube)};
}

Outcome drip_check() {
  const auto start = Clock::now();
  const SensingOperator a = gaussian_sensing(6, 8, 7);
  const Dictionary d = concat_if(8);
  const double exact = drip_exact_small(a, d, 2).delta_hat;
  const double mc = drip_monte_carlo(a, d, 2, 10000, 7).delta_hat;
  std::vector<double> by_s;
  for (Index s = 1; s <= 3; ++s) by_s.push_back(drip_exact_small(a, d, s).delta_hat);
  const bool monotone = by_s[0] <= by_s[1] && by_s[1] <= by_s[2];
  const double elapsed = seconds_since(start);
  const bool ok = mc <= exact && exact - mc <= 0.05 && monotone && elapsed <= 60.0;
  return {ok, "exact=" + fmt(exact) + " monte_carlo=" + fmt(mc) + " gap=" + fmt(exact - mc) +
                  "; delta_1..3=" + fmt(by_s[0]) + "," + fmt(by_s[1]) + "," + fmt(by_s[2]) + ", " +
                  fmt(elapsed) + " s"};
}

Outcome error_bound_check() {
  int holds = 0, total = 0;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t seed = trial_seed(2024, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    // Alternate between the spikes+sines pair and a 2x oversampled DFT.
    const bool concat = t % 2 == 0;
    const Index n = concat ? 64 : 32;
    const Dictionary d = concat ? concat_if(n) : build_oversampled_dft(n, 2);
    const Index m = concat ? 32 : 24;
    const SensingOperator a = gaussian_sensing(m, n, rng.next_u64());
    const CVector f = compressible_signal(d, 1.0 + rng.uniform(), rng.next_u64()).signal.samples;
    const double sigma_rel = 0.1 * rng.uniform();
    const double sigma = sigma_rel * a.apply(f).norm() / std::sqrt(double(m));
    const Measurement y = measure(a, f, sigma, rng.next_u64());
    const RecoveryReport r = l1_analysis(a, d, y.y, y.noise_norm);
    const ErrorBoundCheck c = verify_error_bound(f, r.f_hat.samples, d, m / 4, y.noise_norm, 62.0, 30.0);
    ++total;
    if (c.holds && c.tight_hypothesis) ++holds;
    worst = std::max(worst, c.lhs / c.rhs);
  }
  return {holds == 50, std::to_string(holds) + "/" + std::to_string(total) +
                           " instances satisfy the bound; worst lhs/rhs=" + fmt(worst)};
}

Outcome lp_oracle_check() {
  SolverConfig cfg;
  cfg.tol_rel = 1e-10;
  cfg.max_iter = 100000;
  int agree = 0;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(trial_seed(99, static_cast<std::uint64_t>(t)));
    const Index n = 4 + static_cast<Index>(rng.uniform_index(7));         // 4..10
    const Index m = 1 + static_cast<Index>(rng.uniform_index(std::min<Index>(n - 1, 8)));
    const Index d = n + static_cast<Index>(rng.uniform_index(17 - n));    // n..16
    const RMatrix am = oracle::random_real_matrix(m, n, rng.next_u64());
    const RMatrix dm = oracle::random_real_matrix(n, d, rng.next_u64());
    const RVector f = oracle::random_real_vector(n, rng.next_u64());
    const RVector y = am * f;
    const double optimum = oracle::lp_analysis_optimum(am, dm, y);
    const RecoveryReport r = l1_analysis(dense_sensing(am.cast<Complex>()),
                                         dense_dictionary(dm.cast<Complex>()), y.cast<Complex>(),
                                         0.0, cfg);
    const double objective = l1_norm(dm.cast<Complex>().adjoint() * r.f_hat.samples);
    const double gap = std::abs(objective - optimum);
    worst = std::max(worst, gap);
    if (gap <= 1e-5) ++agree;
  }
  return {agree == 20, std::to_string(agree) + "/20 instances within 1e-5; worst gap=" + fmt(worst)};
}

Outcome gram_pnorm_check() {
  const std::vector<std::pair<std::string, Dictionary>> dicts = {
      {"concat", concat_if(64)}, {"gabor", build_gabor({64, 4.0, 4, 1.0 / 16.0})}};
  int holds = 0, total = 0;
  double worst = 0.0;
  for (const auto& [name, dict] : dicts) {
    const double factors[2] = {gram_pnorm_factor(dict, 0.5), gram_pnorm_factor(dict, 1.0)};
    for (int t = 0; t < 100; ++t) {
      Rng rng(trial_seed(name == "concat" ? 5 : 6, static_cast<std::uint64_t>(t)));
      const int which = static_cast<int>(rng.uniform_index(2));
      const double p = which == 0 ? 0.5 : 1.0;
      const Index s = 1 + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(dict.d())));
      CVector x = CVector::Zero(dict.d());
      for (Index i : rng.sample_without_replacement(dict.d(), s)) x[i] = rng.complex_normal();
      const double lhs = pnorm(dict.adjoint(dict.apply(x)), p);
      const double rhs = factors[which] * pnorm(x, p);
      ++total;
      if (lhs <= rhs * (1.0 + 1e-12)) ++holds;
      worst = std::max(worst, lhs / rhs);
    }
  }
  return {holds == total, std::to_string(holds) + "/" + std::to_string(total) +
                              " draws satisfy the bound; worst ratio=" + fmt(worst)};
}

int shell(const std::string& command) { return std::system(command.c_str()); }

std::string slurp(const fs::path& p) { return fs::exists(p) ? io::read_file(p.string()) : "<missing>"; }

Outcome determinism_check() {
  const std::string cli = COSPARSE_CLI_PATH;
  const fs::path root = fs::temp_directory_path() / "cosparse_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"recover --dict concat-if --n 64 --m 32 --signal dirac --sigma 0.05 --seed 4 --history",
       {"report.json", "f_hat.csv", "history.csv"}},
      {"recover --method reweighted --dict gabor --n 128 --gabor-a 8 --window-sigma 6 --m 60 "
       "--signal radar --sigma 0.05 --seed 2 --rw-iters 2",
       {"report.json", "f_hat.csv"}},
      {"certify drip-mc --trials 2000 --s 1,2,3", {}},
      {"certify drip-exact --s 1,2", {}},
      {"experiment dirac-comb --trials 2", {"dirac_comb.csv"}},
      {"generate signal --signal radar --n 256 --pulses 2 --seed 5", {}},
  };
  int identical = 0;
  std::string mismatch;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string runs[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = root / (std::to_string(c) + "_" + std::to_string(k));
      fs::create_directories(dir);
      const std::string output_flag =
          commands[c].first.rfind("recover", 0) == 0 || commands[c].first.rfind("experiment", 0) == 0
              ? " --output-dir '" + dir.string() + "'"
              : "";
      codes[k] = shell("'" + cli + "' " + commands[c].first + output_flag + " > '" +
                       (dir / "stdout.txt").string() + "' 2>&1");
      runs[k] = slurp(dir / "stdout.txt");
      for (const std::string& file : commands[c].second) runs[k] += "\n--" + file + "--\n" + slurp(dir / file);
    }
    if (codes[0] == 0 && codes[1] == 0 && runs[0] == runs[1]) {
      ++identical;
    } else if (mismatch.empty()) {
      mismatch = "; first difference: '" + commands[c].first + "' (exit " + std::to_string(codes[0]) +
                 "/" + std::to_string(codes[1]) + ")";
    }
  }
  fs::remove_all(root);
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical across two runs" + mismatch};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"theorem constants", theorem_constants_check},
      {"dirac comb exact recovery", dirac_comb_check},
      {"noise linearity", noise_curve_check},
      {"reweighting benefit", reweighting_check},
      {"lemma audit", lemma_audit_check},
      {"D-RIP oracle agreement", drip_check},
      {"error-bound verifier", error_bound_check},
      {"solver vs exhaustive oracle", lp_oracle_check},
      {"Gram p-norm bound", gram_pnorm_check},
      {"CLI determinism", determinism_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
