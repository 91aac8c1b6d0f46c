#include "cosparse_cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <cosparse/certify.hpp>
#include <cosparse/fft.hpp>
#include <cosparse/io.hpp>

#include "cosparse_cli/setup.hpp"

namespace cosparse::cli {
namespace {

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (double v : values) {
    if (!row.empty()) row += ',';
    row += io::format_double(v);
  }
  return row;
}

Dictionary experiment_gabor(const ExperimentConfig& c) {
  DictionarySpec spec;
  spec.kind = "gabor";
  spec.n = c.n;
  spec.oversampling = c.oversampling;
  spec.gabor_a = c.gabor_a;
  spec.window_sigma = c.window_sigma;
  return make_dictionary(spec);
}

SolverConfig solver_config(const ExperimentConfig& c) {
  SolverConfig cfg;
  cfg.max_iter = c.max_iter;
  cfg.tol_rel = c.tol_rel;
  return cfg;
}

CVector pulse_signal(const ExperimentConfig& c, int trial) {
  const PulseParams p = desk_pulses(c.pulses, c.pulse_duration, c.rise_fall,
                                    stream_seed(c.seed, static_cast<std::uint64_t>(trial), 0));
  return radar_pulse_train(c.n, p).signal.samples;
}

SensingOperator trial_sensing(const ExperimentConfig& c, int trial) {
  return gaussian_sensing(c.m, c.n, stream_seed(c.seed, static_cast<std::uint64_t>(trial), 1));
}

/// y = A f + z at relative noise level sqrt(m) sigma / ||A f|| = sigma_rel.
Measurement noisy_measurement(const SensingOperator& a, const CVector& f, double sigma_rel,
                              std::uint64_t seed) {
  const double sigma = sigma_rel * a.apply(f).norm() / std::sqrt(double(a.m()));
  return measure(a, f, sigma, seed);
}

SolveRecord audited(RecoveryReport report, const SensingOperator& a, const Dictionary& dict,
                    const CVector& f, const ExperimentConfig& c, int trial, double sigma_rel) {
  attach_audit(report, a, dict, f, c.s, 6 * c.s);
  SolveRecord rec;
  rec.trial = trial;
  rec.sigma_rel = sigma_rel;
  rec.reference_l1 = l1_norm(dict.adjoint(f));
  rec.rmse = metrics(report.f_hat.samples, f).rmse;
  rec.report = std::move(report);
  return rec;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

double first_sigma(const ExperimentConfig& c) { return c.sigmas.empty() ? 0.0 : c.sigmas.front(); }

ExperimentResult noise_curve(const ExperimentConfig& c) {
  const Dictionary dict = experiment_gabor(c);
  const SolverConfig cfg = solver_config(c);
  ExperimentResult out;
  Table curve{"noise_curve.csv", "sigma_rel,err_plain,err_rw", {}};
  std::vector<double> xs, plain_err, rw_err;
  for (std::size_t level = 0; level < c.sigmas.size(); ++level) {
    const double sigma_rel = c.sigmas[level];
    double sum_plain = 0.0, sum_rw = 0.0;
    for (int t = 0; t < c.trials; ++t) {
      const CVector f = pulse_signal(c, t);
      const SensingOperator a = trial_sensing(c, t);
      const Measurement meas = noisy_measurement(
          a, f, sigma_rel, stream_seed(c.seed, static_cast<std::uint64_t>(t), 2 + level));
      RecoveryReport plain = l1_analysis(a, dict, meas.y, meas.noise_norm, cfg);
      RecoveryReport rw =
          continue_reweighting(a, dict, meas.y, meas.noise_norm, plain, c.rw_iters - 1, cfg, c.s);
      out.solves.push_back(audited(std::move(plain), a, dict, f, c, t, sigma_rel));
      sum_plain += *out.solves.back().report.relative_error;
      out.solves.push_back(audited(std::move(rw), a, dict, f, c, t, sigma_rel));
      sum_rw += *out.solves.back().report.relative_error;
    }
    xs.push_back(sigma_rel);
    plain_err.push_back(sum_plain / c.trials);
    rw_err.push_back(sum_rw / c.trials);
    curve.rows.push_back(csv_row({sigma_rel, plain_err.back(), rw_err.back()}));
  }
  out.tables.push_back(std::move(curve));
  if (xs.size() >= 2) {
    Table fit{"noise_curve_fit.csv", "method,slope,intercept,r_squared", {}};
    const LineFit p = fit_line(xs, plain_err);
    const LineFit r = fit_line(xs, rw_err);
    fit.rows.push_back("plain," + csv_row({p.slope, p.intercept, p.r_squared}));
    fit.rows.push_back("reweighted," + csv_row({r.slope, r.intercept, r.r_squared}));
    out.tables.push_back(std::move(fit));
  }
  return out;
}

ExperimentResult dirac_comb_recovery(const ExperimentConfig& c) {
  DictionarySpec spec;
  spec.kind = "concat-if";
  spec.n = c.n;
  const Dictionary dict = make_dictionary(spec);
  const CVector f = dirac_comb(c.n).samples;
  const SolverConfig cfg = solver_config(c);
  const double sigma_rel = first_sigma(c);
  ExperimentResult out;
  Table table{"dirac_comb.csv", "trial,relative_error,iterations,converged", {}};
  for (int t = 0; t < c.trials; ++t) {
    const SensingOperator a = trial_sensing(c, t);
    const Measurement meas =
        noisy_measurement(a, f, sigma_rel, stream_seed(c.seed, static_cast<std::uint64_t>(t), 2));
    RecoveryReport r = c.rw_iters > 1
                           ? reweighted_l1_analysis(a, dict, meas.y, meas.noise_norm, c.rw_iters,
                                                    cfg, c.s)
                           : l1_analysis(a, dict, meas.y, meas.noise_norm, cfg);
    out.solves.push_back(audited(std::move(r), a, dict, f, c, t, sigma_rel));
    const RecoveryReport& rep = out.solves.back().report;
    table.rows.push_back(csv_row({double(t), *rep.relative_error, double(rep.iterations),
                                  rep.converged ? 1.0 : 0.0}));
  }
  out.tables.push_back(std::move(table));
  return out;
}

Table spectrum_table(const std::vector<CVector>& signals) {
  Table table{"radar_freq.csv", "bin,abs_f,abs_plain,abs_rw", {}};
  std::vector<CVector> spectra;
  for (const CVector& s : signals) {
    spectra.push_back(fft::forward(s) / std::sqrt(double(s.size())));
  }
  const Index n = signals.front().size();
  for (Index k = 0; k <= n / 2; ++k) {
    table.rows.push_back(csv_row({double(k), std::abs(spectra[0][k]), std::abs(spectra[1][k]),
                                  std::abs(spectra[2][k])}));
  }
  return table;
}

ExperimentResult radar(const ExperimentConfig& c) {
  const Dictionary dict = experiment_gabor(c);
  const SolverConfig cfg = solver_config(c);
  const double sigma_rel = first_sigma(c);
  ExperimentResult out;
  Table rmse{"radar_rmse.csv", "trial,rmse_plain,rmse_rw,relerr_plain,relerr_rw", {}};
  Table time{"radar_time.csv", "t,f,f_plain,f_rw", {}};
  Table freq;
  std::vector<double> plain_rmse, rw_rmse;
  for (int t = 0; t < c.trials; ++t) {
    const CVector f = pulse_signal(c, t);
    const SensingOperator a = trial_sensing(c, t);
    const Measurement meas =
        noisy_measurement(a, f, sigma_rel, stream_seed(c.seed, static_cast<std::uint64_t>(t), 2));
    RecoveryReport plain = l1_analysis(a, dict, meas.y, meas.noise_norm, cfg);
    RecoveryReport rw =
        continue_reweighting(a, dict, meas.y, meas.noise_norm, plain, c.rw_iters - 1, cfg, c.s);
    out.solves.push_back(audited(std::move(plain), a, dict, f, c, t, sigma_rel));
    out.solves.push_back(audited(std::move(rw), a, dict, f, c, t, sigma_rel));
    const SolveRecord& p = out.solves[out.solves.size() - 2];
    const SolveRecord& r = out.solves.back();
    plain_rmse.push_back(p.rmse);
    rw_rmse.push_back(r.rmse);
    rmse.rows.push_back(csv_row(
        {double(t), p.rmse, r.rmse, *p.report.relative_error, *r.report.relative_error}));
    if (t == 0) {
      const CVector& fp = p.report.f_hat.samples;
      const CVector& fr = r.report.f_hat.samples;
      for (Index i = 0; i < c.n; ++i) {
        time.rows.push_back(csv_row({double(i), f[i].real(), fp[i].real(), fr[i].real()}));
      }
      freq = spectrum_table({f, fp, fr});
    }
  }
  Table summary{"radar_summary.csv", "median_rmse_plain,median_rmse_rw", {}};
  summary.rows.push_back(csv_row({median(plain_rmse), median(rw_rmse)}));
  out.tables.push_back(std::move(summary));
  out.tables.push_back(std::move(rmse));
  out.tables.push_back(std::move(time));
  out.tables.push_back(std::move(freq));
  return out;
}

ExperimentResult coefficient_decay(const ExperimentConfig& c) {
  const Dictionary dict = experiment_gabor(c);
  const CVector coeffs = dict.adjoint(pulse_signal(c, 0));
  std::vector<double> mags(static_cast<std::size_t>(coeffs.size()));
  for (Index i = 0; i < coeffs.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(coeffs[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  ExperimentResult out;
  Table table{"coefficient_decay.csv", "rank,abs_coefficient", {}};
  for (std::size_t k = 0; k < mags.size(); ++k) table.rows.push_back(csv_row({double(k + 1), mags[k]}));
  out.tables.push_back(std::move(table));
  return out;
}

ExperimentResult method_comparison(const ExperimentConfig& c) {
  const Dictionary dict = experiment_gabor(c);
  const SolverConfig cfg = solver_config(c);
  const double sigma_rel = first_sigma(c);
  ExperimentResult out;
  Table errors{"method_comparison.csv", "trial,err_analysis,err_reweighted,err_synthesis", {}};
  Table signal{"method_comparison_signal.csv",
               "t,f_re,f_im,err_analysis,err_reweighted,err_synthesis", {}};
  for (int t = 0; t < c.trials; ++t) {
    const CVector f =
        compressible_signal(dict, c.decay, stream_seed(c.seed, static_cast<std::uint64_t>(t), 0))
            .signal.samples;
    const SensingOperator a = trial_sensing(c, t);
    const Measurement meas =
        noisy_measurement(a, f, sigma_rel, stream_seed(c.seed, static_cast<std::uint64_t>(t), 2));
    RecoveryReport analysis = l1_analysis(a, dict, meas.y, meas.noise_norm, cfg);
    RecoveryReport rw =
        continue_reweighting(a, dict, meas.y, meas.noise_norm, analysis, c.rw_iters - 1, cfg, c.s);
    RecoveryReport synthesis = l1_synthesis(a, dict, meas.y, meas.noise_norm, cfg);
    out.solves.push_back(audited(std::move(analysis), a, dict, f, c, t, sigma_rel));
    out.solves.push_back(audited(std::move(rw), a, dict, f, c, t, sigma_rel));
    out.solves.push_back(audited(std::move(synthesis), a, dict, f, c, t, sigma_rel));
    const std::size_t base = out.solves.size() - 3;
    const RecoveryReport& ra = out.solves[base].report;
    const RecoveryReport& rr = out.solves[base + 1].report;
    const RecoveryReport& rs = out.solves[base + 2].report;
    errors.rows.push_back(
        csv_row({double(t), *ra.relative_error, *rr.relative_error, *rs.relative_error}));
    if (t == 0) {
      for (Index i = 0; i < c.n; ++i) {
        signal.rows.push_back(csv_row({double(i), f[i].real(), f[i].imag(),
                                       std::abs(ra.f_hat.samples[i] - f[i]),
                                       std::abs(rr.f_hat.samples[i] - f[i]),
                                       std::abs(rs.f_hat.samples[i] - f[i])}));
      }
    }
  }
  out.tables.push_back(std::move(errors));
  out.tables.push_back(std::move(signal));
  return out;
}

ExperimentResult constants_sweep(const ExperimentConfig& c) {
  ExperimentResult out;
  Table table{"constants.csv", "delta,C0,C1", {}};
  for (double delta : c.deltas) {
    const ConstantsReport r = theorem_constants_for_delta(delta, 0.5, 0.1, 1.0 / 6.0);
    table.rows.push_back(csv_row({delta, r.C0, r.C1}));
  }
  out.tables.push_back(std::move(table));
  return out;
}

}  // namespace

std::string Table::render() const {
  std::string text = "# " + header + "\n";
  for (const std::string& row : rows) text += row + "\n";
  return text;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::string& e = config.experiment;
  if (e == "noise-curve") return noise_curve(config);
  if (e == "dirac-comb") return dirac_comb_recovery(config);
  if (e == "radar") return radar(config);
  if (e == "coefficient-decay") return coefficient_decay(config);
  if (e == "method-comparison") return method_comparison(config);
  return constants_sweep(config);
}

void write_tables(const ExperimentResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const Table& table : result.tables) {
    io::write_file((std::filesystem::path(dir) / table.file).string(), table.render());
  }
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_line: need at least two paired points");
  const double k = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / k;
    my += y[i] / k;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace cosparse::cli
