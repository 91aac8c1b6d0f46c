#include "cosparse_cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <cosparse/certify.hpp>
#include <cosparse/io.hpp>
#include <cosparse/solvers.hpp>

#include "cosparse_cli/config.hpp"
#include "cosparse_cli/experiments.hpp"
#include "cosparse_cli/setup.hpp"

namespace cosparse::cli {
namespace {

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env != nullptr && *env != '\0' ? std::string(env) : std::string(".");
}

void add_dictionary_options(CLI::App& app, DictionarySpec& spec) {
  app.add_option("--dict", spec.kind, "identity | dft | oversampled-dft | gabor | concat-if")
      ->capture_default_str();
  app.add_option("--n", spec.n, "signal length")->capture_default_str();
  app.add_option("--oversampling", spec.oversampling, "redundancy d/n (oversampled-dft, gabor)")
      ->capture_default_str();
  app.add_option("--gabor-a", spec.gabor_a, "Gabor time step")->capture_default_str();
  app.add_option("--window-sigma", spec.window_sigma, "Gabor window width in samples")
      ->capture_default_str();
  app.add_flag("!--no-tighten", spec.tighten, "keep the raw Gabor system instead of its tight frame");
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw InvalidArgument("not an integer list: '" + text + "'");
    }
  }
  require(!values.empty(), "empty integer list");
  return values;
}

std::string short_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

// ---------------------------------------------------------------- recover

struct RecoverOptions {
  std::string method = "analysis";
  DictionarySpec dict;
  std::string dict2;
  Index m = 32;
  std::string sensing = "gaussian";
  std::string sensing_file;
  std::string signal = "dirac";
  std::string signal_file;
  std::string measurements_file;
  Index pulses = 1;
  Index pulse_duration = 0;
  double decay = 1.5;
  double sigma = 0.0;
  std::optional<double> eps;
  std::string eps_rule = "oracle";
  std::uint64_t seed = 1;
  int rw_iters = 4;
  Index s = 0;
  int max_iter = 20000;
  double tol_rel = 1e-6;
  bool history = false;
  std::string output_dir;
};

CVector make_signal(const RecoverOptions& o, const Dictionary& dict) {
  const std::uint64_t seed = stream_seed(o.seed, 0, 0);
  if (o.signal == "dirac") return dirac_comb(o.dict.n).samples;
  if (o.signal == "radar") {
    const Index duration = o.pulse_duration > 0 ? o.pulse_duration : std::max<Index>(1, o.dict.n / 4);
    return radar_pulse_train(o.dict.n, desk_pulses(o.pulses, duration, duration / 10, seed))
        .signal.samples;
  }
  if (o.signal == "compressible") return compressible_signal(dict, o.decay, seed).signal.samples;
  throw InvalidArgument("unknown signal '" + o.signal + "' (expected dirac, radar or compressible)");
}

int cmd_recover(const RecoverOptions& o, std::ostream& out, std::ostream& err) {
  const Dictionary dict = make_dictionary(o.dict);

  const SensingOperator a =
      o.sensing_file.empty()
          ? make_sensing_operator(o.sensing, o.m, o.dict.n, stream_seed(o.seed, 0, 1))
          : make_sensing(io::descriptor_from_json(io::read_file(o.sensing_file)));
  if (a.n() != dict.n()) {
    err << "error: dimension mismatch: sensing operator has n=" << a.n()
        << " columns but the dictionary has n=" << dict.n() << " rows\n";
    return kUsageError;
  }

  std::optional<CVector> truth;
  CVector y;
  double eps = 0.0;
  if (!o.measurements_file.empty()) {
    std::ifstream in(o.measurements_file);
    if (!in) throw io::ParseError("cannot open '" + o.measurements_file + "'");
    y = io::read_signal_csv(in).samples;
    if (!o.eps) throw InvalidArgument("--eps is required with --measurements-file");
    eps = *o.eps;
  } else {
    if (!o.signal_file.empty()) {
      std::ifstream in(o.signal_file);
      if (!in) throw io::ParseError("cannot open '" + o.signal_file + "'");
      truth = io::read_signal_csv(in).samples;
    } else {
      truth = make_signal(o, dict);
    }
    if (truth->size() != a.n()) {
      err << "error: dimension mismatch: signal has n=" << truth->size()
          << " samples but the sensing operator has n=" << a.n() << " columns\n";
      return kUsageError;
    }
    const double sigma = o.sigma * a.apply(*truth).norm() / std::sqrt(double(a.m()));
    const Measurement meas = measure(a, *truth, sigma, stream_seed(o.seed, 0, 2));
    y = meas.y;
    if (o.eps) {
      eps = *o.eps;
    } else if (o.eps_rule == "percentile") {
      eps = percentile_epsilon(a.m(), sigma);
    } else if (o.eps_rule == "oracle") {
      eps = meas.noise_norm;
    } else {
      throw InvalidArgument("unknown --eps-rule '" + o.eps_rule + "' (expected oracle or percentile)");
    }
  }
  if (y.size() != a.m()) {
    err << "error: dimension mismatch: measurements have m=" << y.size()
        << " entries but the sensing operator has m=" << a.m() << " rows\n";
    return kUsageError;
  }

  SolverConfig cfg;
  cfg.max_iter = o.max_iter;
  cfg.tol_rel = o.tol_rel;
  cfg.history = o.history;
  const Index s = o.s > 0 ? o.s : std::max<Index>(1, a.m() / 4);

  RecoveryReport report;
  if (o.method == "analysis") {
    report = l1_analysis(a, dict, y, eps, cfg);
  } else if (o.method == "reweighted") {
    report = reweighted_l1_analysis(a, dict, y, eps, o.rw_iters, cfg, s);
  } else if (o.method == "synthesis") {
    report = l1_synthesis(a, dict, y, eps, cfg);
  } else if (o.method == "split") {
    Dictionary d1 = dict, d2 = dict;
    if (o.dict2.empty()) {
      if (o.dict.kind != "concat-if") {
        throw InvalidArgument("split needs --dict2 unless --dict is concat-if");
      }
      DictionarySpec first = o.dict, second = o.dict;
      first.kind = "identity";
      second.kind = "dft";
      d1 = make_dictionary(first);
      d2 = make_dictionary(second);
    } else {
      DictionarySpec second = o.dict;
      second.kind = o.dict2;
      d2 = make_dictionary(second);
    }
    report = split_analysis(a, d1, d2, y, eps, cfg);
  } else {
    throw InvalidArgument("unknown method '" + o.method +
                          "' (expected analysis, reweighted, synthesis or split)");
  }
  if (truth) attach_audit(report, a, dict, *truth, s, 6 * s);

  const std::string dir = o.output_dir.empty() ? default_output_dir() : o.output_dir;
  std::filesystem::create_directories(dir);
  const std::string json = io::report_to_json(report);
  io::write_file((std::filesystem::path(dir) / "report.json").string(), json);
  {
    std::ostringstream csv;
    io::write_signal_csv(csv, report.f_hat);
    io::write_file((std::filesystem::path(dir) / "f_hat.csv").string(), csv.str());
  }
  if (o.history) {
    std::ostringstream csv;
    io::write_history_csv(csv, report.history);
    io::write_file((std::filesystem::path(dir) / "history.csv").string(), csv.str());
  }
  out << json;
  if (!report.converged) {
    err << "error: solver did not converge within " << o.max_iter << " iterations\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

// ------------------------------------------------------------- experiment

/// Flag name and the config key it sets.
constexpr std::pair<const char*, const char*> kExperimentFlags[] = {
    {"--n", "n"},
    {"--m", "m"},
    {"--oversampling", "oversampling"},
    {"--s", "s"},
    {"--sigmas", "sigmas"},
    {"--trials", "trials"},
    {"--rw-iters", "rw_iters"},
    {"--seed", "seed"},
    {"--gabor-a", "gabor_a"},
    {"--window-sigma", "window_sigma"},
    {"--pulses", "pulses"},
    {"--pulse-duration", "pulse_duration"},
    {"--rise-fall", "rise_fall"},
    {"--decay", "decay"},
    {"--deltas", "deltas"},
    {"--max-iter", "max_iter"},
    {"--tol-rel", "tol_rel"},
    {"--output-dir", "output_dir"},
};

struct ExperimentOptions {
  std::string name;
  std::string config_file;
  std::map<std::string, std::string> values;
  bool dump_config = false;
};

ExperimentConfig resolve_config(const ExperimentOptions& o,
                                const std::map<std::string, CLI::Option*>& flags) {
  std::string file_text;
  if (!o.config_file.empty()) file_text = io::read_file(o.config_file);

  // The experiment comes from the positional argument, else the file.
  std::string name = o.name;
  if (name.empty()) {
    ExperimentConfig probe;
    apply_config_text(probe, file_text);
    name = probe.experiment;
    if (file_text.find("experiment") == std::string::npos) {
      throw InvalidArgument("no experiment given (positional name or 'experiment' in --config)");
    }
  }
  ExperimentConfig config = default_config(name);
  config.output_dir = default_output_dir();
  apply_config_text(config, file_text);
  config.experiment = name;
  for (const auto& [flag, key] : kExperimentFlags) {
    if (flags.at(flag)->count() > 0) set_config_value(config, key, o.values.at(key));
  }
  validate(config);
  return config;
}

int cmd_experiment(const ExperimentConfig& config, bool dump_config, std::ostream& out) {
  if (dump_config) {
    out << serialize_config(config);
    return kSuccess;
  }
  const ExperimentResult result = run_experiment(config);
  write_tables(result, config.output_dir);
  out << result.tables.front().render();
  return kSuccess;
}

// ---------------------------------------------------------------- certify

struct CertifyOptions {
  std::string what;
  DictionarySpec dict;
  Index m = 6;
  std::string sensing = "gaussian";
  std::string sensing_file;
  std::uint64_t seed = 7;
  std::string s = "2";
  std::int64_t trials = 10000;
  double cap = double(kDefaultEnumerationCap);
  double delta = 0.5;
};

int cmd_certify(const CertifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.what == "coherence") {
    out << short_number(coherence(make_dictionary(o.dict))) << '\n';
    return kSuccess;
  }
  const SensingOperator a =
      o.sensing_file.empty() ? make_sensing_operator(o.sensing, o.m, o.dict.n, o.seed)
                             : make_sensing(io::descriptor_from_json(io::read_file(o.sensing_file)));
  if (o.what == "concentration") {
    const std::string kind = o.sensing;
    const Index m = a.m(), n = a.n();
    const SensingFactory factory = [&](std::uint64_t seed) {
      return make_sensing_operator(kind, m, n, seed);
    };
    const CVector v = CVector::Ones(n) / std::sqrt(double(n));
    const double rate = concentration_check(factory, v, o.delta, o.trials, o.seed);
    out << "# m,delta,failure_rate\n"
        << m << ',' << io::format_double(o.delta) << ',' << io::format_double(rate) << '\n';
    return kSuccess;
  }
  const Dictionary dict = make_dictionary(o.dict);
  if (a.n() != dict.n()) {
    err << "error: dimension mismatch: sensing operator has n=" << a.n()
        << " columns but the dictionary has n=" << dict.n() << " rows\n";
    return kUsageError;
  }
  if (o.what != "drip-mc" && o.what != "drip-exact") {
    throw InvalidArgument("unknown certification '" + o.what +
                          "' (expected coherence, drip-mc, drip-exact or concentration)");
  }
  require(o.cap >= 1.0 && o.cap <= 9.0e18, "--cap must lie in [1, 9e18]");
  std::string table = "# s,delta_hat\n";
  for (Index s : parse_index_list(o.s)) {
    DripEstimate est;
    if (o.what == "drip-mc") {
      est = drip_monte_carlo(a, dict, s, o.trials, o.seed);
    } else {
      try {
        est = drip_exact_small(a, dict, s, static_cast<std::int64_t>(o.cap));
      } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kNumericalFailure;
      }
    }
    table += std::to_string(s) + ',' + io::format_double(est.delta_hat) + '\n';
  }
  out << table;
  return kSuccess;
}

// --------------------------------------------------------------- generate

struct GenerateOptions {
  std::string what;
  DictionarySpec dict;
  std::string signal = "dirac";
  Index m = 32;
  std::string sensing = "gaussian";
  std::uint64_t seed = 1;
  Index pulses = 1;
  Index pulse_duration = 0;
  double decay = 1.5;
  std::string output;
  std::string matrix;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  if (o.what == "signal") {
    RecoverOptions r;
    r.dict = o.dict;
    r.signal = o.signal;
    r.seed = o.seed;
    r.pulses = o.pulses;
    r.pulse_duration = o.pulse_duration;
    r.decay = o.decay;
    const Dictionary dict = o.signal == "compressible" ? make_dictionary(o.dict)
                                                       : identity_dictionary(o.dict.n);
    Signal s;
    s.samples = make_signal(r, dict);
    std::ostringstream csv;
    io::write_signal_csv(csv, s);
    emit(o.output, csv.str(), out);
    return kSuccess;
  }
  if (o.what == "sensing") {
    const SensingOperator a = make_sensing_operator(o.sensing, o.m, o.dict.n, o.seed);
    emit(o.output, io::descriptor_to_json(a.descriptor()), out);
    if (!o.matrix.empty()) {
      std::ostringstream csv;
      io::write_matrix_csv(csv, a.materialize());
      io::write_file(o.matrix, csv.str());
    }
    return kSuccess;
  }
  if (o.what == "dictionary") {
    std::ostringstream csv;
    io::write_matrix_csv(csv, make_dictionary(o.dict).materialize());
    emit(o.output, csv.str(), out);
    return kSuccess;
  }
  throw InvalidArgument("unknown generate target '" + o.what +
                        "' (expected signal, sensing or dictionary)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis-sparsity compressed sensing with redundant dictionaries", "cosparse"};
  app.require_subcommand(1);

  RecoverOptions rec;
  CLI::App* recover = app.add_subcommand("recover", "recover a signal from compressed measurements");
  recover->add_option("--method", rec.method, "analysis | reweighted | synthesis | split")
      ->capture_default_str();
  add_dictionary_options(*recover, rec.dict);
  recover->add_option("--dict2", rec.dict2, "second dictionary for split (default: identity + dft)");
  recover->add_option("--m", rec.m, "number of measurements")->capture_default_str();
  recover->add_option("--sensing", rec.sensing, "gaussian | bernoulli | sdft")->capture_default_str();
  recover->add_option("--sensing-file", rec.sensing_file, "sensing descriptor JSON");
  recover->add_option("--signal", rec.signal, "dirac | radar | compressible")->capture_default_str();
  recover->add_option("--signal-file", rec.signal_file, "true signal CSV");
  recover->add_option("--measurements-file", rec.measurements_file, "measurement vector CSV");
  recover->add_option("--pulses", rec.pulses, "radar pulses")->capture_default_str();
  recover->add_option("--pulse-duration", rec.pulse_duration, "radar pulse length (0: n/4)");
  recover->add_option("--decay", rec.decay, "compressible decay exponent")->capture_default_str();
  recover->add_option("--sigma", rec.sigma, "relative noise level sqrt(m) sigma / ||Af||")
      ->capture_default_str();
  recover->add_option("--eps", rec.eps, "constraint radius (default: from --eps-rule)");
  recover->add_option("--eps-rule", rec.eps_rule, "oracle | percentile")->capture_default_str();
  recover->add_option("--seed", rec.seed, "master seed")->capture_default_str();
  recover->add_option("--rw-iters", rec.rw_iters, "weighted solves of the reweighted method")
      ->capture_default_str();
  recover->add_option("--s", rec.s, "sparsity for reweighting and audit (0: m/4)");
  recover->add_option("--max-iter", rec.max_iter)->capture_default_str();
  recover->add_option("--tol-rel", rec.tol_rel)->capture_default_str();
  recover->add_flag("--history", rec.history, "write history.csv");
  recover->add_option("--output-dir", rec.output_dir, "output directory");

  ExperimentOptions exp;
  std::map<std::string, CLI::Option*> exp_flags;
  CLI::App* experiment = app.add_subcommand("experiment", "run a reproduction experiment");
  experiment->add_option("name", exp.name,
                         "radar | dirac-comb | noise-curve | constants | coefficient-decay | "
                         "method-comparison");
  experiment->add_option("--config", exp.config_file, "key = value config file");
  experiment->add_flag("--dump-config", exp.dump_config, "print the resolved config and exit");
  for (const auto& [flag, key] : kExperimentFlags) {
    exp_flags[flag] = experiment->add_option(flag, exp.values[key]);
  }

  CertifyOptions cert;
  cert.dict.n = 8;
  CLI::App* certify = app.add_subcommand("certify", "coherence and D-RIP certification");
  certify->add_option("what", cert.what, "coherence | drip-mc | drip-exact | concentration")
      ->required();
  add_dictionary_options(*certify, cert.dict);
  certify->add_option("--m", cert.m)->capture_default_str();
  certify->add_option("--sensing", cert.sensing)->capture_default_str();
  certify->add_option("--sensing-file", cert.sensing_file);
  certify->add_option("--seed", cert.seed)->capture_default_str();
  certify->add_option("--s", cert.s, "sparsity level(s), comma separated")->capture_default_str();
  certify->add_option("--trials", cert.trials)->capture_default_str();
  certify->add_option("--cap", cert.cap, "support enumeration cap")->capture_default_str();
  certify->add_option("--delta", cert.delta)->capture_default_str();

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "export signals and operators");
  generate->add_option("what", gen.what, "signal | sensing | dictionary")->required();
  add_dictionary_options(*generate, gen.dict);
  generate->add_option("--signal", gen.signal)->capture_default_str();
  generate->add_option("--m", gen.m)->capture_default_str();
  generate->add_option("--sensing", gen.sensing)->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--pulses", gen.pulses)->capture_default_str();
  generate->add_option("--pulse-duration", gen.pulse_duration);
  generate->add_option("--decay", gen.decay)->capture_default_str();
  generate->add_option("--output", gen.output, "output file (default: stdout)");
  generate->add_option("--matrix", gen.matrix, "also write the dense sensing matrix CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (recover->parsed()) return cmd_recover(rec, out, err);
    if (experiment->parsed()) {
      return cmd_experiment(resolve_config(exp, exp_flags), exp.dump_config, out);
    }
    if (certify->parsed()) return cmd_certify(cert, out, err);
    if (generate->parsed()) return cmd_generate(gen, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace cosparse::cli
