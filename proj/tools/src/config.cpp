#include "cosparse_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <cosparse/io.hpp>

namespace cosparse::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw io::ParseError("config key '" + std::string(key) + "': not an integer: '" +
                         std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw io::ParseError("config key '" + std::string(key) + "': not a number: '" +
                         std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> values;
  if (trim(text).empty()) return values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::size_t stop = comma == std::string_view::npos ? text.size() : comma;
    values.push_back(parse_real(key, trim(text.substr(start, stop - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += io::format_double(values[i]);
  }
  return out;
}

}  // namespace

bool is_experiment(std::string_view name) {
  return std::find(std::begin(kExperimentNames), std::end(kExperimentNames), name) !=
         std::end(kExperimentNames);
}

ExperimentConfig default_config(std::string_view experiment) {
  if (!is_experiment(experiment)) {
    throw InvalidArgument("unknown experiment '" + std::string(experiment) + "'");
  }
  ExperimentConfig c;
  c.experiment = std::string(experiment);
  if (experiment == "noise-curve") {
    c.sigmas = {0.0, 0.05, 0.1, 0.15, 0.2};
  } else if (experiment == "radar" || experiment == "coefficient-decay") {
    c.n = 1024;
    c.m = 120;
    c.oversampling = 8;
    c.s = 30;
    c.trials = experiment == "radar" ? 10 : 1;
    c.gabor_a = 16;
    c.window_sigma = 18.0;
    c.pulses = 3;
    c.pulse_duration = 128;
    c.rise_fall = 12;
  } else if (experiment == "dirac-comb") {
    c.n = 64;
    c.m = 32;
    c.s = 16;
    c.trials = 10;
    c.rw_iters = 1;
  } else if (experiment == "method-comparison") {
    c.trials = 5;
    c.rw_iters = 3;
  } else if (experiment == "constants") {
    c.trials = 1;
    c.deltas = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  }
  return c;
}

void set_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "experiment") {
    if (!is_experiment(value)) throw io::ParseError("unknown experiment '" + std::string(value) + "'");
    c.experiment = std::string(value);
  } else if (key == "n") {
    c.n = parse_integer<Index>(key, value);
  } else if (key == "m") {
    c.m = parse_integer<Index>(key, value);
  } else if (key == "oversampling") {
    c.oversampling = parse_integer<Index>(key, value);
  } else if (key == "s") {
    c.s = parse_integer<Index>(key, value);
  } else if (key == "sigmas") {
    c.sigmas = parse_list(key, value);
  } else if (key == "trials") {
    c.trials = parse_integer<int>(key, value);
  } else if (key == "rw_iters") {
    c.rw_iters = parse_integer<int>(key, value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "gabor_a") {
    c.gabor_a = parse_integer<Index>(key, value);
  } else if (key == "window_sigma") {
    c.window_sigma = parse_real(key, value);
  } else if (key == "pulses") {
    c.pulses = parse_integer<Index>(key, value);
  } else if (key == "pulse_duration") {
    c.pulse_duration = parse_integer<Index>(key, value);
  } else if (key == "rise_fall") {
    c.rise_fall = parse_integer<Index>(key, value);
  } else if (key == "decay") {
    c.decay = parse_real(key, value);
  } else if (key == "deltas") {
    c.deltas = parse_list(key, value);
  } else if (key == "max_iter") {
    c.max_iter = parse_integer<int>(key, value);
  } else if (key == "tol_rel") {
    c.tol_rel = parse_real(key, value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else {
    throw io::ParseError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw io::ParseError("config line " + std::to_string(number) + " has no '=': " + line);
    }
    set_config_value(config, trim(body.substr(0, eq)), body.substr(eq + 1));
  }
}

ExperimentConfig parse_config(std::string_view text) {
  // The experiment key selects the defaults the remaining keys override.
  ExperimentConfig probe;
  apply_config_text(probe, text);
  ExperimentConfig config = default_config(probe.experiment);
  apply_config_text(config, text);
  return config;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "experiment = " << c.experiment << '\n'
      << "n = " << c.n << '\n'
      << "m = " << c.m << '\n'
      << "oversampling = " << c.oversampling << '\n'
      << "s = " << c.s << '\n'
      << "sigmas = " << format_list(c.sigmas) << '\n'
      << "trials = " << c.trials << '\n'
      << "rw_iters = " << c.rw_iters << '\n'
      << "seed = " << c.seed << '\n'
      << "gabor_a = " << c.gabor_a << '\n'
      << "window_sigma = " << io::format_double(c.window_sigma) << '\n'
      << "pulses = " << c.pulses << '\n'
      << "pulse_duration = " << c.pulse_duration << '\n'
      << "rise_fall = " << c.rise_fall << '\n'
      << "decay = " << io::format_double(c.decay) << '\n'
      << "deltas = " << format_list(c.deltas) << '\n'
      << "max_iter = " << c.max_iter << '\n'
      << "tol_rel = " << io::format_double(c.tol_rel) << '\n'
      << "output_dir = " << c.output_dir << '\n';
  return out.str();
}

void validate(const ExperimentConfig& c) {
  require(is_experiment(c.experiment), "unknown experiment '" + c.experiment + "'");
  require(c.trials >= 1, "trials must be >= 1");
  require(c.n >= 1 && c.m >= 1, "n and m must be >= 1");
  require(c.m <= c.n, "m = " + std::to_string(c.m) + " exceeds n = " + std::to_string(c.n));
  require(c.s >= 1, "s must be >= 1");
  require(c.rw_iters >= 1, "rw_iters must be >= 1");
  require(c.oversampling >= 1 && c.gabor_a >= 1, "oversampling and gabor_a must be >= 1");
  require(c.n % c.gabor_a == 0, "gabor_a = " + std::to_string(c.gabor_a) +
                                    " does not divide n = " + std::to_string(c.n));
  require(c.window_sigma > 0.0, "window_sigma must be positive");
  require(c.max_iter >= 1 && c.tol_rel > 0.0, "max_iter must be >= 1 and tol_rel > 0");
  for (double sigma : c.sigmas) require(sigma >= 0.0 && std::isfinite(sigma), "sigmas must be >= 0");
  for (double delta : c.deltas) require(delta >= 0.0 && delta < 1.0, "deltas must lie in [0, 1)");
  require(!c.output_dir.empty(), "output_dir must not be empty");
}

}  // namespace cosparse::cli
