#include "cosparse/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cosparse/rng.hpp"

namespace cosparse {

double pulse_envelope(Index duration, Index rise_fall, Index tau) {
  if (tau < 0 || tau >= duration) return 0.0;
  if (rise_fall == 0) return 1.0;
  const double r = double(rise_fall);
  return std::min({1.0, double(tau) / r, double(duration - tau) / r});
}

PulseTrain radar_pulse_train(Index n, const PulseParams& p) {
  require(n >= 1, "radar_pulse_train: n must be >= 1");
  require(p.num_pulses >= 0, "radar_pulse_train: num_pulses must be >= 0");
  require(p.duration >= 1 && p.duration <= n, "radar_pulse_train: need 1 <= duration <= n");
  require(p.rise_fall >= 0 && 2 * p.rise_fall <= p.duration,
          "radar_pulse_train: need 0 <= 2*rise_fall <= duration");
  require(0.0 <= p.f_lo && p.f_lo <= p.f_hi && p.f_hi <= 0.5,
          "radar_pulse_train: need 0 <= f_lo <= f_hi <= 1/2");

  PulseTrain out;
  out.signal.samples = CVector::Zero(n);
  out.signal.label = "radar_pulse_train";
  const Rng root(p.seed);
  for (Index k = 0; k < p.num_pulses; ++k) {
    Rng rng = root.split(static_cast<std::uint64_t>(k));
    Pulse pulse;
    pulse.frequency = rng.uniform(p.f_lo, p.f_hi);
    pulse.start = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n - p.duration + 1)));
    for (Index tau = 0; tau < p.duration; ++tau) {
      const Index t = pulse.start + tau;
      const double phase = 2.0 * std::numbers::pi * pulse.frequency * double(t);
      out.signal.samples[t] += pulse_envelope(p.duration, p.rise_fall, tau) * std::polar(1.0, phase);
    }
    out.pulses.push_back(pulse);
  }
  if (p.real_output) out.signal.samples = out.signal.samples.real().cast<Complex>();
  return out;
}

Signal dirac_comb(Index n) {
  require(n >= 1, "dirac_comb: n must be >= 1");
  const auto root = static_cast<Index>(std::llround(std::sqrt(double(n))));
  if (root * root != n) {
    throw InvalidArgument("dirac_comb: n=" + std::to_string(n) + " is not a perfect square");
  }
  Signal s;
  s.samples = CVector::Zero(n);
  for (Index j = 1; j <= root; ++j) s.samples[(j * root) % n] = 1.0;
  s.label = "dirac_comb";
  return s;
}

CompressibleSignal compressible_signal(const Dictionary& dict, double q, std::uint64_t seed) {
  require(q > 0.0, "compressible_signal: decay exponent must be positive");
  const Index d = dict.d();
  const Rng root(seed);
  Rng perm_stream = root.split(0);
  Rng phase_stream = root.split(1);
  const bool real = dict.map()->has_real_entries();
  const std::vector<Index> position = perm_stream.permutation(d);
  CVector x = CVector::Zero(d);
  for (Index k = 0; k < d; ++k) {
    const double magnitude = std::pow(double(k + 1), -q);
    const Complex unit = real ? Complex(phase_stream.sign(), 0.0)
                              : std::polar(1.0, 2.0 * std::numbers::pi * phase_stream.uniform());
    x[position[static_cast<std::size_t>(k)]] = magnitude * unit;
  }
  CompressibleSignal out;
  out.signal.samples = dict.apply(x);
  out.signal.label = "compressible";
  out.coefficients = std::move(x);
  return out;
}

std::vector<Index> largest_indices(const CVector& x, Index s) {
  require(s >= 0, "best_s_term: s must be >= 0");
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  const Index keep = std::min(s, x.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](Index i, Index j) {
    const double ai = std::abs(x[i]), aj = std::abs(x[j]);
    return ai > aj || (ai == aj && i < j);
  });
  order.resize(static_cast<std::size_t>(keep));
  return order;
}

CVector best_s_term(const CVector& x, Index s) {
  CVector out = CVector::Zero(x.size());
  for (Index i : largest_indices(x, s)) out[i] = x[i];
  return out;
}

ErrorMetrics metrics(const CVector& estimate, const CVector& truth) {
  if (estimate.size() != truth.size()) {
    throw InvalidArgument("metrics: length mismatch (" + std::to_string(estimate.size()) + " vs " +
                          std::to_string(truth.size()) + ")");
  }
  const double ref = truth.norm();
  if (ref == 0.0) throw InvalidArgument("metrics: relative error undefined for a zero reference");
  const CVector diff = estimate - truth;
  ErrorMetrics m;
  m.relative_error = diff.norm() / ref;
  m.rmse = diff.norm() / std::sqrt(double(truth.size()));
  m.linf = diff.size() > 0 ? diff.cwiseAbs().maxCoeff() : 0.0;
  return m;
}

}  // namespace cosparse
