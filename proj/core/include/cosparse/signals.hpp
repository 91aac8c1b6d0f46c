#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosparse/frames.hpp"
#include "cosparse/types.hpp"

namespace cosparse {

struct Signal {
  CVector samples;
  std::optional<double> sample_rate;  // Hz
  std::string label;

  Index size() const { return samples.size(); }
};

/// Radar pulse train parameters, in samples and normalized frequency.
struct PulseParams {
  Index num_pulses = 6;
  Index duration = 1000;
  Index rise_fall = 100;
  double f_lo = 0.01;
  double f_hi = 0.5;
  std::uint64_t seed = 0;
  /// Take the real part of the complex sum.
  bool real_output = true;
};

struct Pulse {
  Index start = 0;
  double frequency = 0.0;
};

struct PulseTrain {
  Signal signal;
  std::vector<Pulse> pulses;
};

/// Trapezoidal envelope at offset tau from the pulse start: 0 outside
/// [0, duration), linear ramps of length rise_fall, 1 on the plateau.
double pulse_envelope(Index duration, Index rise_fall, Index tau);

/// Sum of trapezoid-windowed tones e^{2 pi i f t}; per pulse the carrier f is
/// uniform on [f_lo, f_hi] and the start uniform on [0, n - duration].
/// Pulses may overlap.
PulseTrain radar_pulse_train(Index n, const PulseParams& params);

/// Unit spikes every sqrt(n) samples; n must be a perfect square.
Signal dirac_comb(Index n);

struct CompressibleSignal {
  CVector coefficients;
  Signal signal;
};

/// Coefficients whose k-th largest modulus is exactly k^{-q}, with random
/// unit phases (real signs when the dictionary is real) at randomly permuted
/// positions; f = D x.
CompressibleSignal compressible_signal(const Dictionary& dict, double q, std::uint64_t seed);

/// Keep the s largest-modulus entries (ties to the lowest index), zero the rest.
CVector best_s_term(const CVector& x, Index s);

/// Indices of the s largest-modulus entries under the same tie-break, in
/// decreasing order of modulus.
std::vector<Index> largest_indices(const CVector& x, Index s);

struct ErrorMetrics {
  double relative_error = 0.0;
  double rmse = 0.0;
  double linf = 0.0;
};

/// Error of `estimate` against `truth`. Throws when ||truth|| = 0.
ErrorMetrics metrics(const CVector& estimate, const CVector& truth);

}  // namespace cosparse
