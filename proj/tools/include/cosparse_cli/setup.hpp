#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <cosparse/frames.hpp>
#include <cosparse/sensing.hpp>
#include <cosparse/signals.hpp>

namespace cosparse::cli {

/// Dictionary selection shared by the commands.
struct DictionarySpec {
  /// identity | dft | oversampled-dft | gabor | concat-if
  std::string kind = "concat-if";
  Index n = 64;
  /// Redundancy d / n for oversampled-dft and gabor.
  Index oversampling = 4;
  Index gabor_a = 8;
  double window_sigma = 6.0;
  /// Replace a Gabor system by its canonical tight frame.
  bool tighten = true;
};

/// Throws InvalidArgument for unknown kinds or infeasible parameters.
Dictionary make_dictionary(const DictionarySpec& spec);

/// Random operator of `kind` (gaussian | bernoulli | sdft); throws
/// InvalidArgument for an unknown kind.
SensingOperator make_sensing_operator(std::string_view kind, Index m, Index n, std::uint64_t seed);

/// Pulse train parameters scaled for a length-n window.
PulseParams desk_pulses(Index pulses, Index duration, Index rise_fall, std::uint64_t seed);

/// Seed of stream `k` inside trial `trial` of a run with master `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t k);

}  // namespace cosparse::cli
