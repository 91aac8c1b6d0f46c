#include "cosparse_cli/setup.hpp"

#include <cmath>

#include <cosparse/certify.hpp>

namespace cosparse::cli {

Dictionary make_dictionary(const DictionarySpec& spec) {
  require(spec.n >= 1, "dictionary: n must be >= 1");
  if (spec.kind == "identity") return identity_dictionary(spec.n);
  if (spec.kind == "dft") return build_oversampled_dft(spec.n, 1);
  if (spec.kind == "oversampled-dft") return build_oversampled_dft(spec.n, spec.oversampling);
  if (spec.kind == "concat-if") {
    return build_concat(identity_dictionary(spec.n), build_oversampled_dft(spec.n, 1),
                        1.0 / std::sqrt(2.0));
  }
  if (spec.kind == "gabor") {
    require(spec.gabor_a >= 1 && spec.n % spec.gabor_a == 0,
            "gabor: time step a = " + std::to_string(spec.gabor_a) + " must divide n = " +
                std::to_string(spec.n));
    const Index channels = spec.oversampling * spec.gabor_a;
    const Dictionary g =
        build_gabor({spec.n, spec.window_sigma, spec.gabor_a, 1.0 / double(channels)});
    return spec.tighten ? tighten(g) : g;
  }
  throw InvalidArgument("unknown dictionary '" + spec.kind +
                        "' (expected identity, dft, oversampled-dft, gabor or concat-if)");
}

SensingOperator make_sensing_operator(std::string_view kind, Index m, Index n, std::uint64_t seed) {
  const auto parsed = parse_sensing_kind(kind);
  if (!parsed || *parsed == SensingKind::dense) {
    throw InvalidArgument("unknown sensing kind '" + std::string(kind) +
                          "' (expected gaussian, bernoulli or sdft)");
  }
  return make_sensing({*parsed, m, n, seed});
}

PulseParams desk_pulses(Index pulses, Index duration, Index rise_fall, std::uint64_t seed) {
  PulseParams p;
  p.num_pulses = pulses;
  p.duration = duration;
  p.rise_fall = rise_fall;
  p.seed = seed;
  return p;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t k) {
  return trial_seed(trial_seed(seed, trial), k);
}

}  // namespace cosparse::cli
