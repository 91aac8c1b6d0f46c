#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "cosparse/linear_map.hpp"
#include "cosparse/types.hpp"

namespace cosparse {

enum class SensingKind { gaussian, bernoulli, subsampled_dft_sign, dense };

std::string_view to_string(SensingKind kind);
std::optional<SensingKind> parse_sensing_kind(std::string_view text);

/// Everything needed to regenerate a random operator bit-for-bit.
struct SensingDescriptor {
  SensingKind kind = SensingKind::gaussian;
  Index m = 0;
  Index n = 0;
  std::uint64_t seed = 0;

  bool operator==(const SensingDescriptor&) const = default;
};

/// Measurement operator A: C^n -> C^m.
class SensingOperator {
 public:
  SensingOperator(LinearMapPtr map, SensingDescriptor descriptor);

  Index m() const { return map_->rows(); }
  Index n() const { return map_->cols(); }
  SensingKind kind() const { return descriptor_.kind; }
  std::uint64_t seed() const { return descriptor_.seed; }
  const SensingDescriptor& descriptor() const { return descriptor_; }
  const LinearMapPtr& map() const { return map_; }

  CVector apply(const CVector& f) const { return map_->apply(f); }
  CVector adjoint(const CVector& y) const { return map_->adjoint(y); }
  CMatrix materialize() const { return map_->to_dense(); }

 private:
  LinearMapPtr map_;
  SensingDescriptor descriptor_;
};

/// Entries iid N(0, 1/m), drawn row-major from Rng(seed).
SensingOperator gaussian_sensing(Index m, Index n, std::uint64_t seed);
/// Entries +-1/sqrt(m) with equal probability, drawn row-major from Rng(seed).
SensingOperator bernoulli_sensing(Index m, Index n, std::uint64_t seed);
/// sqrt(n/m) R F S: S random signs (stream 0 of the seed), F the unitary
/// n-point DFT, R a uniform m-subset of rows (stream 1). Requires m <= n.
SensingOperator subsampled_dft_sign(Index m, Index n, std::uint64_t seed);
/// Wrap an explicit matrix; kind dense, seed 0.
SensingOperator dense_sensing(CMatrix matrix);
/// Rebuild a random operator from its descriptor. Dense descriptors carry no
/// matrix and are rejected.
SensingOperator make_sensing(const SensingDescriptor& descriptor);

struct Measurement {
  CVector y;
  /// Realized ||z||_2.
  double noise_norm = 0.0;
};

/// y = A f + z with z iid N(0, sigma^2). When A or f is complex the noise is
/// circular complex (real and imaginary parts each of variance sigma^2 / 2).
Measurement measure(const SensingOperator& a, const CVector& f, double sigma, std::uint64_t seed);

/// High-percentile bound sqrt(m + 2 sqrt(2m)) * sigma on ||z||_2.
double percentile_epsilon(Index m, double sigma);

}  // namespace cosparse
