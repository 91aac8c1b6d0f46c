#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "cosparse/frames.hpp"
#include "cosparse/sensing.hpp"

namespace cosparse {

enum class DripMethod { monte_carlo, exact_enumeration };

std::string_view to_string(DripMethod method);

/// Estimate of the D-RIP constant delta_s of A adapted to D.
struct DripEstimate {
  Index s = 0;
  double delta_hat = 0.0;
  DripMethod method = DripMethod::monte_carlo;
  /// Trials drawn (monte_carlo) or supports enumerated (exact_enumeration).
  std::int64_t count = 0;
  std::uint64_t seed = 0;
};

/// Seed of Monte-Carlo trial t: Rng(master).split(t).next_u64().
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Sampled lower bound on delta_s: each trial draws a uniform s-subset T and
/// Gaussian coefficients on T, sets v = D_T x and records |‖Av‖²/‖v‖² - 1|.
DripEstimate drip_monte_carlo(const SensingOperator& a, const Dictionary& dict, Index s,
                              std::int64_t trials, std::uint64_t seed);

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

/// Number of s-subsets of d items, saturating at INT64_MAX.
std::int64_t binomial(Index d, Index s);

/// Exact delta_s by enumerating every s-subset T, orthonormalizing D_T and
/// taking the extreme singular values of A Q_T. Throws CapExceeded when
/// C(d, s) exceeds `cap`.
DripEstimate drip_exact_small(const SensingOperator& a, const Dictionary& dict, Index s,
                              std::int64_t cap = kDefaultEnumerationCap);

using SensingFactory = std::function<SensingOperator(std::uint64_t seed)>;

/// Fraction of freshly drawn operators (trial t uses trial_seed(seed, t)) for
/// which ‖Av‖² leaves [(1 - delta)‖v‖², (1 + delta)‖v‖²].
double concentration_check(const SensingFactory& factory, const CVector& v, double delta,
                           std::int64_t trials, std::uint64_t seed);

enum class K2Variant {
  /// K2 with the -sqrt(rho (1 + delta_M)) term as printed.
  verbatim,
  /// K2 with +sqrt(rho (1 + delta_M)), as re-deriving the inequality chain gives.
  derived,
};

struct ConstantsReport {
  double c1 = 0.0;
  double c2 = 0.0;
  double rho = 0.0;
  double delta_sM = 0.0;
  double delta_M = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  double C0 = 0.0;
  double C1 = 0.0;
  bool valid = false;
  K2Variant variant = K2Variant::verbatim;
  std::string diagnostic;
};

/// K1 = sqrt(2c1(1-δ_{s+M})(1-(c1/2+ρ+ρc2))) - sqrt(ρ(1+δ_M))
/// K2 = sqrt(2c1(1-δ_{s+M})(ρ/c2+ρ)) ∓ sqrt(ρ(1+δ_M))
/// C0 = 2/K1, C1 = 2 K2/K1; valid iff K1 > 0.
ConstantsReport theorem_constants(double delta_sM, double delta_M, double c1, double c2,
                                  double rho, K2Variant variant = K2Variant::verbatim);

/// Same with δ_{s+M} = δ_M = delta (one δ_{7s} when M = 6s).
ConstantsReport theorem_constants_for_delta(double delta, double c1, double c2, double rho,
                                            K2Variant variant = K2Variant::verbatim);

struct ErrorBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// False when D is not a tight frame; the bound is still evaluated.
  bool tight_hypothesis = true;
};

/// ‖f_hat - f‖ <= C0 eps + C1 ‖D^*f - (D^*f)_s‖_1 / sqrt(s)
ErrorBoundCheck verify_error_bound(const CVector& f, const CVector& f_hat, const Dictionary& dict,
                                   Index s, double eps, double c0, double c1);

}  // namespace cosparse
