#pragma once

#include <optional>

#include "cosparse/linear_map.hpp"
#include "cosparse/types.hpp"

namespace cosparse {

/// Proximal map of lambda * sum_i w_i |v_i|: each complex entry's modulus is
/// shrunk by lambda * w_i (phase kept), clamping at zero. Unit weights when
/// `weights` is empty.
CVector soft_threshold(const CVector& v, double lambda, const std::optional<RVector>& weights = std::nullopt);

/// Euclidean projection onto {u : ||u - center|| <= radius}.
CVector project_l2_ball(const CVector& v, const CVector& center, double radius);

/// Projection onto {u : |u_i| <= bound_i} (phase kept). This is the proximal
/// map of the conjugate of the weighted l1 norm.
CVector clamp_modulus(const CVector& v, const RVector& bound);

/// Power-iteration estimate of the spectral norm ||K||. Iterates on K^*K until
/// the Rayleigh quotient is stationary to 1e-12 relative or `iters` is reached.
/// The start vector is drawn from `seed`.
double operator_norm_estimate(const LinearMap& k, int iters, std::uint64_t seed = 0x6E6F726DULL);

}  // namespace cosparse
