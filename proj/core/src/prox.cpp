#include "cosparse/prox.hpp"

#include <cmath>

#include "cosparse/rng.hpp"

namespace cosparse {

CVector soft_threshold(const CVector& v, double lambda, const std::optional<RVector>& weights) {
  require(lambda >= 0.0, "soft_threshold: lambda must be >= 0");
  if (weights) require(weights->size() == v.size(), "soft_threshold: weight length mismatch");
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double threshold = lambda * (weights ? (*weights)[i] : 1.0);
    const double mod = std::abs(v[i]);
    out[i] = mod > threshold ? v[i] * ((mod - threshold) / mod) : Complex(0.0, 0.0);
  }
  return out;
}

CVector project_l2_ball(const CVector& v, const CVector& center, double radius) {
  require(v.size() == center.size(), "project_l2_ball: length mismatch");
  require(radius >= 0.0, "project_l2_ball: radius must be >= 0");
  const CVector offset = v - center;
  const double dist = offset.norm();
  if (dist <= radius) return v;
  return center + offset * (radius / dist);
}

CVector clamp_modulus(const CVector& v, const RVector& bound) {
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v[i]);
    out[i] = mod > bound[i] ? v[i] * (bound[i] / mod) : v[i];
  }
  return out;
}

double operator_norm_estimate(const LinearMap& k, int iters, std::uint64_t seed) {
  require(iters >= 1, "operator_norm_estimate: iters must be >= 1");
  Rng rng(seed);
  CVector v(k.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.complex_normal();
  v.normalize();
  double estimate = 0.0;
  CVector kv, ktkv;
  for (int it = 0; it < iters; ++it) {
    k.apply_into(v, kv);
    const double next = kv.norm();
    k.adjoint_into(kv, ktkv);
    const double norm = ktkv.norm();
    if (norm == 0.0) return next;
    v = ktkv / norm;
    if (it > 0 && std::abs(next - estimate) <= 1e-12 * next) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace cosparse
