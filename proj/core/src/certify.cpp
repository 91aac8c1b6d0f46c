#include "cosparse/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cosparse/rng.hpp"
#include "cosparse/signals.hpp"

namespace cosparse {

__extension__ typedef unsigned __int128 Uint128;
namespace {

double isometry_defect(double ratio) { return std::max(ratio - 1.0, 1.0 - ratio); }

/// Advance `subset` to the next s-combination of {0..d-1} in lexicographic
/// order; false after the last one.
bool next_combination(std::vector<Index>& subset, Index d) {
  const auto s = static_cast<Index>(subset.size());
  Index i = s - 1;
  while (i >= 0 && subset[static_cast<std::size_t>(i)] == d - s + i) --i;
  if (i < 0) return false;
  ++subset[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < s; ++j) {
    subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

}  // namespace

std::string_view to_string(DripMethod method) {
  return method == DripMethod::monte_carlo ? "monte_carlo" : "exact_enumeration";
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return Rng(master).split(trial).next_u64();
}

DripEstimate drip_monte_carlo(const SensingOperator& a, const Dictionary& dict, Index s,
                              std::int64_t trials, std::uint64_t seed) {
  require(a.n() == dict.n(), "drip_monte_carlo: operator and dictionary disagree on n");
  require(s >= 1 && s <= dict.d(), "drip_monte_carlo: need 1 <= s <= d");
  require(trials >= 1, "drip_monte_carlo: trials must be >= 1");
  const bool real = dict.map()->has_real_entries();
  DripEstimate est{s, 0.0, DripMethod::monte_carlo, trials, seed};
  for (std::int64_t t = 0; t < trials; ++t) {
    Rng rng = Rng(seed).split(static_cast<std::uint64_t>(t));
    CVector v;
    // Degenerate draws (v = 0, e.g. cancelling duplicate atoms) are redrawn.
    for (int attempt = 0; attempt < 64; ++attempt) {
      CVector x = CVector::Zero(dict.d());
      for (Index i : rng.sample_without_replacement(dict.d(), s)) {
        x[i] = real ? Complex(rng.normal(), 0.0) : rng.complex_normal();
      }
      v = dict.apply(x);
      if (v.norm() > 0.0) break;
    }
    const double vv = v.squaredNorm();
    if (vv == 0.0) continue;
    est.delta_hat = std::max(est.delta_hat, isometry_defect(a.apply(v).squaredNorm() / vv));
  }
  return est;
}

std::int64_t binomial(Index d, Index s) {
  if (s < 0 || s > d) return 0;
  s = std::min(s, d - s);
  // Exact in 128-bit: each partial product C(d - s + i, i) is an integer.
  Uint128 result = 1;
  for (Index i = 1; i <= s; ++i) {
    result = result * static_cast<Uint128>(d - s + i) / static_cast<Uint128>(i);
    if (result > static_cast<Uint128>(std::numeric_limits<std::int64_t>::max())) {
      return std::numeric_limits<std::int64_t>::max();
    }
  }
  return static_cast<std::int64_t>(result);
}

DripEstimate drip_exact_small(const SensingOperator& a, const Dictionary& dict, Index s,
                              std::int64_t cap) {
  require(a.n() == dict.n(), "drip_exact_small: operator and dictionary disagree on n");
  require(s >= 1 && s <= dict.d(), "drip_exact_small: need 1 <= s <= d");
  const Index d = dict.d();
  const std::int64_t supports = binomial(d, s);
  if (supports > cap) {
    throw CapExceeded("drip_exact_small: C(" + std::to_string(d) + "," + std::to_string(s) +
                      ") = " + std::to_string(supports) + " supports exceeds the cap of " +
                      std::to_string(cap) + "; use drip_monte_carlo instead");
  }
  const CMatrix dmat = dict.materialize();
  const CMatrix amat = a.materialize();
  DripEstimate est{s, 0.0, DripMethod::exact_enumeration, 0, 0};

  std::vector<Index> subset(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) subset[static_cast<std::size_t>(i)] = i;
  CMatrix cols(dict.n(), s);
  do {
    for (Index j = 0; j < s; ++j) cols.col(j) = dmat.col(subset[static_cast<std::size_t>(j)]);
    // Orthonormal basis of span(D_T) from the left singular vectors.
    Eigen::JacobiSVD<CMatrix> span(cols, Eigen::ComputeThinU);
    const RVector& sv = span.singularValues();
    const double tol = std::max(cols.rows(), cols.cols()) * std::numeric_limits<double>::epsilon() *
                       (sv.size() > 0 ? sv[0] : 0.0);
    Index rank = 0;
    while (rank < sv.size() && sv[rank] > tol) ++rank;
    ++est.count;
    if (rank == 0) continue;
    const CMatrix aq = amat * span.matrixU().leftCols(rank);
    Eigen::JacobiSVD<CMatrix> image(aq);
    const RVector& isv = image.singularValues();
    const double smax = isv.size() > 0 ? isv[0] : 0.0;
    const double smin = rank > aq.rows() ? 0.0 : isv[isv.size() - 1];
    est.delta_hat = std::max({est.delta_hat, smax * smax - 1.0, 1.0 - smin * smin});
  } while (next_combination(subset, d));
  return est;
}

double concentration_check(const SensingFactory& factory, const CVector& v, double delta,
                           std::int64_t trials, std::uint64_t seed) {
  require(trials >= 1, "concentration_check: trials must be >= 1");
  const double vv = v.squaredNorm();
  require(vv > 0.0, "concentration_check: v must be nonzero");
  std::int64_t failures = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const SensingOperator a = factory(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const double ratio = a.apply(v).squaredNorm() / vv;
    if (ratio < 1.0 - delta || ratio > 1.0 + delta) ++failures;
  }
  return double(failures) / double(trials);
}

ConstantsReport theorem_constants(double delta_sM, double delta_M, double c1, double c2,
                                  double rho, K2Variant variant) {
  require(delta_sM >= 0.0 && delta_sM < 1.0, "theorem_constants: need 0 <= delta_{s+M} < 1");
  require(delta_M >= 0.0 && delta_M < 1.0, "theorem_constants: need 0 <= delta_M < 1");
  require(c1 > 0.0 && c2 > 0.0 && rho > 0.0, "theorem_constants: c1, c2, rho must be positive");

  ConstantsReport r;
  r.c1 = c1;
  r.c2 = c2;
  r.rho = rho;
  r.delta_sM = delta_sM;
  r.delta_M = delta_M;
  r.variant = variant;

  const double slack = 1.0 - (c1 / 2.0 + rho + rho * c2);
  const double drip_term = std::sqrt(rho * (1.0 + delta_M));
  if (slack < 0.0) {
    r.valid = false;
    r.K1 = r.K2 = std::numeric_limits<double>::quiet_NaN();
    r.C0 = r.C1 = std::numeric_limits<double>::infinity();
    r.diagnostic = "1 - (c1/2 + rho + rho*c2) is negative; choose smaller c1, c2 or rho";
    return r;
  }
  r.K1 = std::sqrt(2.0 * c1 * (1.0 - delta_sM) * slack) - drip_term;
  const double k2_head = std::sqrt(2.0 * c1 * (1.0 - delta_sM) * (rho / c2 + rho));
  r.K2 = variant == K2Variant::verbatim ? k2_head - drip_term : k2_head + drip_term;
  r.valid = r.K1 > 0.0;
  if (r.valid) {
    r.C0 = 2.0 / r.K1;
    r.C1 = 2.0 * r.K2 / r.K1;
  } else {
    r.C0 = r.C1 = std::numeric_limits<double>::infinity();
    r.diagnostic = "K1 <= 0: the D-RIP constants are too large for these parameters";
  }
  return r;
}

ConstantsReport theorem_constants_for_delta(double delta, double c1, double c2, double rho,
                                            K2Variant variant) {
  return theorem_constants(delta, delta, c1, c2, rho, variant);
}

ErrorBoundCheck verify_error_bound(const CVector& f, const CVector& f_hat, const Dictionary& dict,
                                   Index s, double eps, double c0, double c1) {
  require(s >= 1, "verify_error_bound: s must be >= 1");
  require(f.size() == dict.n() && f_hat.size() == dict.n(),
          "verify_error_bound: signal length mismatch");
  const CVector coeffs = dict.adjoint(f);
  const double tail = l1_norm(coeffs - best_s_term(coeffs, s));
  ErrorBoundCheck out;
  out.lhs = (f_hat - f).norm();
  out.rhs = c0 * eps + c1 * tail / std::sqrt(double(s));
  out.holds = out.lhs <= out.rhs;
  out.tight_hypothesis = dict.is_tight();
  return out;
}

}  // namespace cosparse
