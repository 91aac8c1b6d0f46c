#include <algorithm>
#include <cmath>
#include <numeric>

#include "cosparse/solvers.hpp"

namespace cosparse {

LemmaDiagnostics audit_lemmas(const SensingOperator& a, const Dictionary& dict, const CVector& f,
                              const CVector& f_hat, Index s, Index block_size) {
  require(s >= 1, "audit_lemmas: s must be >= 1");
  require(block_size >= 1, "audit_lemmas: block size must be >= 1");
  require(f.size() == dict.n() && f_hat.size() == dict.n(), "audit_lemmas: signal length mismatch");

  const CVector h = f - f_hat;
  const CVector df = dict.adjoint(f);
  const CVector dh = dict.adjoint(h);
  const Index d = df.size();

  std::vector<bool> in_t0(static_cast<std::size_t>(d), false);
  for (Index i : largest_indices(df, s)) in_t0[static_cast<std::size_t>(i)] = true;

  double tail_f_l1 = 0.0, head_h_l1 = 0.0, tail_h_l1 = 0.0, head_h_sq = 0.0;
  std::vector<Index> rest;
  rest.reserve(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    if (in_t0[static_cast<std::size_t>(i)]) {
      head_h_l1 += std::abs(dh[i]);
      head_h_sq += std::norm(dh[i]);
    } else {
      tail_f_l1 += std::abs(df[i]);
      tail_h_l1 += std::abs(dh[i]);
      rest.push_back(i);
    }
  }

  LemmaDiagnostics diag;
  diag.s = s;
  diag.block_size = block_size;
  diag.cone_slack = std::max(0.0, tail_h_l1 - 2.0 * tail_f_l1 - head_h_l1);
  diag.tube_norm = a.apply(h).norm();

  // T1, T2, ...: blocks of size M over T0^c in decreasing |D^* h|.
  std::stable_sort(rest.begin(), rest.end(),
                   [&](Index i, Index j) { return std::abs(dh[i]) > std::abs(dh[j]); });
  double lhs = 0.0;
  for (std::size_t start = static_cast<std::size_t>(block_size); start < rest.size();
       start += static_cast<std::size_t>(block_size)) {
    const std::size_t stop = std::min(rest.size(), start + static_cast<std::size_t>(block_size));
    double sq = 0.0;
    for (std::size_t k = start; k < stop; ++k) sq += std::norm(dh[rest[k]]);
    lhs += std::sqrt(sq);
  }
  const double rho = double(s) / double(block_size);
  const double eta = 2.0 * tail_f_l1 / std::sqrt(double(s));
  diag.tail_lhs = lhs;
  diag.tail_rhs = std::sqrt(rho) * (std::sqrt(head_h_sq) + eta);
  diag.tail_ratio = diag.tail_rhs > 0.0 ? lhs / diag.tail_rhs : (lhs > 0.0 ? INFINITY : 0.0);
  const double allowance = diag.cone_slack / std::sqrt(double(block_size));
  const double rounding = 1e-12 * (df.norm() + dh.norm());
  diag.tail_holds = lhs <= diag.tail_rhs + allowance + rounding;
  return diag;
}

void attach_audit(RecoveryReport& report, const SensingOperator& a, const Dictionary& dict,
                  const CVector& f, Index s, Index block_size) {
  report.diagnostics = audit_lemmas(a, dict, f, report.f_hat.samples, s, block_size);
  if (f.norm() > 0.0) report.relative_error = metrics(report.f_hat.samples, f).relative_error;
}

}  // namespace cosparse
