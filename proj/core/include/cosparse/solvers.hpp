#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosparse/frames.hpp"
#include "cosparse/primal_dual.hpp"
#include "cosparse/sensing.hpp"
#include "cosparse/signals.hpp"

namespace cosparse {

/// Numerical audit of a solution against the known true signal f, with
/// h = f - f_hat and T0 the s largest analysis coefficients of f.
struct LemmaDiagnostics {
  Index s = 0;
  /// Block size M of the tail partition T1, T2, ... of T0^c.
  Index block_size = 0;
  /// max(0, ||D*_{T0^c} h||_1 - 2||D*_{T0^c} f||_1 - ||D*_{T0} h||_1)
  double cone_slack = 0.0;
  /// ||A h||_2
  double tube_norm = 0.0;
  /// sum_{j>=2} ||D*_{Tj} h||_2
  double tail_lhs = 0.0;
  /// sqrt(s/M) (||D*_{T0} h||_2 + 2||D*_{T0^c} f||_1 / sqrt(s))
  double tail_rhs = 0.0;
  /// tail_lhs / tail_rhs (0 when both vanish)
  double tail_ratio = 0.0;
  /// tail_lhs <= tail_rhs + cone_slack / sqrt(M), up to rounding
  bool tail_holds = true;
};

struct RecoveryReport {
  std::string method;
  Signal f_hat;
  /// Value of the solved program's objective at the returned point
  /// (||D^* f_hat||_1 for l1-analysis).
  double objective = 0.0;
  /// ||A f_hat - y||_2
  double feasibility = 0.0;
  double eps = 0.0;
  double tol_feas = 0.0;
  double tol_rel = 0.0;
  int iterations = 0;
  bool converged = false;
  Index n = 0;
  Index d = 0;
  Index m = 0;
  std::optional<LemmaDiagnostics> diagnostics;
  std::optional<double> relative_error;
  std::vector<IterationRecord> history;
  /// Synthesis coefficients x_hat (l1_synthesis only).
  std::optional<CVector> coefficients;
  /// Components of the split (split_analysis only).
  std::optional<CVector> component1;
  std::optional<CVector> component2;
};

/// min ||D^* f||_1  s.t.  ||A f - y||_2 <= eps
RecoveryReport l1_analysis(const SensingOperator& a, const Dictionary& dict, const CVector& y,
                           double eps, const SolverConfig& cfg = {});

/// min sum_i w_i |(D^* f)_i|  s.t.  ||A f - y||_2 <= eps
RecoveryReport weighted_l1_analysis(const SensingOperator& a, const Dictionary& dict,
                                    const CVector& y, double eps, const RVector& weights,
                                    const SolverConfig& cfg = {},
                                    const std::optional<CVector>& warm_start = std::nullopt);

/// delta_w = 0.1 * (s-th largest modulus), floored at 1e-8 * max modulus.
double reweighting_stabilizer(const CVector& coefficients, Index s);
/// w_i = 1 / (|c_i| + delta_w)
RVector reweighting_weights(const CVector& coefficients, Index s);

/// `rw_iters` sequential weighted solves; the first uses uniform weights (so
/// rw_iters = 1 is plain l1-analysis) and each later one uses weights from the
/// previous solution. `s` sets the stabilizer and defaults to m / 4.
RecoveryReport reweighted_l1_analysis(const SensingOperator& a, const Dictionary& dict,
                                      const CVector& y, double eps, int rw_iters,
                                      const SolverConfig& cfg = {},
                                      std::optional<Index> s = std::nullopt);

/// Continue from a finished solve: `extra_iters` further weighted solves, each
/// with weights from the previous solution and warm-started there.
RecoveryReport continue_reweighting(const SensingOperator& a, const Dictionary& dict,
                                    const CVector& y, double eps, const RecoveryReport& initial,
                                    int extra_iters, const SolverConfig& cfg = {},
                                    std::optional<Index> s = std::nullopt);

/// min ||x||_1  s.t.  ||A D x - y||_2 <= eps, reporting f_hat = D x_hat.
RecoveryReport l1_synthesis(const SensingOperator& a, const Dictionary& dict, const CVector& y,
                            double eps, const SolverConfig& cfg = {});

/// min ||D1^* f1||_1 + ||D2^* f2||_1  s.t.  ||A (f1 + f2) - y||_2 <= eps,
/// reporting f_hat = f1 + f2.
RecoveryReport split_analysis(const SensingOperator& a, const Dictionary& d1,
                              const Dictionary& d2, const CVector& y, double eps,
                              const SolverConfig& cfg = {});

/// Cone, tube and tail audit of f_hat against the true f.
LemmaDiagnostics audit_lemmas(const SensingOperator& a, const Dictionary& dict, const CVector& f,
                              const CVector& f_hat, Index s, Index block_size);

/// Fill report.diagnostics and report.relative_error from the true signal.
void attach_audit(RecoveryReport& report, const SensingOperator& a, const Dictionary& dict,
                  const CVector& f, Index s, Index block_size);

}  // namespace cosparse
