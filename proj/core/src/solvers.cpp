#include "cosparse/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace cosparse {
namespace {

void check_dims(const SensingOperator& a, Index n, const CVector& y, const char* method) {
  if (a.n() != n) {
    throw InvalidArgument(std::string(method) + ": sensing operator n=" + std::to_string(a.n()) +
                          " does not match dictionary n=" + std::to_string(n));
  }
  if (y.size() != a.m()) {
    throw InvalidArgument(std::string(method) + ": measurement length " + std::to_string(y.size()) +
                          " does not match sensing operator m=" + std::to_string(a.m()));
  }
}

RecoveryReport make_report(std::string method, const PrimalDualResult& r, const SolverConfig& cfg,
                           double eps, Index n, Index d, Index m) {
  RecoveryReport report;
  report.method = std::move(method);
  report.objective = r.objective;
  report.feasibility = r.feasibility;
  report.eps = eps;
  report.tol_feas = r.tol_feas;
  report.tol_rel = cfg.tol_rel;
  report.iterations = r.iterations;
  report.converged = r.converged;
  report.n = n;
  report.d = d;
  report.m = m;
  report.history = r.history;
  return report;
}

}  // namespace

RecoveryReport weighted_l1_analysis(const SensingOperator& a, const Dictionary& dict,
                                    const CVector& y, double eps, const RVector& weights,
                                    const SolverConfig& cfg,
                                    const std::optional<CVector>& warm_start) {
  check_dims(a, dict.n(), y, "l1_analysis");
  PrimalDualProblem problem;
  problem.sparsifier = dict.analysis_map();
  problem.measurement = a.map();
  problem.y = y;
  problem.eps = eps;
  problem.weights = weights;
  problem.warm_start = warm_start;
  const PrimalDualResult r = solve_primal_dual(problem, cfg);

  RecoveryReport report = make_report("analysis", r, cfg, eps, dict.n(), dict.d(), a.m());
  report.objective = l1_norm(dict.adjoint(r.x));
  report.f_hat.samples = r.x;
  report.f_hat.label = "f_hat";
  return report;
}

RecoveryReport l1_analysis(const SensingOperator& a, const Dictionary& dict, const CVector& y,
                           double eps, const SolverConfig& cfg) {
  check_dims(a, dict.n(), y, "l1_analysis");
  PrimalDualProblem problem;
  problem.sparsifier = dict.analysis_map();
  problem.measurement = a.map();
  problem.y = y;
  problem.eps = eps;
  const PrimalDualResult r = solve_primal_dual(problem, cfg);

  RecoveryReport report = make_report("analysis", r, cfg, eps, dict.n(), dict.d(), a.m());
  report.f_hat.samples = r.x;
  report.f_hat.label = "f_hat";
  return report;
}

double reweighting_stabilizer(const CVector& coefficients, Index s) {
  require(coefficients.size() >= 1, "reweighting_stabilizer: empty coefficient vector");
  const RVector mod = coefficients.cwiseAbs();
  const double peak = mod.maxCoeff();
  const Index rank = std::clamp<Index>(s, 1, mod.size());
  std::vector<double> sorted(mod.data(), mod.data() + mod.size());
  std::nth_element(sorted.begin(), sorted.begin() + (rank - 1), sorted.end(), std::greater<>());
  const double floor = peak > 0.0 ? 1e-8 * peak : 1e-8;
  return std::max(0.1 * sorted[static_cast<std::size_t>(rank - 1)], floor);
}

RVector reweighting_weights(const CVector& coefficients, Index s) {
  const double delta = reweighting_stabilizer(coefficients, s);
  return (coefficients.cwiseAbs().array() + delta).inverse().matrix();
}

RecoveryReport continue_reweighting(const SensingOperator& a, const Dictionary& dict,
                                    const CVector& y, double eps, const RecoveryReport& initial,
                                    int extra_iters, const SolverConfig& cfg,
                                    std::optional<Index> s) {
  require(extra_iters >= 0, "continue_reweighting: extra_iters must be >= 0");
  const Index sparsity = s.value_or(std::max<Index>(1, a.m() / 4));
  RecoveryReport report = initial;
  int total_iterations = report.iterations;
  for (int k = 0; k < extra_iters; ++k) {
    const RVector weights = reweighting_weights(dict.adjoint(report.f_hat.samples), sparsity);
    report = weighted_l1_analysis(a, dict, y, eps, weights, cfg, report.f_hat.samples);
    total_iterations += report.iterations;
  }
  report.method = "reweighted";
  report.iterations = total_iterations;
  return report;
}

RecoveryReport reweighted_l1_analysis(const SensingOperator& a, const Dictionary& dict,
                                      const CVector& y, double eps, int rw_iters,
                                      const SolverConfig& cfg, std::optional<Index> s) {
  require(rw_iters >= 1, "reweighted_l1_analysis: rw_iters must be >= 1");
  return continue_reweighting(a, dict, y, eps, l1_analysis(a, dict, y, eps, cfg), rw_iters - 1,
                              cfg, s);
}

RecoveryReport l1_synthesis(const SensingOperator& a, const Dictionary& dict, const CVector& y,
                            double eps, const SolverConfig& cfg) {
  check_dims(a, dict.n(), y, "l1_synthesis");
  PrimalDualProblem problem;
  problem.sparsifier = std::make_shared<IdentityMap>(dict.d());
  problem.measurement = std::make_shared<ComposedMap>(a.map(), dict.map());
  problem.y = y;
  problem.eps = eps;
  const PrimalDualResult r = solve_primal_dual(problem, cfg);

  RecoveryReport report = make_report("synthesis", r, cfg, eps, dict.n(), dict.d(), a.m());
  report.f_hat.samples = dict.apply(r.x);
  report.f_hat.label = "f_hat";
  report.coefficients = r.x;
  return report;
}

RecoveryReport split_analysis(const SensingOperator& a, const Dictionary& d1,
                              const Dictionary& d2, const CVector& y, double eps,
                              const SolverConfig& cfg) {
  if (d1.n() != d2.n()) {
    throw InvalidArgument("split_analysis: dictionaries disagree on n (" + std::to_string(d1.n()) +
                          " vs " + std::to_string(d2.n()) + ")");
  }
  check_dims(a, d1.n(), y, "split_analysis");
  const Index n = d1.n();
  PrimalDualProblem problem;
  problem.sparsifier = std::make_shared<BlockDiagMap>(
      std::vector<LinearMapPtr>{d1.analysis_map(), d2.analysis_map()});
  problem.measurement = std::make_shared<HStackMap>(std::vector<LinearMapPtr>{a.map(), a.map()});
  problem.y = y;
  problem.eps = eps;
  const PrimalDualResult r = solve_primal_dual(problem, cfg);

  RecoveryReport report = make_report("split", r, cfg, eps, n, d1.d() + d2.d(), a.m());
  report.component1 = r.x.head(n);
  report.component2 = r.x.tail(n);
  report.f_hat.samples = r.x.head(n) + r.x.tail(n);
  report.f_hat.label = "f_hat";
  return report;
}

}  // namespace cosparse
