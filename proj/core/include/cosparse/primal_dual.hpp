#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cosparse/linear_map.hpp"
#include "cosparse/types.hpp"

namespace cosparse {

struct SolverConfig {
  int max_iter = 20000;
  /// Relative change of (objective, feasibility, iterate) over a 10-iteration
  /// window that counts as stationary.
  double tol_rel = 1e-6;
  /// Slack on the eps-ball; defaults to 1e-6 * ||y||.
  std::optional<double> tol_feas;
  int power_iters = 200;
  /// Relaxation factor in [1, 2).
  double over_relaxation = 1.0;
  /// Balance primal and dual step sizes from their residuals.
  bool adaptive_steps = true;
  /// Restart from the running average of the iterates when the fixed-point
  /// residual has decayed enough since the last restart.
  bool restarts = true;
  bool restart_rebalance = true;
  /// Project the final iterate onto the constraint set along the range of the
  /// measurement adjoint (a conjugate-gradient solve on B B^*).
  bool polish_feasibility = true;
  bool history = false;
  std::uint64_t seed = 0;
};

struct IterationRecord {
  double objective = 0.0;
  double feasibility = 0.0;
};

/// min sum_i w_i |(L x)_i|  subject to  ||B x - y||_2 <= eps.
struct PrimalDualProblem {
  LinearMapPtr sparsifier;   // L
  LinearMapPtr measurement;  // B
  CVector y;
  double eps = 0.0;
  std::optional<RVector> weights;
  std::optional<CVector> warm_start;
};

struct PrimalDualResult {
  CVector x;
  double objective = 0.0;
  double feasibility = 0.0;
  double tol_feas = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

/// First-order primal-dual splitting with two dual blocks: one for L (whose
/// proximal step clamps moduli at the weights) and one for B (projection onto
/// the eps-ball around y, via Moreau's identity). The B block is rescaled so
/// both blocks have comparable norm; step sizes satisfy tau*sigma*||K||^2 < 1
/// for the stacked operator K with ||K|| from power iteration inflated by 1.01.
PrimalDualResult solve_primal_dual(const PrimalDualProblem& problem, const SolverConfig& cfg);

/// x - B^*u with B B^* u = (B x - y) - r_target, where r_target is the
/// residual pulled back onto the eps-sphere. Leaves x unchanged when already
/// feasible.
CVector polish_feasibility(const LinearMap& b, const CVector& x, const CVector& y, double eps);

}  // namespace cosparse
