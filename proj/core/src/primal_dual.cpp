#include "cosparse/primal_dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cosparse/prox.hpp"

namespace cosparse {
namespace {

constexpr int kWindow = 10;
constexpr double kNormInflation = 1.01;

// Adaptive step balancing (residual balancing for PDHG).
constexpr double kAdaptStart = 0.5;
constexpr double kAdaptDecay = 0.95;
constexpr double kAdaptBand = 1.5;

// Restarts to the running average, triggered by fixed-point residual decay.
constexpr int kRestartCheck = 64;
constexpr double kRestartSufficient = 0.2;
constexpr double kRestartNecessary = 0.8;
constexpr double kRestartLength = 0.36;

double weighted_l1(const CVector& v, const std::optional<RVector>& w) {
  if (!w) return l1_norm(v);
  double total = 0.0;
  for (Index i = 0; i < v.size(); ++i) total += (*w)[i] * std::abs(v[i]);
  return total;
}

/// Conjugate gradients on B B^* u = rhs.
CVector solve_normal(const LinearMap& b, const CVector& rhs) {
  CVector u = CVector::Zero(rhs.size());
  CVector r = rhs;
  CVector p = r;
  double rr = r.squaredNorm();
  const double stop = 1e-28 * std::max(rr, 1e-300);
  CVector bp;
  const int max_iter = static_cast<int>(std::max<Index>(1000, 4 * rhs.size()));
  for (int it = 0; it < max_iter && rr > stop; ++it) {
    bp = b.apply(b.adjoint(p));
    const double curvature = std::real(p.dot(bp));
    if (curvature <= 0.0) break;
    const double alpha = rr / curvature;
    u += alpha * p;
    r -= alpha * bp;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  return u;
}

}  // namespace

CVector polish_feasibility(const LinearMap& b, const CVector& x, const CVector& y, double eps) {
  const CVector residual = b.apply(x) - y;
  const double norm = residual.norm();
  if (norm <= eps) return x;
  const CVector target = eps > 0.0 ? CVector(residual * (eps / norm)) : CVector::Zero(y.size());
  const CVector u = solve_normal(b, residual - target);
  CVector polished = x - b.adjoint(u);
  // A rank-deficient B B^* (m > n) can make CG wander; never return a worse point.
  if ((b.apply(polished) - y).norm() > norm) return x;
  return polished;
}

PrimalDualResult solve_primal_dual(const PrimalDualProblem& problem, const SolverConfig& cfg) {
  require(problem.sparsifier && problem.measurement, "solve_primal_dual: missing operator");
  const LinearMap& l = *problem.sparsifier;
  const LinearMap& b = *problem.measurement;
  require(l.cols() == b.cols(), "solve_primal_dual: L and B disagree on the primal dimension");
  require(problem.y.size() == b.rows(), "solve_primal_dual: measurement length mismatch");
  require(problem.eps >= 0.0, "solve_primal_dual: eps must be >= 0");
  require(cfg.max_iter >= 1, "solve_primal_dual: max_iter must be >= 1");
  require(cfg.tol_rel > 0.0, "solve_primal_dual: tol_rel must be positive");
  require(cfg.over_relaxation >= 1.0 && cfg.over_relaxation < 2.0,
          "solve_primal_dual: over_relaxation must lie in [1, 2)");
  if (problem.weights) {
    require(problem.weights->size() == l.rows(), "solve_primal_dual: weight length mismatch");
    require((problem.weights->array() > 0.0).all(), "solve_primal_dual: weights must be positive");
  }

  const Index p = l.rows();
  const Index m = b.rows();
  const double y_norm = problem.y.norm();
  const double tol_feas = cfg.tol_feas.value_or(1e-6 * y_norm);

  // Weights normalized to unit mean; the minimizer is unchanged.
  RVector bound = RVector::Ones(p);
  if (problem.weights) bound = *problem.weights / problem.weights->mean();

  const double l_norm = operator_norm_estimate(l, cfg.power_iters, cfg.seed);
  const double b_norm = operator_norm_estimate(b, cfg.power_iters, cfg.seed + 1);
  require(b_norm > 0.0, "solve_primal_dual: measurement operator is zero");
  const double beta = l_norm > 0.0 ? l_norm / b_norm : 1.0;
  const CVector y_scaled = beta * problem.y;
  const double radius = beta * problem.eps;

  // K = [L; beta B] as a pair of applies.
  auto apply_k = [&](const CVector& x, CVector& out) {
    out.resize(p + m);
    CVector part;
    l.apply_into(x, part);
    out.head(p) = part;
    b.apply_into(x, part);
    out.tail(m) = beta * part;
  };
  auto adjoint_k = [&](const CVector& u, CVector& out) {
    CVector part;
    l.adjoint_into(u.head(p), out);
    b.adjoint_into(u.tail(m), part);
    out += beta * part;
  };

  // ||K|| by power iteration on the stacked operator.
  double k_norm = 0.0;
  {
    struct Stacked final : LinearMap {
      Index r, c;
      std::function<void(const CVector&, CVector&)> fwd, bwd;
      Index rows() const override { return r; }
      Index cols() const override { return c; }
      void apply_into(const CVector& in, CVector& out) const override { fwd(in, out); }
      void adjoint_into(const CVector& in, CVector& out) const override { bwd(in, out); }
    } stacked;
    stacked.r = p + m;
    stacked.c = l.cols();
    stacked.fwd = apply_k;
    stacked.bwd = adjoint_k;
    k_norm = kNormInflation * operator_norm_estimate(stacked, cfg.power_iters, cfg.seed + 2);
  }
  require(k_norm > 0.0, "solve_primal_dual: zero operator");

  CVector x = problem.warm_start ? *problem.warm_start : CVector::Zero(l.cols());
  require(x.size() == l.cols(), "solve_primal_dual: warm start length mismatch");
  x = polish_feasibility(b, x, problem.y, problem.eps);

  CVector u = CVector::Zero(p + m);
  CVector kx, ktu = CVector::Zero(l.cols());
  apply_k(x, kx);

  double tau = 1.0 / k_norm;
  double sigma = 1.0 / k_norm;
  double adapt = kAdaptStart;
  const double rho = cfg.over_relaxation;

  auto evaluate = [&](const CVector& k_of_x) {
    IterationRecord rec;
    rec.objective = weighted_l1(k_of_x.head(p), problem.weights);
    rec.feasibility = (k_of_x.tail(m) - y_scaled).norm() / beta;
    return rec;
  };

  PrimalDualResult result;
  IterationRecord snapshot = evaluate(kx);
  CVector x_snapshot = x;
  bool stationary = false;

  // One iteration from (x, u) given K x and K^* u; returns the fixed-point
  // residual norms used for step balancing and restarts.
  struct Step {
    CVector x, kx, u, ktu;
    double primal_res = 0.0;
    double dual_res = 0.0;
  };
  auto step = [&](const CVector& x0, const CVector& kx0, const CVector& u0, const CVector& ktu0,
                  Step& out) {
    out.x = x0 - tau * ktu0;
    apply_k(out.x, out.kx);
    const CVector u_bar = u0 + sigma * (2.0 * out.kx - kx0);
    out.u.resize(p + m);
    out.u.head(p) = clamp_modulus(u_bar.head(p), bound);
    const CVector v = u_bar.tail(m);
    out.u.tail(m) = v - sigma * project_l2_ball(v / sigma, y_scaled, radius);
    adjoint_k(out.u, out.ktu);
    out.primal_res = ((x0 - out.x) / tau - (ktu0 - out.ktu)).norm();
    out.dual_res = ((u0 - out.u) / sigma - (kx0 - out.kx)).norm();
  };

  // Restart state: running averages since the last restart, and the
  // fixed-point residual measured when it happened.
  CVector x_avg = x, kx_avg = kx, u_avg = u, ktu_avg = ktu;
  CVector x_restart = x, u_restart = u;
  int avg_count = 0;
  int since_restart = 0;
  double restart_res = std::numeric_limits<double>::infinity();
  double last_candidate_res = std::numeric_limits<double>::infinity();

  Step next, trial;
  int iter = 0;
  while (iter < cfg.max_iter) {
    ++iter;
    ++since_restart;
    step(x, kx, u, ktu, next);

    if (cfg.adaptive_steps && adapt > 1e-6) {
      if (next.primal_res > kAdaptBand * next.dual_res) {
        tau /= (1.0 - adapt);
        sigma *= (1.0 - adapt);
        adapt *= kAdaptDecay;
      } else if (next.primal_res < next.dual_res / kAdaptBand) {
        tau *= (1.0 - adapt);
        sigma /= (1.0 - adapt);
        adapt *= kAdaptDecay;
      }
    }

    if (rho == 1.0) {
      x.swap(next.x);
      kx.swap(next.kx);
      u.swap(next.u);
      ktu.swap(next.ktu);
    } else {
      x += rho * (next.x - x);
      kx += rho * (next.kx - kx);
      u += rho * (next.u - u);
      ktu += rho * (next.ktu - ktu);
    }

    if (cfg.restarts) {
      ++avg_count;
      const double w = 1.0 / avg_count;
      x_avg += w * (x - x_avg);
      kx_avg += w * (kx - kx_avg);
      u_avg += w * (u - u_avg);
      ktu_avg += w * (ktu - ktu_avg);
      if (since_restart % kRestartCheck == 0) {
        const double current_res = std::hypot(next.primal_res, next.dual_res);
        step(x_avg, kx_avg, u_avg, ktu_avg, trial);
        const double avg_res = std::hypot(trial.primal_res, trial.dual_res);
        const bool use_avg = avg_res < current_res;
        const double candidate_res = use_avg ? avg_res : current_res;
        const bool sufficient = candidate_res <= kRestartSufficient * restart_res;
        const bool stalled = candidate_res <= kRestartNecessary * restart_res &&
                             candidate_res > last_candidate_res;
        const bool long_run = since_restart >= kRestartLength * iter;
        if (restart_res == std::numeric_limits<double>::infinity() || sufficient || stalled ||
            long_run) {
          if (use_avg) {
            x = x_avg;
            kx = kx_avg;
            u = u_avg;
            ktu = ktu_avg;
          }
          // Rebalance tau/sigma from the distance travelled since the last
          // restart (smoothed in log space).
          if (cfg.restart_rebalance) {
            const double dx = (x - x_restart).norm();
            const double du = (u - u_restart).norm();
            if (dx > 1e-12 && du > 1e-12) {
              const double omega = std::sqrt(sigma / tau);
              const double omega_new = std::exp(0.5 * std::log(du / dx) + 0.5 * std::log(omega));
              const double eta = std::sqrt(tau * sigma);
              tau = eta / omega_new;
              sigma = eta * omega_new;
            }
            x_restart = x;
            u_restart = u;
          }
          x_avg = x;
          kx_avg = kx;
          u_avg = u;
          ktu_avg = ktu;
          avg_count = 0;
          since_restart = 0;
          restart_res = candidate_res;
          last_candidate_res = std::numeric_limits<double>::infinity();
        } else {
          last_candidate_res = candidate_res;
        }
      }
    }

    const IterationRecord rec = evaluate(kx);
    if (cfg.history) result.history.push_back(rec);

    if (iter % kWindow == 0) {
      const double obj_scale = std::max(std::abs(rec.objective), 1e-300);
      const double feas_scale = std::max(y_norm, 1e-300);
      const double x_scale = std::max(x.norm(), 1e-300);
      stationary = std::abs(rec.objective - snapshot.objective) <= cfg.tol_rel * obj_scale &&
                   std::abs(rec.feasibility - snapshot.feasibility) <= cfg.tol_rel * feas_scale &&
                   (x - x_snapshot).norm() <= cfg.tol_rel * x_scale;
      snapshot = rec;
      x_snapshot = x;
      if (stationary && rec.feasibility <= problem.eps + tol_feas) break;
    }
  }

  if (cfg.polish_feasibility) {
    x = polish_feasibility(b, x, problem.y, problem.eps);
    apply_k(x, kx);
  }
  const IterationRecord final_rec = evaluate(kx);
  result.x = std::move(x);
  result.objective = final_rec.objective;
  result.feasibility = final_rec.feasibility;
  result.tol_feas = tol_feas;
  result.iterations = iter;
  result.converged = stationary && final_rec.feasibility <= problem.eps + tol_feas;
  return result;
}

}  // namespace cosparse
