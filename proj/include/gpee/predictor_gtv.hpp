#pragma once

#include "gpee/graph_prior.hpp"
#include "gpee/predictor_quad.hpp"

namespace gpee {

struct GtvParams {
  double gamma = 0.5;
  double rho = 5.0;
  double step_t = 0.1;
  int admm_max_iters = 200;
  int pg_max_iters = 50;
  double primal_tol = 1e-5;
  double pg_tol = 1e-7;
};

struct GtvResult {
  Vector9d x;
  double center_real;
  int center_int;
  bool converged = false;  // false: hit the iteration cap; result is still valid and deterministic
  int iterations = 0;
  double primal_residual = 0.0;  // ||Fx - z||_inf at termination
};

/// Cached factorization of the x-update system 2 H^T H + rho F^T F, which is
/// graph-independent (F is topology only). Reuse it across predictions.
struct GtvXStepCache {
  double rho = 0.0;
  Eigen::LLT<Matrix9d> llt;
};
GtvXStepCache make_xstep_cache(double rho);

double soft_threshold(double z, double theta);

/// Solves (2 H^T H + rho F^T F) x = 2 H^T y - rho F^T (u - z).
Vector9d x_step(const RingVector& y, const Vector20d& z, const Vector20d& u, double rho,
                const GtvXStepCache* cache = nullptr);

/// Proximal-gradient inner loop for the z subproblem: gradient steps of size
/// step_t on the quadratic coupling term followed by soft thresholding at
/// step_t * gamma * w per edge, started from fx_next + u, until the largest
/// per-edge change drops below pg_tol or pg_max_iters is hit.
Vector20d z_step(const Vector20d& fx_next, const Vector20d& u, const std::array<double, 20>& weights,
                 const GtvParams& p);

Vector20d u_step(const Vector20d& u, const Vector20d& fx_next, const Vector20d& z_next);

/// ADMM with the nested proximal-gradient z update. Deterministic: fixed
/// initialization (ring observations with the center at the ring mean, z = Fx,
/// u = 0), fixed iteration order, fixed caps.
GtvResult predict_gtv(const RingVector& y, const SimilarityGraph& g, const GtvParams& p,
                      const GtvXStepCache* cache = nullptr);

/// l2 / weighted-l1 objective value at x (test and diagnostics support).
double gtv_objective(const RingVector& y, const SimilarityGraph& g, const Vector9d& x, double gamma);

/// Augmented-Lagrangian value (scaled form, constant term dropped).
double gtv_augmented(const RingVector& y, const SimilarityGraph& g, const Vector9d& x,
                     const Vector20d& z, const Vector20d& u, double gamma, double rho);

std::array<double, 20> edge_weights(const SimilarityGraph& g);

}  // namespace gpee
