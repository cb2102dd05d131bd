#include "gpee/predictor_gtv.hpp"

#include <cmath>

#include "gpee/errors.hpp"

namespace gpee {

namespace {
constexpr double kXTol = 1e-6;  // sup-norm stop on successive x iterates

Matrix9d xstep_matrix(double rho) {
  Matrix9d M = rho * incidence_gram();
  for (int node : kRingNodes) M(node, node) += 2.0;
  return M;
}
}  // namespace

GtvXStepCache make_xstep_cache(double rho) {
  if (rho <= 0.0) throw Error(Errc::InvalidArgument, "rho must be positive");
  GtvXStepCache c;
  c.rho = rho;
  c.llt.compute(xstep_matrix(rho));
  if (c.llt.info() != Eigen::Success)
    throw Error(Errc::SolveFailed, "non-positive pivot in the x-update system");
  return c;
}

double soft_threshold(double z, double theta) {
  if (z > theta) return z - theta;
  if (z < -theta) return z + theta;
  return 0.0;
}

Vector9d x_step(const RingVector& y, const Vector20d& z, const Vector20d& u, double rho,
                const GtvXStepCache* cache) {
  Vector9d b = Vector9d::Zero();
  for (int k = 0; k < 8; ++k) b[kRingNodes[k]] = 2.0 * y[k];
  const auto& edges = canonical_edges();
  for (int k = 0; k < kGraphEdges; ++k) {
    double t = rho * (u[k] - z[k]);
    b[edges[k].first] -= t;
    b[edges[k].second] += t;
  }
  if (cache && cache->rho == rho) return cache->llt.solve(b);
  GtvXStepCache local = make_xstep_cache(rho);
  return local.llt.solve(b);
}

Vector20d z_step(const Vector20d& fx_next, const Vector20d& u, const std::array<double, 20>& weights,
                 const GtvParams& p) {
  Vector20d a = fx_next + u;
  Vector20d z = a;
  for (int iter = 0; iter < p.pg_max_iters; ++iter) {
    double max_change = 0.0;
    for (int k = 0; k < kGraphEdges; ++k) {
      double stepped = z[k] + p.step_t * p.rho * (a[k] - z[k]);
      double zn = soft_threshold(stepped, p.step_t * p.gamma * weights[k]);
      max_change = std::max(max_change, std::abs(zn - z[k]));
      z[k] = zn;
    }
    if (max_change <= p.pg_tol) break;
  }
  return z;
}

Vector20d u_step(const Vector20d& u, const Vector20d& fx_next, const Vector20d& z_next) {
  return u + (fx_next - z_next);
}

std::array<double, 20> edge_weights(const SimilarityGraph& g) {
  std::array<double, 20> w{};
  for (int k = 0; k < kGraphEdges; ++k) w[k] = g.edges[k].weight;
  return w;
}

GtvResult predict_gtv(const RingVector& y, const SimilarityGraph& g, const GtvParams& p,
                      const GtvXStepCache* cache) {
  if (p.gamma <= 0.0 || p.rho <= 0.0 || p.step_t <= 0.0)
    throw Error(Errc::InvalidArgument, "gtv parameters must be positive");

  std::array<double, 20> w = edge_weights(g);

  Vector9d x = Vector9d::Zero();
  double ring_mean = 0.0;
  for (int k = 0; k < 8; ++k) {
    x[kRingNodes[k]] = y[k];
    ring_mean += y[k];
  }
  x[kCenterNode] = ring_mean / 8.0;

  Vector20d z = apply_incidence(x);
  Vector20d u = Vector20d::Zero();

  GtvResult r;
  r.converged = false;
  int iter = 0;
  for (iter = 1; iter <= p.admm_max_iters; ++iter) {
    Vector9d xn = x_step(y, z, u, p.rho, cache);
    double dx = (xn - x).cwiseAbs().maxCoeff();
    Vector20d fx = apply_incidence(xn);
    z = z_step(fx, u, w, p);
    u = u_step(u, fx, z);
    x = xn;
    r.primal_residual = (fx - z).cwiseAbs().maxCoeff();
    if (dx <= kXTol && r.primal_residual <= p.primal_tol) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(iter, p.admm_max_iters);
  r.x = x;
  r.center_real = x[kCenterNode];
  r.center_int = round_center_to_int(r.center_real);
  return r;
}

double gtv_objective(const RingVector& y, const SimilarityGraph& g, const Vector9d& x, double gamma) {
  double fid = 0.0;
  for (int k = 0; k < 8; ++k) {
    double d = y[k] - x[kRingNodes[k]];
    fid += d * d;
  }
  double tv = 0.0;
  for (const GraphEdge& e : g.edges) tv += e.weight * std::abs(x[e.i] - x[e.j]);
  return fid + gamma * tv;
}

double gtv_augmented(const RingVector& y, const SimilarityGraph& g, const Vector9d& x,
                     const Vector20d& z, const Vector20d& u, double gamma, double rho) {
  double fid = 0.0;
  for (int k = 0; k < 8; ++k) {
    double d = y[k] - x[kRingNodes[k]];
    fid += d * d;
  }
  double l1 = 0.0;
  for (int k = 0; k < kGraphEdges; ++k) l1 += g.edges[k].weight * std::abs(z[k]);
  Vector20d resid = apply_incidence(x) - z + u;
  return fid + gamma * l1 + 0.5 * rho * resid.squaredNorm();
}

}  // namespace gpee
