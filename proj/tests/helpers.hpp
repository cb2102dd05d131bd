#pragma once

// Shared test utilities: random instance generators and independent oracles.
// Every oracle here is written against the math directly, not the library
// implementation paths it checks.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gpee/codec.hpp"
#include "gpee/graph_prior.hpp"
#include "gpee/patch_search.hpp"
#include "gpee/predictor_gtv.hpp"
#include "gpee/predictor_quad.hpp"
#include "gpee/tensor_gate.hpp"

namespace testsup {

inline gpee::GrayImage random_image(int w, int h, std::mt19937& rng, int lo = 0, int hi = 255) {
  std::uniform_int_distribution<int> d(lo, hi);
  gpee::GrayImage img(w, h);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(d(rng));
  return img;
}

// Smooth-ish image: random low values then a box blur, so predictors have
// structure to work with while staying inside [lo, hi].
inline gpee::GrayImage smooth_image(int w, int h, std::mt19937& rng, int lo = 20, int hi = 235) {
  gpee::GrayImage noise = random_image(w, h, rng, lo, hi);
  gpee::GrayImage img(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      int sum = 0, n = 0;
      for (int dr = -2; dr <= 2; ++dr)
        for (int dc = -2; dc <= 2; ++dc) {
          int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
          sum += noise.at(rr, cc);
          ++n;
        }
      img.at(r, c) = static_cast<std::uint8_t>(sum / n);
    }
  return img;
}

inline gpee::RingVector random_ring(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, 255);
  gpee::RingVector y;
  for (auto& v : y) v = d(rng) / 255.0;
  return y;
}

inline gpee::NormalizedPatch random_patch(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, 255);
  gpee::NormalizedPatch p;
  for (auto& v : p) v = d(rng) / 255.0;
  return p;
}

inline std::vector<std::uint8_t> random_bit_vec(std::size_t n, std::mt19937& rng) {
  std::bernoulli_distribution d(0.5);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = d(rng) ? 1 : 0;
  return bits;
}

// Gradient descent on ||y - Hx||^2 + gamma x^T L x, run until the normal
// equation residual drops below `resid_tol`.
inline gpee::Vector9d quad_gd_oracle(const gpee::RingVector& y, const gpee::SimilarityGraph& g,
                                     double gamma, double resid_tol = 1e-12,
                                     long max_iters = 2000000) {
  gpee::Matrix9d L = gpee::laplacian(g);
  gpee::Matrix9d A = gamma * L;
  gpee::Vector9d b = gpee::Vector9d::Zero();
  for (int k = 0; k < 8; ++k) {
    int node = gpee::kRingNodes[k];
    A(node, node) += 1.0;
    b[node] = y[k];
  }
  // Step below 1/lambda_max; lambda_max <= max row sum of |A|.
  double bound = 0.0;
  for (int i = 0; i < 9; ++i) bound = std::max(bound, A.row(i).cwiseAbs().sum());
  double eta = 0.9 / bound;
  gpee::Vector9d x = b;  // warm, arbitrary deterministic start
  for (long it = 0; it < max_iters; ++it) {
    gpee::Vector9d r = A * x - b;
    if (r.cwiseAbs().maxCoeff() <= resid_tol) break;
    x -= eta * r;
  }
  return x;
}

// ADMM identical in shape to the implementation but with the exact separable
// minimizer for the z subproblem: z = soft(Fx + u, gamma w / rho).
inline gpee::Vector9d gtv_exact_prox_oracle(const gpee::RingVector& y, const gpee::SimilarityGraph& g,
                                            const gpee::GtvParams& p) {
  auto w = gpee::edge_weights(g);
  gpee::Vector9d x = gpee::Vector9d::Zero();
  double mean = 0.0;
  for (int k = 0; k < 8; ++k) {
    x[gpee::kRingNodes[k]] = y[k];
    mean += y[k];
  }
  x[gpee::kCenterNode] = mean / 8.0;
  gpee::Vector20d z = gpee::apply_incidence(x);
  gpee::Vector20d u = gpee::Vector20d::Zero();
  for (int it = 1; it <= p.admm_max_iters; ++it) {
    gpee::Vector9d xn = gpee::x_step(y, z, u, p.rho);
    double dx = (xn - x).cwiseAbs().maxCoeff();
    gpee::Vector20d fx = gpee::apply_incidence(xn);
    for (int k = 0; k < gpee::kGraphEdges; ++k)
      z[k] = gpee::soft_threshold(fx[k] + u[k], p.gamma * w[k] / p.rho);
    u = u + (fx - z);
    x = xn;
    if (dx <= 1e-6 && (fx - z).cwiseAbs().maxCoeff() <= p.primal_tol) break;
  }
  return x;
}

// Four-corner accumulation written scalar-by-scalar as an independent check
// of the tensor stencil.
inline gpee::StructureTensor tensor_oracle(const gpee::GrayImage& img, gpee::Pos p) {
  auto v = [&](int dr, int dc) { return img.at(p.row + dr, p.col + dc) / 255.0; };
  double gx[4], gy[4];
  // corners in order (-1,-1), (-1,+1), (+1,-1), (+1,+1)
  gx[0] = v(-1, 0) - v(-1, -1);
  gy[0] = v(0, -1) - v(-1, -1);
  gx[1] = v(-1, 1) - v(-1, 0);
  gy[1] = v(0, 1) - v(-1, 1);
  gx[2] = v(1, 0) - v(1, -1);
  gy[2] = v(1, -1) - v(0, -1);
  gx[3] = v(1, 1) - v(1, 0);
  gy[3] = v(1, 1) - v(0, 1);
  gpee::StructureTensor t;
  for (int k = 0; k < 4; ++k) {
    t.jxx += gx[k] * gx[k];
    t.jxy += gx[k] * gy[k];
    t.jyy += gy[k] * gy[k];
  }
  return t;
}

}  // namespace testsup
