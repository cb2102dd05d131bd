#pragma once

#include "gpee/graph_prior.hpp"

namespace gpee {

/// Rounding shared by every predictor: round half up on the 255-scaled value,
/// then clamp to [0, 255]. Encoder and decoder must agree bit-for-bit.
int round_center_to_int(double center_real);

struct QuadResult {
  Vector9d x;          // restored patch in normalized units
  double center_real;  // x[4]
  int center_int;      // rounded and clamped
};

/// Closed-form MAP restoration under the quadratic Laplacian prior:
/// x = (H^T H + gamma L)^{-1} H^T y, solved by a Cholesky factorization.
/// The system matrix is positive definite for every graph with positive
/// weights, so a failed factorization signals a construction bug.
QuadResult predict_quad(const RingVector& y, const SimilarityGraph& g, double gamma);

}  // namespace gpee
