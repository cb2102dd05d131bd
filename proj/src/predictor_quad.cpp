#include "gpee/predictor_quad.hpp"

#include <cmath>

#include "gpee/errors.hpp"

namespace gpee {

int round_center_to_int(double center_real) {
  int v = static_cast<int>(std::floor(center_real * 255.0 + 0.5));
  return v < 0 ? 0 : (v > 255 ? 255 : v);
}

QuadResult predict_quad(const RingVector& y, const SimilarityGraph& g, double gamma) {
  if (gamma <= 0.0) throw Error(Errc::InvalidArgument, "gamma must be positive");

  Matrix9d A = gamma * laplacian(g);
  Vector9d b = Vector9d::Zero();
  for (int k = 0; k < 8; ++k) {
    int node = kRingNodes[k];
    A(node, node) += 1.0;  // H^T H is the identity on ring nodes
    b[node] = y[k];
  }

  Eigen::LLT<Matrix9d> llt(A);
  if (llt.info() != Eigen::Success)
    throw Error(Errc::SolveFailed, "non-positive pivot in the quadratic-prior solve");

  QuadResult r;
  r.x = llt.solve(b);
  r.center_real = r.x[kCenterNode];
  r.center_int = round_center_to_int(r.center_real);
  return r;
}

}  // namespace gpee
