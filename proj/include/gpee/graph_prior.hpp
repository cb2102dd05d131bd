#pragma once

#include <Eigen/Dense>
#include <array>

#include "gpee/image.hpp"

namespace gpee {

using Matrix9d = Eigen::Matrix<double, 9, 9>;
using Vector9d = Eigen::Matrix<double, 9, 1>;
using Vector20d = Eigen::Matrix<double, 20, 1>;
using Incidence20x9 = Eigen::Matrix<double, 20, 9>;

inline constexpr int kPatchNodes = 9;
inline constexpr int kGraphEdges = 20;
inline constexpr int kCenterNode = 4;

/// Ring observation slot -> patch node (all nodes except the center).
inline constexpr std::array<int, 8> kRingNodes = {0, 1, 2, 3, 5, 6, 7, 8};

struct GraphEdge {
  int i = 0;  // i < j, row-major node indices over the 3x3 grid
  int j = 0;
  double weight = 0.0;
};

/// The 20 adjacencies of the 8-connected 3x3 grid (6 horizontal, 6 vertical,
/// 8 diagonal), sorted by (i, j). This order is shared by the incidence rows
/// and every edge-indexed vector in the solvers.
const std::array<std::pair<int, int>, kGraphEdges>& canonical_edges();

/// Neighbor-similarity graph over the 3x3 patch. Edge weights follow
/// w = exp(-dloc^2/sigma_l^2 - (xi - xj)^2/sigma_x^2) with grid locations in
/// pixel units (dloc^2 is 1 for axis neighbors, 2 for diagonals) and
/// intensities in [0,1].
struct SimilarityGraph {
  std::array<GraphEdge, kGraphEdges> edges;
  double sigma_l = 0.5;
  double sigma_x = 0.5;
};

SimilarityGraph build_graph(const NormalizedPatch& matched, double sigma_l, double sigma_x);

/// Combinatorial Laplacian L = D - W ; rows sum to zero, PSD.
Matrix9d laplacian(const SimilarityGraph& g);

/// Edge-node incidence in canonical edge order: +1 at node i, -1 at node j.
Incidence20x9 incidence(const SimilarityGraph& g);

/// Edge differences z = F x without materializing F.
Vector20d apply_incidence(const Vector9d& x);

/// Unweighted F^T F (graph Laplacian of the plain 3x3 topology); constant.
const Matrix9d& incidence_gram();

}  // namespace gpee
