#include "gpee/graph_prior.hpp"

#include <cmath>
#include <cstdlib>

#include "gpee/errors.hpp"

namespace gpee {

const std::array<std::pair<int, int>, kGraphEdges>& canonical_edges() {
  static const auto edges = [] {
    std::array<std::pair<int, int>, kGraphEdges> e{};
    int k = 0;
    for (int i = 0; i < kPatchNodes; ++i)
      for (int j = i + 1; j < kPatchNodes; ++j) {
        int dr = std::abs(i / 3 - j / 3);
        int dc = std::abs(i % 3 - j % 3);
        if (dr <= 1 && dc <= 1) e[k++] = {i, j};
      }
    return e;
  }();
  return edges;
}

SimilarityGraph build_graph(const NormalizedPatch& matched, double sigma_l, double sigma_x) {
  if (sigma_l <= 0.0 || sigma_x <= 0.0)
    throw Error(Errc::InvalidArgument, "sigma parameters must be positive");
  SimilarityGraph g;
  g.sigma_l = sigma_l;
  g.sigma_x = sigma_x;
  const auto& edges = canonical_edges();
  for (int k = 0; k < kGraphEdges; ++k) {
    auto [i, j] = edges[k];
    int dr = i / 3 - j / 3;
    int dc = i % 3 - j % 3;
    double loc2 = static_cast<double>(dr * dr + dc * dc);  // 1 axis, 2 diagonal
    double di = matched[i] - matched[j];
    g.edges[k] = {i, j, std::exp(-loc2 / (sigma_l * sigma_l) - di * di / (sigma_x * sigma_x))};
  }
  return g;
}

Matrix9d laplacian(const SimilarityGraph& g) {
  Matrix9d L = Matrix9d::Zero();
  for (const GraphEdge& e : g.edges) {
    L(e.i, e.j) -= e.weight;
    L(e.j, e.i) -= e.weight;
    L(e.i, e.i) += e.weight;
    L(e.j, e.j) += e.weight;
  }
  return L;
}

Incidence20x9 incidence(const SimilarityGraph& g) {
  (void)g;  // topology only; weights do not enter F
  Incidence20x9 F = Incidence20x9::Zero();
  const auto& edges = canonical_edges();
  for (int k = 0; k < kGraphEdges; ++k) {
    F(k, edges[k].first) = 1.0;
    F(k, edges[k].second) = -1.0;
  }
  return F;
}

Vector20d apply_incidence(const Vector9d& x) {
  Vector20d z;
  const auto& edges = canonical_edges();
  for (int k = 0; k < kGraphEdges; ++k) z[k] = x[edges[k].first] - x[edges[k].second];
  return z;
}

const Matrix9d& incidence_gram() {
  static const Matrix9d FtF = [] {
    SimilarityGraph dummy{};
    Incidence20x9 F = incidence(dummy);
    Matrix9d m = F.transpose() * F;
    return m;
  }();
  return FtF;
}

}  // namespace gpee
