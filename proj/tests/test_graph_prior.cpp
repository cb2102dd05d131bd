#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "gpee/errors.hpp"
#include "gpee/graph_prior.hpp"
#include "helpers.hpp"

using namespace gpee;

namespace {

// 90-degree clockwise rotation of the 3x3 grid as a node permutation.
constexpr int kRot90[9] = {6, 3, 0, 7, 4, 1, 8, 5, 2};

NormalizedPatch rotate_patch(const NormalizedPatch& p) {
  NormalizedPatch out{};
  for (int n = 0; n < 9; ++n) out[n] = p[kRot90[n]];
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("graph_prior");

TEST_CASE("the 3x3 8-connected grid has exactly 20 canonical edges") {
  const auto& edges = canonical_edges();
  int horizontal = 0, vertical = 0, diagonal = 0;
  int prev_i = -1, prev_j = -1;
  for (auto [i, j] : edges) {
    CHECK(i < j);
    CHECK((i > prev_i || (i == prev_i && j > prev_j)));
    prev_i = i;
    prev_j = j;
    int dr = std::abs(i / 3 - j / 3), dc = std::abs(i % 3 - j % 3);
    if (dr == 0 && dc == 1) ++horizontal;
    else if (dr == 1 && dc == 0) ++vertical;
    else if (dr == 1 && dc == 1) ++diagonal;
    else CHECK(false);
  }
  CHECK(horizontal == 6);
  CHECK(vertical == 6);
  CHECK(diagonal == 8);
}

TEST_CASE("constant patch weights follow the location kernel") {
  NormalizedPatch flat{};
  flat.fill(0.3);
  SimilarityGraph g = build_graph(flat, 0.5, 0.5);
  for (const GraphEdge& e : g.edges) {
    int dr = std::abs(e.i / 3 - e.j / 3), dc = std::abs(e.i % 3 - e.j % 3);
    double expected = (dr + dc == 1) ? std::exp(-4.0) : std::exp(-8.0);
    CHECK(e.weight == doctest::Approx(expected).epsilon(1e-12));
  }
  // frozen values: exp(-4) and exp(-8)
  CHECK(std::exp(-4.0) == doctest::Approx(1.8315639e-2).epsilon(1e-6));
  CHECK(std::exp(-8.0) == doctest::Approx(3.3546263e-4).epsilon(1e-6));
}

TEST_CASE("axis edge with unit intensity gap") {
  NormalizedPatch p{};
  p[0] = 1.0;  // nodes 0 and 1 are axis neighbors with gap 1.0
  SimilarityGraph g = build_graph(p, 0.5, 0.5);
  CHECK(g.edges[0].i == 0);
  CHECK(g.edges[0].j == 1);
  CHECK(g.edges[0].weight == doctest::Approx(std::exp(-8.0)).epsilon(1e-12));
}

TEST_CASE("weights use only intensity differences") {
  std::mt19937 rng(67);
  NormalizedPatch p = testsup::random_patch(rng);
  NormalizedPatch q = p;
  for (auto& v : q) v += 0.05;
  SimilarityGraph a = build_graph(p, 0.5, 0.5);
  SimilarityGraph b = build_graph(q, 0.5, 0.5);
  for (int k = 0; k < kGraphEdges; ++k)
    CHECK(a.edges[k].weight == doctest::Approx(b.edges[k].weight).epsilon(1e-12));
}

TEST_CASE("non-positive sigma is rejected") {
  NormalizedPatch p{};
  CHECK_THROWS_AS(build_graph(p, 0.0, 0.5), Error);
  CHECK_THROWS_AS(build_graph(p, 0.5, -1.0), Error);
}

TEST_CASE("weights stay within the axis-edge ceiling") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    for (const GraphEdge& e : g.edges) {
      CHECK(e.weight > 0.0);
      CHECK(e.weight <= std::exp(-1.0 / (0.5 * 0.5)) + 1e-15);
    }
  }
}

TEST_CASE("laplacian structure on a single explicit edge") {
  SimilarityGraph g{};
  g.edges = build_graph(NormalizedPatch{}, 0.5, 0.5).edges;
  for (auto& e : g.edges) e.weight = 0.0;
  g.edges[0].weight = 0.7;  // edge (0,1)
  Matrix9d L = laplacian(g);
  CHECK(L(0, 0) == doctest::Approx(0.7));
  CHECK(L(1, 1) == doctest::Approx(0.7));
  CHECK(L(0, 1) == doctest::Approx(-0.7));
  CHECK(L(1, 0) == doctest::Approx(-0.7));
  CHECK(L.cwiseAbs().sum() == doctest::Approx(4 * 0.7));
}

TEST_CASE("laplacian rows sum to zero, symmetric, PSD, constant null vector") {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    Matrix9d L = laplacian(g);
    CHECK((L - L.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((L * Vector9d::Ones()).cwiseAbs().maxCoeff() <= 1e-14);
    Eigen::SelfAdjointEigenSolver<Matrix9d> es(L);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("incidence rows carry one +1 and one -1 and annihilate constants") {
  SimilarityGraph g = build_graph(NormalizedPatch{}, 0.5, 0.5);
  Incidence20x9 F = incidence(g);
  CHECK((F * Vector9d::Ones()).cwiseAbs().maxCoeff() == 0.0);
  const auto& edges = canonical_edges();
  for (int k = 0; k < kGraphEdges; ++k) {
    CHECK(F(k, edges[k].first) == 1.0);
    CHECK(F(k, edges[k].second) == -1.0);
    CHECK(F.row(k).cwiseAbs().sum() == 2.0);
  }
  CHECK(F(0, 0) == 1.0);
  CHECK(F(0, 1) == -1.0);
}

TEST_CASE("F^T diag(w) F reproduces the laplacian") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    Incidence20x9 F = incidence(g);
    Eigen::Matrix<double, 20, 20> W = Eigen::Matrix<double, 20, 20>::Zero();
    for (int k = 0; k < kGraphEdges; ++k) W(k, k) = g.edges[k].weight;
    Matrix9d L2 = F.transpose() * W * F;
    CHECK((L2 - laplacian(g)).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("apply_incidence agrees with the materialized matrix") {
  std::mt19937 rng(83);
  SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
  Incidence20x9 F = incidence(g);
  for (int trial = 0; trial < 20; ++trial) {
    Vector9d x = Vector9d::Random();
    CHECK((apply_incidence(x) - F * x).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("rotating the patch permutes the edge weights") {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 20; ++trial) {
    NormalizedPatch p = testsup::random_patch(rng);
    SimilarityGraph g = build_graph(p, 0.5, 0.5);
    SimilarityGraph gr = build_graph(rotate_patch(p), 0.5, 0.5);
    // weight of rotated edge (i,j) equals weight of original (kRot90[i], kRot90[j])
    auto weight_of = [&](const SimilarityGraph& graph, int a, int b) {
      if (a > b) std::swap(a, b);
      for (const GraphEdge& e : graph.edges)
        if (e.i == a && e.j == b) return e.weight;
      REQUIRE(false);
      return 0.0;
    };
    for (const GraphEdge& e : gr.edges) {
      double original = weight_of(g, kRot90[e.i], kRot90[e.j]);
      CHECK(e.weight == doctest::Approx(original).epsilon(1e-12));
    }
  }
}

TEST_SUITE_END();
