#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "gpee/errors.hpp"
#include "gpee/predictor_quad.hpp"
#include "helpers.hpp"

using namespace gpee;

TEST_SUITE_BEGIN("predictor_quad");

TEST_CASE("round half up on the 255 scale") {
  CHECK(round_center_to_int(127.5 / 255.0) == 128);
  CHECK(round_center_to_int(127.49 / 255.0) == 127);
  CHECK(round_center_to_int(-0.2) == 0);
  CHECK(round_center_to_int(1.2) == 255);
  CHECK(round_center_to_int(0.0) == 0);
  CHECK(round_center_to_int(1.0) == 255);
}

TEST_CASE("constant ring is reproduced exactly") {
  std::mt19937 rng(97);
  for (double c : {0.0, 0.25, 0.5, 200.0 / 255.0, 1.0}) {
    RingVector y;
    y.fill(c);
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    QuadResult r = predict_quad(y, g, 0.5);
    for (int n = 0; n < 9; ++n) CHECK(r.x[n] == doctest::Approx(c).epsilon(1e-12));
    CHECK(r.center_int == round_center_to_int(c));
  }
}

TEST_CASE("closed form matches the gradient-descent oracle") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    RingVector y = testsup::random_ring(rng);
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    QuadResult r = predict_quad(y, g, 0.5);
    Vector9d oracle = testsup::quad_gd_oracle(y, g, 0.5);
    CHECK((r.x - oracle).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("system matrix is positive definite for random patches") {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 1000; ++trial) {
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    Matrix9d A = 0.5 * laplacian(g);
    for (int node : kRingNodes) A(node, node) += 1.0;
    Eigen::SelfAdjointEigenSolver<Matrix9d> es(A);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("solution satisfies the normal equations tightly") {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    RingVector y = testsup::random_ring(rng);
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    QuadResult r = predict_quad(y, g, 0.5);
    Matrix9d A = 0.5 * laplacian(g);
    Vector9d b = Vector9d::Zero();
    for (int k = 0; k < 8; ++k) {
      A(kRingNodes[k], kRingNodes[k]) += 1.0;
      b[kRingNodes[k]] = y[k];
    }
    CHECK((A * r.x - b).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("vanishing gamma reproduces the ring observations") {
  std::mt19937 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    RingVector y = testsup::random_ring(rng);
    SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
    QuadResult r = predict_quad(y, g, 1e-6);
    for (int k = 0; k < 8; ++k) CHECK(std::abs(r.x[kRingNodes[k]] - y[k]) <= 1e-4);
  }
}

TEST_CASE("prediction is linear in the observations for a fixed graph") {
  std::mt19937 rng(113);
  SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    RingVector y1 = testsup::random_ring(rng);
    RingVector y2 = testsup::random_ring(rng);
    double a = 0.7, b = -0.3;
    RingVector mix;
    for (int k = 0; k < 8; ++k) mix[k] = a * y1[k] + b * y2[k];
    double mixed = predict_quad(mix, g, 0.5).center_real;
    double combined = a * predict_quad(y1, g, 0.5).center_real + b * predict_quad(y2, g, 0.5).center_real;
    CHECK(mixed == doctest::Approx(combined).epsilon(1e-10));
  }
}

TEST_CASE("rotating ring and graph rotates the solution") {
  // grid rotation as in the graph tests; ring slots follow the ring order
  constexpr int kRot90[9] = {6, 3, 0, 7, 4, 1, 8, 5, 2};
  auto node_to_slot = [](int node) {
    for (int k = 0; k < 8; ++k)
      if (kRingNodes[k] == node) return k;
    return -1;
  };
  std::mt19937 rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    NormalizedPatch p = testsup::random_patch(rng);
    RingVector y = testsup::random_ring(rng);
    NormalizedPatch pr{};
    for (int n = 0; n < 9; ++n) pr[n] = p[kRot90[n]];
    RingVector yr;
    for (int k = 0; k < 8; ++k) yr[k] = y[node_to_slot(kRot90[kRingNodes[k]])];
    QuadResult base = predict_quad(y, build_graph(p, 0.5, 0.5), 0.5);
    QuadResult rot = predict_quad(yr, build_graph(pr, 0.5, 0.5), 0.5);
    for (int n = 0; n < 9; ++n)
      CHECK(rot.x[n] == doctest::Approx(base.x[kRot90[n]]).epsilon(1e-9));
    CHECK(rot.center_real == doctest::Approx(base.center_real).epsilon(1e-9));
  }
}

TEST_CASE("repeat evaluation is bit identical") {
  std::mt19937 rng(131);
  RingVector y = testsup::random_ring(rng);
  SimilarityGraph g = build_graph(testsup::random_patch(rng), 0.5, 0.5);
  QuadResult a = predict_quad(y, g, 0.5);
  QuadResult b = predict_quad(y, g, 0.5);
  CHECK(a.center_real == b.center_real);
  CHECK(a.center_int == b.center_int);
}

TEST_CASE("non-positive gamma is rejected") {
  RingVector y{};
  SimilarityGraph g = build_graph(NormalizedPatch{}, 0.5, 0.5);
  CHECK_THROWS_AS(predict_quad(y, g, 0.0), Error);
}

TEST_SUITE_END();
