#include "gpee/predictors.hpp"

#include <cmath>

#include "gpee/errors.hpp"
#include "gpee/tensor_gate.hpp"

namespace gpee {

const char* predictor_name(PredictorKind k) {
  switch (k) {
    case PredictorKind::Quad: return "quad";
    case PredictorKind::Gtv: return "gtv";
    case PredictorKind::Rhombus: return "rhombus";
  }
  return "?";
}

PredictorKind predictor_from_name(const std::string& name) {
  if (name == "quad") return PredictorKind::Quad;
  if (name == "gtv") return PredictorKind::Gtv;
  if (name == "rhombus") return PredictorKind::Rhombus;
  throw Error(Errc::InvalidArgument, "unknown predictor '" + name + "'");
}

double gate_metric_at(const GrayImage& image, Pos pos, PredictorKind kind) {
  if (kind == PredictorKind::Rhombus) {
    RingVector r = ring_vector(image, pos);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= 8.0;
    double var = 0.0;
    for (double v : r) var += (v - mean) * (v - mean);
    return var / 8.0;
  }
  return eigen_min(structure_tensor_at(image, pos));
}

std::vector<double> gate_metric_map_serial(const GrayImage& image, const std::vector<Pos>& pixels,
                                           PredictorKind kind) {
  std::vector<double> m(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) m[i] = gate_metric_at(image, pixels[i], kind);
  return m;
}

std::vector<double> gate_metric_map(const GrayImage& image, const std::vector<Pos>& pixels,
                                    PredictorKind kind) {
  std::vector<double> m(pixels.size());
  const std::int64_t n = static_cast<std::int64_t>(pixels.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) m[i] = gate_metric_at(image, pixels[i], kind);
  return m;
}

int rhombus_predict(const GrayImage& image, Pos pos) {
  if (pos.row < 1 || pos.row > image.height() - 2 || pos.col < 1 || pos.col > image.width() - 2)
    throw Error(Errc::InvalidArgument, "rhombus neighborhood out of bounds");
  int sum = image.at(pos.row - 1, pos.col) + image.at(pos.row + 1, pos.col) +
            image.at(pos.row, pos.col - 1) + image.at(pos.row, pos.col + 1);
  return static_cast<int>(std::floor(sum / 4.0 + 0.5));
}

int predict_center(const GrayImage& image, Pos pos, PredictorKind kind, const PredictorParams& params,
                   const SearchExclusions& ex, const GtvXStepCache* cache) {
  if (kind == PredictorKind::Rhombus) return rhombus_predict(image, pos);

  RingVector y = ring_vector(image, pos);
  MatchResult match = find_similar_patch_serial(image, pos, params.window_radius, ex);
  SimilarityGraph g = build_graph(match.patch, params.sigma_l, params.sigma_x);
  if (kind == PredictorKind::Quad) return predict_quad(y, g, params.gamma).center_int;
  return predict_gtv(y, g, params.gtv(), cache).center_int;
}

}  // namespace gpee
