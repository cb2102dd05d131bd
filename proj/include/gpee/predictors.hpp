#pragma once

#include <string>
#include <vector>

#include "gpee/patch_search.hpp"
#include "gpee/predictor_gtv.hpp"
#include "gpee/predictor_quad.hpp"

namespace gpee {

enum class PredictorKind { Quad, Gtv, Rhombus };

const char* predictor_name(PredictorKind k);
PredictorKind predictor_from_name(const std::string& name);

/// All solver knobs in one place. Defaults are the reference operating point:
/// sigma_l = sigma_x = 0.5, gamma = 0.5, rho = 5, t = 0.1, 31x31 search window.
struct PredictorParams {
  double sigma_l = 0.5;
  double sigma_x = 0.5;
  double gamma = 0.5;
  int window_radius = 15;
  double rho = 5.0;
  double step_t = 0.1;
  int admm_max_iters = 200;
  int pg_max_iters = 50;
  double primal_tol = 1e-5;
  double pg_tol = 1e-7;

  GtvParams gtv() const {
    return GtvParams{gamma, rho, step_t, admm_max_iters, pg_max_iters, primal_tol, pg_tol};
  }
};

/// Predictability score for the gate. Graph predictors use the smaller
/// structure-tensor eigenvalue; the rhombus baseline uses the ring variance.
/// Either way the score reads only the 8 ring pixels, never the center.
double gate_metric_at(const GrayImage& image, Pos pos, PredictorKind kind);

/// Gate scores for a pixel list; OpenMP over pixels, bit-identical to the
/// serial reference (per-pixel work is independent).
std::vector<double> gate_metric_map(const GrayImage& image, const std::vector<Pos>& pixels,
                                    PredictorKind kind);
std::vector<double> gate_metric_map_serial(const GrayImage& image, const std::vector<Pos>& pixels,
                                           PredictorKind kind);

/// Mean of the four axis neighbors, rounded half up.
int rhombus_predict(const GrayImage& image, Pos pos);

/// Predicted center value for one pixel under the current image state.
int predict_center(const GrayImage& image, Pos pos, PredictorKind kind, const PredictorParams& params,
                   const SearchExclusions& ex, const GtvXStepCache* cache = nullptr);

}  // namespace gpee
