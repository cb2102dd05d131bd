#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpee/codec.hpp"

namespace gpee {

struct SweepConfig {
  std::vector<std::string> images;           // PGM paths
  std::vector<PredictorKind> predictors;     // at least one
  std::vector<std::size_t> capacities;       // strictly increasing bit counts
  std::uint32_t seed = 1;
  PredictorParams params;
};

/// One (image, predictor, capacity) measurement. ok is true only after the
/// extracted message and restored cover matched the inputs bit for bit.
struct SweepRow {
  std::string image;
  std::string predictor;
  std::size_t capacity_bits = 0;
  double psnr_db = 0.0;
  std::array<int, 4> tau_codes{};
  double seconds = 0.0;
  bool ok = false;
  std::string error;  // set when ok is false
};

/// Parses a key = value config file (comma-separated lists, '#' comments).
/// Keys: images, predictors, capacities, seed, gamma, rho, step, sigma_l,
/// sigma_x, window.
SweepConfig parse_sweep_config(const std::string& path);

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// Header comment with the seed, the exact column line, then one row per
/// measurement in config order. Failed rows carry the error name in psnr_db.
std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

void write_sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows,
                     const std::string& path);

/// Message seed for a row, derived from the master seed and the row index.
std::uint32_t row_seed(std::uint32_t master_seed, std::size_t row_index);

}  // namespace gpee
