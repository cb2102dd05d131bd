#pragma once

#include <cstdint>
#include <functional>

#include "gpee/image.hpp"

namespace gpee {

/// 2x2 structure tensor accumulated from the 8-pixel ring around a target pixel.
/// The center pixel never contributes, so the tensor is identical before and
/// after the center is modified.
struct StructureTensor {
  double jxx = 0.0;
  double jxy = 0.0;
  double jyy = 0.0;
};

/// Smoothness threshold quantized to the 0.01 grid; the 9-bit code travels in
/// the stego header and reconstructs tau exactly on both sides.
struct GateThreshold {
  int code = 0;
  double tau = 0.0;
};

inline constexpr int kMaxTauCode = 500;  // tau range [0, 5] on a 0.01 grid

inline double tau_from_code(int code) { return code * 0.01; }

/// Gradient samples are taken at the four corner ring pixels: each corner is
/// differenced against its same-row and same-column edge-midpoint neighbors,
/// signed so positive means increasing row/column. Intensities are divided by
/// 255 first.
StructureTensor structure_tensor_at(const GrayImage& image, Pos pos);

/// Smaller eigenvalue of the tensor, clamped to be non-negative.
double eigen_min(const StructureTensor& t);

/// Strict comparison: lambda_min < tau. tau = 0 therefore admits nothing.
bool is_predictable(const GrayImage& image, Pos pos, double tau);

/// Capacity oracle: number of message bits the current layer can actually
/// absorb at the given threshold code. Must be safe to call concurrently.
using CapacityOracle = std::function<std::int64_t(int code)>;

/// Smallest threshold code on the grid whose capacity reaches target_bits.
/// fan_out > 1 evaluates that many evenly spaced probes per refinement level
/// in parallel; fan_out = 1 is plain bisection. All fan_out values return the
/// same code. Throws CapacityUnreachable when even code kMaxTauCode falls short.
GateThreshold find_threshold(std::int64_t target_bits, const CapacityOracle& dry_run, int fan_out = 0);

}  // namespace gpee
