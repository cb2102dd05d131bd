#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpee/image.hpp"

namespace gpee {

/// Deterministic 32-bit linear congruential generator (Numerical Recipes
/// constants). Used for reproducible message bits and image noise.
class Lcg {
 public:
  explicit Lcg(std::uint32_t seed) : state_(seed) {}
  std::uint32_t next() {
    state_ = state_ * 1664525u + 1013904223u;
    return state_;
  }
  int next_bit() { return static_cast<int>(next() >> 31); }
  /// Uniform in [0, n)
  std::uint32_t next_below(std::uint32_t n) { return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next()) * n) >> 32); }

 private:
  std::uint32_t state_;
};

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint32_t seed);

/// Deterministic synthetic covers. Values stay inside [8, 247] so no boundary
/// preprocessing is triggered and the per-pixel modification bound is exact.
///   ramps  - piecewise-smooth tilted planes separated by step edges
///   waves  - smooth sinusoid mixture
///   blobs  - gaussian bumps over a gradient
GrayImage make_test_image(const std::string& kind, int width, int height, std::uint32_t seed);

const std::vector<std::string>& test_image_kinds();

}  // namespace gpee
