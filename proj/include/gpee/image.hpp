#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gpee {

struct Pos {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pos& a, const Pos& b) { return a.row == b.row && a.col == b.col; }
};

/// 8-bit grayscale image, row-major storage.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t at(int row, int col) const { return pixels_[static_cast<std::size_t>(row) * width_ + col]; }
  std::uint8_t& at(int row, int col) { return pixels_[static_cast<std::size_t>(row) * width_ + col]; }
  std::uint8_t at(Pos p) const { return at(p.row, p.col); }
  std::uint8_t& at(Pos p) { return at(p.row, p.col); }

  bool in_bounds(int row, int col) const { return row >= 0 && row < height_ && col >= 0 && col < width_; }
  /// True when the full 3x3 neighborhood around (row, col) is inside the image.
  bool ring_in_bounds(int row, int col) const {
    return row >= 1 && row <= height_ - 2 && col >= 1 && col <= width_ - 2;
  }

  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::vector<std::uint8_t>& pixels() { return pixels_; }

  friend bool operator==(const GrayImage& a, const GrayImage& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.pixels_ == b.pixels_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// 3x3 patch in normalized [0,1] intensities, row-major; slot 4 is the center.
using NormalizedPatch = std::array<double, 9>;

/// The 8 neighbors of a pixel in normalized intensities, row-major with the center skipped.
using RingVector = std::array<double, 8>;

GrayImage load_pgm(const std::string& path);
void save_pgm(const GrayImage& image, const std::string& path);

/// Exact sum of squared per-pixel differences. OpenMP reduction; integer, so order-independent.
std::uint64_t sum_squared_diff(const GrayImage& a, const GrayImage& b);
std::uint64_t sum_squared_diff_serial(const GrayImage& a, const GrayImage& b);

/// 10*log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

}  // namespace gpee
