#include "gpee/synth.hpp"

#include <algorithm>
#include <cmath>

#include "gpee/errors.hpp"

namespace gpee {

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint32_t seed) {
  Lcg rng(seed);
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_bit());
  return bits;
}

namespace {

constexpr double kPi = 3.14159265358979;

std::uint8_t quantize(double v) {
  double c = std::clamp(v, 8.0, 247.0);
  return static_cast<std::uint8_t>(std::lround(c));
}

// Photograph-like ingredients shared by all three kinds: a smooth amplitude
// mask picks clean areas versus textured ones, the texture itself is a
// repeating two-dimensional weave (locally matchable, like fabric or grass),
// and a grain of +/-2 levels models sensor noise.
struct TextureField {
  double mfx, mfy, mph;    // mask frequencies/phase (cycles per image)
  double tfx, tfy;         // texture frequencies (cycles per pixel)
  double amp;              // peak texture amplitude in gray levels
  double clean_cut;        // mask values below this give amplitude zero

  double mask(double x, double y) const {
    double m = 0.5 + 0.29 * std::sin(2 * kPi * (mfx * x + mfy * y) + mph) +
               0.21 * std::sin(2 * kPi * (mfy * x - mfx * y) - 0.7 * mph);
    return std::clamp(m, 0.0, 1.0);
  }
  double at(int r, int c, double x, double y) const {
    double m = mask(x, y);
    if (m < clean_cut) return 0.0;
    double a = amp * (m - clean_cut) / (1.0 - clean_cut);
    return a * std::sin(2 * kPi * tfx * c) * std::sin(2 * kPi * tfy * r);
  }
};

TextureField make_field(Lcg& rng) {
  TextureField f;
  f.mfx = 1.0 + rng.next_below(20) / 10.0;
  f.mfy = 1.0 + rng.next_below(20) / 10.0;
  f.mph = rng.next_below(628) / 100.0;
  f.tfx = 0.16 + rng.next_below(10) / 100.0;  // period 4..6 px
  f.tfy = 0.16 + rng.next_below(10) / 100.0;
  f.amp = 52.0 + rng.next_below(14);
  f.clean_cut = 0.30;
  return f;
}

int grain(Lcg& rng) { return static_cast<int>(rng.next_below(5)) - 2; }

GrayImage ramps(int w, int h, std::uint32_t seed) {
  Lcg rng(seed);
  // Tilted planes split by radial edges: smooth inside, sharp across, which is
  // exactly the content the piecewise-smooth gate targets.
  struct Region {
    double a, b, c;
  };
  std::vector<Region> regions;
  for (int i = 0; i < 12; ++i)
    regions.push_back({(rng.next_below(200) - 100) / 700.0, (rng.next_below(200) - 100) / 700.0,
                       45.0 + rng.next_below(160)});
  std::vector<double> cuts;
  for (int i = 0; i < 11; ++i) cuts.push_back(rng.next_below(628) / 100.0);
  std::sort(cuts.begin(), cuts.end());
  TextureField field = make_field(rng);

  GrayImage img(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      double angle = std::atan2(r - h / 2.0, c - w / 2.0) + kPi;
      std::size_t idx = 0;
      for (std::size_t k = 0; k < cuts.size(); ++k)
        if (angle >= cuts[k]) idx = k + 1;
      const Region& reg = regions[idx % regions.size()];
      double x = static_cast<double>(c) / w, y = static_cast<double>(r) / h;
      double v = reg.c + reg.a * c + reg.b * r + field.at(r, c, x, y) + grain(rng);
      img.at(r, c) = quantize(v);
    }
  return img;
}

GrayImage waves(int w, int h, std::uint32_t seed) {
  Lcg rng(seed);
  double fx1 = 1.0 + rng.next_below(40) / 10.0;
  double fy1 = 1.0 + rng.next_below(40) / 10.0;
  double fx2 = 4.0 + rng.next_below(60) / 10.0;
  double ph = rng.next_below(628) / 100.0;
  TextureField field = make_field(rng);
  GrayImage img(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      double x = static_cast<double>(c) / w, y = static_cast<double>(r) / h;
      double v = 128.0 + 62.0 * std::sin(2 * kPi * (fx1 * x + fy1 * y) + ph) +
                 30.0 * std::sin(2 * kPi * fx2 * x * y) + field.at(r, c, x, y) + grain(rng);
      img.at(r, c) = quantize(v);
    }
  return img;
}

GrayImage blobs(int w, int h, std::uint32_t seed) {
  Lcg rng(seed);
  struct Blob {
    double cx, cy, s, amp;
  };
  std::vector<Blob> bs;
  for (int i = 0; i < 10; ++i)
    bs.push_back({static_cast<double>(rng.next_below(w)), static_cast<double>(rng.next_below(h)),
                  20.0 + rng.next_below(60), (rng.next_below(2) ? 1.0 : -1.0) * (30.0 + rng.next_below(60))});
  TextureField field = make_field(rng);
  GrayImage img(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      double v = 90.0 + 70.0 * c / w + 20.0 * r / h;
      for (const Blob& b : bs) {
        double d2 = (c - b.cx) * (c - b.cx) + (r - b.cy) * (r - b.cy);
        v += b.amp * std::exp(-d2 / (2.0 * b.s * b.s));
      }
      double x = static_cast<double>(c) / w, y = static_cast<double>(r) / h;
      v += field.at(r, c, x, y) + grain(rng);
      img.at(r, c) = quantize(v);
    }
  return img;
}

}  // namespace

const std::vector<std::string>& test_image_kinds() {
  static const std::vector<std::string> kinds = {"ramps", "waves", "blobs"};
  return kinds;
}

GrayImage make_test_image(const std::string& kind, int width, int height, std::uint32_t seed) {
  if (kind == "ramps") return ramps(width, height, seed);
  if (kind == "waves") return waves(width, height, seed);
  if (kind == "blobs") return blobs(width, height, seed);
  throw Error(Errc::InvalidArgument, "unknown test image kind '" + kind + "'");
}

}  // namespace gpee
