#include "gpee/patch_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gpee/errors.hpp"

namespace gpee {

namespace {

// Ring slot -> patch slot (row-major 3x3 with the center at slot 4 skipped).
constexpr int kRingToPatch[8] = {0, 1, 2, 3, 5, 6, 7, 8};

struct Best {
  double dist2 = std::numeric_limits<double>::infinity();
  std::int64_t key = -1;  // row-major scan key; smaller wins on distance ties
  Pos center{0, 0};
};

inline void consider(Best& best, double dist2, std::int64_t key, Pos center) {
  if (dist2 < best.dist2 || (dist2 == best.dist2 && best.key >= 0 && key < best.key)) {
    best.dist2 = dist2;
    best.key = key;
    best.center = center;
  }
}

// Squared AC distance between the target's mean-removed ring and the ring at
// c, on raw bytes with a single normalization factor. Used only to rank
// candidates; the reported distance is recomputed through ac_distance.
inline double cand_dist2(const GrayImage& img, const RingVector& target_ac, Pos c) {
  const std::uint8_t* base = img.pixels().data();
  const int stride = img.width();
  const std::uint8_t* r0 = base + static_cast<std::size_t>(c.row - 1) * stride + (c.col - 1);
  const std::uint8_t* r1 = r0 + stride;
  const std::uint8_t* r2 = r1 + stride;
  constexpr double inv = 1.0 / 255.0;
  double v[8] = {r0[0] * inv, r0[1] * inv, r0[2] * inv, r1[0] * inv,
                 r1[2] * inv, r2[0] * inv, r2[1] * inv, r2[2] * inv};
  double mean = (((v[0] + v[1]) + (v[2] + v[3])) + ((v[4] + v[5]) + (v[6] + v[7]))) / 8.0;
  double d2 = 0.0;
  for (int k = 0; k < 8; ++k) {
    double d = target_ac[k] - (v[k] - mean);
    d2 += d * d;
  }
  return d2;
}

}  // namespace

RingVector ring_vector(const GrayImage& image, Pos pos) {
  if (!image.ring_in_bounds(pos.row, pos.col))
    throw Error(Errc::InvalidArgument, "ring footprint out of bounds");
  RingVector r;
  int k = 0;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      r[k++] = image.at(pos.row + dr, pos.col + dc) / 255.0;
    }
  return r;
}

double ac_distance(const RingVector& a, const RingVector& b) {
  double ma = 0.0, mb = 0.0;
  for (int k = 0; k < 8; ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= 8.0;
  mb /= 8.0;
  double d2 = 0.0;
  for (int k = 0; k < 8; ++k) {
    double d = (a[k] - ma) - (b[k] - mb);
    d2 += d * d;
  }
  return std::sqrt(d2);
}

bool candidate_admissible(const GrayImage& image, Pos target, Pos cand, const SearchExclusions& ex) {
  if (cand == target) return false;
  if (!image.ring_in_bounds(cand.row, cand.col)) return false;
  if (ex.layer_row_parity >= 0 && (cand.row & 1) == ex.layer_row_parity &&
      (cand.col & 1) == ex.layer_col_parity)
    return false;
  if (ex.exclude_target_overlap && std::abs(cand.row - target.row) <= 1 &&
      std::abs(cand.col - target.col) <= 1)
    return false;
  if (ex.reserved_prefix > 0 && cand.row == 1 && cand.col - 1 < ex.reserved_prefix) return false;
  return true;
}

namespace {

MatchResult finish(const GrayImage& image, Pos pos, const RingVector& target_ring, const Best& best) {
  MatchResult m;
  if (best.key < 0) {
    // No admissible candidate: fall back to the target's own ring with the
    // center filled by the ring mean, so the codec never aborts mid-pass.
    m.center = pos;
    m.self_match = true;
    m.distance = 0.0;
    double mean = 0.0;
    for (double v : target_ring) mean += v;
    mean /= 8.0;
    for (int k = 0; k < 8; ++k) m.patch[kRingToPatch[k]] = target_ring[k];
    m.patch[4] = mean;
    return m;
  }
  m.center = best.center;
  m.self_match = false;
  m.distance = ac_distance(target_ring, ring_vector(image, best.center));
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc)
      m.patch[(dr + 1) * 3 + (dc + 1)] = image.at(best.center.row + dr, best.center.col + dc) / 255.0;
  return m;
}

RingVector mean_removed(const RingVector& r) {
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= 8.0;
  RingVector ac;
  for (int k = 0; k < 8; ++k) ac[k] = r[k] - mean;
  return ac;
}

}  // namespace

MatchResult find_similar_patch_serial(const GrayImage& image, Pos pos, int window_radius,
                                      const SearchExclusions& ex) {
  if (!image.ring_in_bounds(pos.row, pos.col))
    throw Error(Errc::InvalidArgument, "target footprint out of bounds");
  RingVector target = ring_vector(image, pos);
  RingVector target_ac = mean_removed(target);

  int rlo = std::max(0, pos.row - window_radius);
  int rhi = std::min(image.height() - 1, pos.row + window_radius);
  int clo = std::max(0, pos.col - window_radius);
  int chi = std::min(image.width() - 1, pos.col + window_radius);

  Best best;
  for (int r = rlo; r <= rhi; ++r)
    for (int c = clo; c <= chi; ++c) {
      Pos cand{r, c};
      if (!candidate_admissible(image, pos, cand, ex)) continue;
      double d2 = cand_dist2(image, target_ac, cand);
      consider(best, d2, static_cast<std::int64_t>(r) * image.width() + c, cand);
    }
  return finish(image, pos, target, best);
}

MatchResult find_similar_patch(const GrayImage& image, Pos pos, int window_radius,
                               const SearchExclusions& ex) {
  if (!image.ring_in_bounds(pos.row, pos.col))
    throw Error(Errc::InvalidArgument, "target footprint out of bounds");
  RingVector target = ring_vector(image, pos);
  RingVector target_ac = mean_removed(target);

  int rlo = std::max(0, pos.row - window_radius);
  int rhi = std::min(image.height() - 1, pos.row + window_radius);
  int clo = std::max(0, pos.col - window_radius);
  int chi = std::min(image.width() - 1, pos.col + window_radius);

  std::vector<Best> row_best(static_cast<std::size_t>(rhi - rlo + 1));
#pragma omp parallel for schedule(static)
  for (int r = rlo; r <= rhi; ++r) {
    Best local;
    for (int c = clo; c <= chi; ++c) {
      Pos cand{r, c};
      if (!candidate_admissible(image, pos, cand, ex)) continue;
      double d2 = cand_dist2(image, target_ac, cand);
      consider(local, d2, static_cast<std::int64_t>(r) * image.width() + c, cand);
    }
    row_best[static_cast<std::size_t>(r - rlo)] = local;
  }

  Best best;
  for (const Best& b : row_best)
    if (b.key >= 0) consider(best, b.dist2, b.key, b.center);
  return finish(image, pos, target, best);
}

}  // namespace gpee
