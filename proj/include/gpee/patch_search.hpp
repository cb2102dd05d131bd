#pragma once

#include "gpee/image.hpp"

namespace gpee {

/// Side-information header length in bits; the header lives in the LSBs of the
/// first `kSideInfoBits` pixels of row 0. Those cells differ between the embed
/// and extract passes, so no prediction context may read them.
inline constexpr int kSideInfoBits = 89;

/// Candidate filters applied during the window scan. Defaults give the codec
/// behavior; tests relax them selectively.
struct SearchExclusions {
  int layer_row_parity = -1;  // -1 disables the layer-coset exclusion
  int layer_col_parity = -1;
  bool exclude_target_overlap = true;  // skip candidates whose footprint contains the target
  int reserved_prefix = kSideInfoBits;  // mutable header cells (0,0)..(0,prefix-1); 0 disables
};

struct MatchResult {
  Pos center;
  double distance = 0.0;
  NormalizedPatch patch{};
  bool self_match = false;  // no candidate existed; patch is the target's own ring
};

/// The 8 ring intensities around pos, normalized, row-major with center skipped.
RingVector ring_vector(const GrayImage& image, Pos pos);

/// Euclidean distance of mean-removed components: ||(a - mean a) - (b - mean b)||.
double ac_distance(const RingVector& a, const RingVector& b);

/// True when a candidate center is admissible for the given target under `ex`.
bool candidate_admissible(const GrayImage& image, Pos target, Pos cand, const SearchExclusions& ex);

/// Exhaustive scan of the (2*window_radius+1)^2 window around pos, clipped at
/// the borders. Ties break toward the earliest candidate in row-major order.
/// The OpenMP variant parallelizes over window rows with a merge that applies
/// the same tie-break, so its result is bit-identical to the serial one.
MatchResult find_similar_patch(const GrayImage& image, Pos pos, int window_radius,
                               const SearchExclusions& ex = {});
MatchResult find_similar_patch_serial(const GrayImage& image, Pos pos, int window_radius,
                                      const SearchExclusions& ex = {});

}  // namespace gpee
