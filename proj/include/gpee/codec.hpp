#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gpee/bitstream.hpp"
#include "gpee/predictors.hpp"

namespace gpee {

// Reversible embedding pipeline
// -----------------------------
// Candidate pixels are split into four parity cosets (layers) processed in
// order 1..4 for embedding and 4..1 in reverse pixel order for extraction, so
// every pixel sees the same context in both passes. Each layer carries its own
// run-length-coded location map followed by its quarter of the payload (the 89
// rescued first-row LSBs prepended to the message). An 89-bit header with the
// message length, the four threshold codes and the four compressed-map lengths
// replaces the LSBs of the first row.

/// One of the four parity cosets of candidate pixels. Row-major processing
/// order. Pixels whose 3x3 footprint reaches the mutable header cells are
/// excluded: their context would differ between the embed and extract passes.
struct LayerPlan {
  int index = 1;       // 1..4
  int row_parity = 1;  // layer1=(1,1) layer2=(1,0) layer3=(0,1) layer4=(0,0)
  int col_parity = 1;
  std::vector<Pos> pixels;
};

LayerPlan make_layer_plan(int width, int height, int index);

/// Prediction-error mapping: errors 0 and -1 absorb a bit, everything else
/// shifts outward by one. Every branch changes the pixel by at most 1.
int map_error_embed(int e, int bit);

struct ErrorExtract {
  int e = 0;
  int bit = 0;
  bool has_bit = false;
};
ErrorExtract map_error_extract(int e_prime);

/// Boundary handling: 0 -> 1 and 255 -> 254 (map bit 1), values already 1 or
/// 254 keep their value (map bit 0), everything else carries no map entry.
/// Returns the location-map bits in processing order.
std::vector<std::uint8_t> preprocess_layer_boundaries(GrayImage& image, const LayerPlan& layer);
void undo_layer_boundaries(GrayImage& image, const LayerPlan& layer,
                           const std::vector<std::uint8_t>& location_map);

/// Location-map compression: one leading bit (value of the first run) followed
/// by Elias-gamma run lengths. The empty map encodes as zero bits.
std::vector<std::uint8_t> rle_compress(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> rle_decompress(const std::vector<std::uint8_t>& compressed);

/// Fixed 89-bit header, MSB-first:
///   [0,20)  message length        [20,29) threshold code, layer 1
///   [29,53) three 8-bit two's-complement threshold deltas (layers 2..4)
///   [53,65) compressed-map bit length, layer 1
///   [65,89) three 8-bit two's-complement map-length deltas (layers 2..4)
struct SideInfo {
  std::uint32_t message_length = 0;      // < 2^20
  std::array<int, 4> tau_codes{};        // each in [0, 511]
  std::array<int, 4> lm_lengths{};       // lm_lengths[0] < 2^12

  std::array<std::uint8_t, kSideInfoBits> serialize() const;  // ThresholdDeltaOverflow on misfit
  static SideInfo parse(const std::array<std::uint8_t, kSideInfoBits>& bits);  // MalformedStego
};

/// Optional instrumentation: records the ring snapshot each processed pixel
/// saw, for context-symmetry checks between the two passes.
struct ContextProbe {
  std::vector<std::pair<Pos, std::array<std::uint8_t, 8>>> rings;
};

struct LayerContext {
  const LayerPlan& plan;
  const std::vector<double>& gate_metric;  // parallel to plan.pixels
  double tau;
  PredictorKind kind;
  const PredictorParams& params;
  const GtvXStepCache* cache = nullptr;
  ContextProbe* probe = nullptr;
};

/// Embeds bits from the stream into one layer on the current image state.
/// Returns the number of bits consumed. Once the stream is exhausted,
/// remaining gate-passing pixels are still shifted but never expanded.
/// stop_when_exhausted makes the pass return as soon as the stream runs dry;
/// only capacity probes on scratch images may use it, since the pixels after
/// the stop point are left untouched.
std::size_t embed_layer(GrayImage& image, const LayerContext& ctx, BitStream& bits,
                        bool stop_when_exhausted = false);

/// Reverse pass over one layer: restores every gate-passing pixel and returns
/// exactly expected_bits in original stream order. Throws MalformedStego when
/// the layer holds fewer carriers than expected.
std::vector<std::uint8_t> extract_layer(GrayImage& image, const LayerContext& ctx,
                                        std::size_t expected_bits);

struct EmbedReport {
  double psnr_db = 0.0;
  std::array<int, 4> tau_codes{};
  std::array<int, 4> lm_lengths{};
  std::array<std::size_t, 4> bits_per_layer{};
  PredictorKind kind = PredictorKind::Quad;
};

/// Full pipeline. The cover is untouched; the stego image is returned.
GrayImage embed(const GrayImage& cover, const BitStream& message, PredictorKind kind,
                const PredictorParams& params, EmbedReport* report = nullptr);

struct ExtractResult {
  GrayImage restored;
  BitStream message;
};

/// Inverse pipeline; restores the cover bit-exactly and recovers the message.
ExtractResult extract(const GrayImage& stego, PredictorKind kind, const PredictorParams& params);

/// Payload quarter sizes for a given total (payload = header-rescue + message).
std::array<std::size_t, 4> payload_quarters(std::size_t total_bits);

}  // namespace gpee
