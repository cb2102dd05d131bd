#include "gpee/codec.hpp"

#include <algorithm>
#include <cassert>

#include "gpee/errors.hpp"
#include "gpee/tensor_gate.hpp"

namespace gpee {

namespace {

constexpr int kLayerParity[4][2] = {{1, 1}, {1, 0}, {0, 1}, {0, 0}};

// True when the 3x3 footprint of (row, col) avoids the mutable header cells.
bool context_clean(int row, int col) { return !(row == 1 && col - 1 < kSideInfoBits); }

std::array<std::uint8_t, 8> ring_bytes(const GrayImage& img, Pos p) {
  std::array<std::uint8_t, 8> r{};
  int k = 0;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      r[k++] = img.at(p.row + dr, p.col + dc);
    }
  return r;
}

void append_elias_gamma(std::vector<std::uint8_t>& out, std::size_t n) {
  int bits = 0;
  for (std::size_t v = n; v > 1; v >>= 1) ++bits;  // floor(log2 n)
  for (int i = 0; i < bits; ++i) out.push_back(0);
  for (int i = bits; i >= 0; --i) out.push_back((n >> i) & 1);
}

int encode_delta(int delta, const char* what) {
  if (delta < -128 || delta > 127)
    throw Error(Errc::ThresholdDeltaOverflow, std::string(what) + " delta does not fit 8 bits");
  return delta & 0xFF;
}

}  // namespace

LayerPlan make_layer_plan(int width, int height, int index) {
  if (index < 1 || index > 4) throw Error(Errc::InvalidArgument, "layer index must be 1..4");
  LayerPlan plan;
  plan.index = index;
  plan.row_parity = kLayerParity[index - 1][0];
  plan.col_parity = kLayerParity[index - 1][1];
  for (int r = 1; r <= height - 2; ++r) {
    if ((r & 1) != plan.row_parity) continue;
    for (int c = 1; c <= width - 2; ++c) {
      if ((c & 1) != plan.col_parity) continue;
      if (!context_clean(r, c)) continue;
      plan.pixels.push_back({r, c});
    }
  }
  return plan;
}

int map_error_embed(int e, int bit) {
  if (e == 0) return bit;
  if (e == -1) return -1 - bit;
  return e >= 1 ? e + 1 : e - 1;
}

ErrorExtract map_error_extract(int e_prime) {
  switch (e_prime) {
    case 0: return {0, 0, true};
    case 1: return {0, 1, true};
    case -1: return {-1, 0, true};
    case -2: return {-1, 1, true};
    default: return {e_prime >= 2 ? e_prime - 1 : e_prime + 1, 0, false};
  }
}

std::vector<std::uint8_t> preprocess_layer_boundaries(GrayImage& image, const LayerPlan& layer) {
  std::vector<std::uint8_t> lm;
  for (Pos p : layer.pixels) {
    std::uint8_t v = image.at(p);
    if (v == 0) {
      image.at(p) = 1;
      lm.push_back(1);
    } else if (v == 255) {
      image.at(p) = 254;
      lm.push_back(1);
    } else if (v == 1 || v == 254) {
      lm.push_back(0);
    }
  }
  return lm;
}

void undo_layer_boundaries(GrayImage& image, const LayerPlan& layer,
                           const std::vector<std::uint8_t>& location_map) {
  std::size_t cursor = 0;
  for (Pos p : layer.pixels) {
    std::uint8_t v = image.at(p);
    if (v != 1 && v != 254) continue;
    if (cursor >= location_map.size())
      throw Error(Errc::MalformedStego, "location map shorter than the boundary-pixel set");
    if (location_map[cursor++]) image.at(p) = (v == 1) ? 0 : 255;
  }
  if (cursor != location_map.size())
    throw Error(Errc::MalformedStego, "location map longer than the boundary-pixel set");
}

std::vector<std::uint8_t> rle_compress(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint8_t> out;
  if (bits.empty()) return out;
  out.push_back(bits[0]);
  std::size_t run = 1;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    if (bits[i] == bits[i - 1]) {
      ++run;
    } else {
      append_elias_gamma(out, run);
      run = 1;
    }
  }
  append_elias_gamma(out, run);
  return out;
}

std::vector<std::uint8_t> rle_decompress(const std::vector<std::uint8_t>& compressed) {
  std::vector<std::uint8_t> bits;
  if (compressed.empty()) return bits;
  std::size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= compressed.size())
      throw Error(Errc::MalformedStego, "truncated run-length stream");
    return compressed[pos++];
  };
  std::uint8_t value = static_cast<std::uint8_t>(next());
  while (pos < compressed.size()) {
    int zeros = 0;
    while (next() == 0) ++zeros;
    std::size_t n = 1;
    for (int i = 0; i < zeros; ++i) n = (n << 1) | static_cast<std::size_t>(next());
    bits.insert(bits.end(), n, value);
    value ^= 1;
  }
  return bits;
}

std::array<std::uint8_t, kSideInfoBits> SideInfo::serialize() const {
  if (message_length >= (1u << 20))
    throw Error(Errc::ThresholdDeltaOverflow, "message length does not fit 20 bits");
  if (tau_codes[0] < 0 || tau_codes[0] >= (1 << 9))
    throw Error(Errc::ThresholdDeltaOverflow, "threshold code does not fit 9 bits");
  if (lm_lengths[0] < 0 || lm_lengths[0] >= (1 << 12))
    throw Error(Errc::ThresholdDeltaOverflow, "compressed location map does not fit 12 bits");

  BitStream s;
  s.append_uint(message_length, 20);
  s.append_uint(static_cast<std::uint64_t>(tau_codes[0]), 9);
  for (int l = 1; l < 4; ++l)
    s.append_uint(static_cast<std::uint64_t>(encode_delta(tau_codes[l] - tau_codes[l - 1], "threshold")), 8);
  s.append_uint(static_cast<std::uint64_t>(lm_lengths[0]), 12);
  for (int l = 1; l < 4; ++l)
    s.append_uint(static_cast<std::uint64_t>(encode_delta(lm_lengths[l] - lm_lengths[l - 1], "map length")), 8);

  std::array<std::uint8_t, kSideInfoBits> out{};
  std::copy(s.bits().begin(), s.bits().end(), out.begin());
  return out;
}

SideInfo SideInfo::parse(const std::array<std::uint8_t, kSideInfoBits>& bits) {
  BitStream s(std::vector<std::uint8_t>(bits.begin(), bits.end()));
  SideInfo si;
  si.message_length = static_cast<std::uint32_t>(s.read_uint(20));
  si.tau_codes[0] = static_cast<int>(s.read_uint(9));
  std::array<int, 3> tau_delta{};
  for (int l = 0; l < 3; ++l) {
    int raw = static_cast<int>(s.read_uint(8));
    tau_delta[l] = raw >= 128 ? raw - 256 : raw;
  }
  si.lm_lengths[0] = static_cast<int>(s.read_uint(12));
  std::array<int, 3> lm_delta{};
  for (int l = 0; l < 3; ++l) {
    int raw = static_cast<int>(s.read_uint(8));
    lm_delta[l] = raw >= 128 ? raw - 256 : raw;
  }
  for (int l = 1; l < 4; ++l) {
    si.tau_codes[l] = si.tau_codes[l - 1] + tau_delta[l - 1];
    si.lm_lengths[l] = si.lm_lengths[l - 1] + lm_delta[l - 1];
    if (si.tau_codes[l] < 0 || si.tau_codes[l] >= (1 << 9))
      throw Error(Errc::MalformedStego, "reconstructed threshold code out of range");
    if (si.lm_lengths[l] < 0 || si.lm_lengths[l] >= (1 << 12))
      throw Error(Errc::MalformedStego, "reconstructed map length out of range");
  }
  return si;
}

std::size_t embed_layer(GrayImage& image, const LayerContext& ctx, BitStream& bits,
                        bool stop_when_exhausted) {
  SearchExclusions ex;
  ex.layer_row_parity = ctx.plan.row_parity;
  ex.layer_col_parity = ctx.plan.col_parity;
  std::size_t consumed = 0;
  for (std::size_t i = 0; i < ctx.plan.pixels.size(); ++i) {
    if (stop_when_exhausted && bits.exhausted()) break;
    if (!(ctx.gate_metric[i] < ctx.tau)) continue;
    Pos p = ctx.plan.pixels[i];
    if (ctx.probe) ctx.probe->rings.emplace_back(p, ring_bytes(image, p));
    int predicted = predict_center(image, p, ctx.kind, ctx.params, ex, ctx.cache);
    int e = static_cast<int>(image.at(p)) - predicted;
    int e2 = e;
    if (e == 0 || e == -1) {
      if (!bits.exhausted()) {
        e2 = map_error_embed(e, bits.read());
        ++consumed;
      }
    } else {
      e2 = map_error_embed(e, 0);
    }
    image.at(p) = static_cast<std::uint8_t>(predicted + e2);
  }
  return consumed;
}

std::vector<std::uint8_t> extract_layer(GrayImage& image, const LayerContext& ctx,
                                        std::size_t expected_bits) {
  SearchExclusions ex;
  ex.layer_row_parity = ctx.plan.row_parity;
  ex.layer_col_parity = ctx.plan.col_parity;
  std::vector<std::uint8_t> collected;  // reverse encounter order
  for (std::size_t n = ctx.plan.pixels.size(); n-- > 0;) {
    if (!(ctx.gate_metric[n] < ctx.tau)) continue;
    Pos p = ctx.plan.pixels[n];
    int predicted = predict_center(image, p, ctx.kind, ctx.params, ex, ctx.cache);
    int e_prime = static_cast<int>(image.at(p)) - predicted;
    ErrorExtract m = map_error_extract(e_prime);
    image.at(p) = static_cast<std::uint8_t>(predicted + m.e);
    if (ctx.probe) ctx.probe->rings.emplace_back(p, ring_bytes(image, p));
    if (m.has_bit) collected.push_back(static_cast<std::uint8_t>(m.bit));
  }
  if (collected.size() < expected_bits)
    throw Error(Errc::MalformedStego, "layer holds fewer payload bits than the header promises");
  // Forward stream order; surplus entries are unembedded pixels past the
  // point where the encoder ran out of bits, indistinguishable from bit-0
  // carriers and restored identically either way.
  std::reverse(collected.begin(), collected.end());
  collected.resize(expected_bits);
  return collected;
}

std::array<std::size_t, 4> payload_quarters(std::size_t total_bits) {
  std::array<std::size_t, 4> q{};
  for (int l = 0; l < 4; ++l) q[l] = total_bits / 4 + (static_cast<std::size_t>(l) < total_bits % 4 ? 1 : 0);
  return q;
}

GrayImage embed(const GrayImage& cover, const BitStream& message, PredictorKind kind,
                const PredictorParams& params, EmbedReport* report) {
  if (cover.width() < kSideInfoBits)
    throw Error(Errc::ImageTooSmall, "first row cannot hold the header");
  if (cover.height() < 4) throw Error(Errc::ImageTooSmall, "image too short for four layers");
  if (message.size() >= (1u << 20))
    throw Error(Errc::CapacityUnreachable, "message length exceeds the header field");

  GrayImage img = cover;

  // Rescued header-row LSBs travel at the front of the payload.
  BitStream payload;
  for (int c = 0; c < kSideInfoBits; ++c) payload.append(img.at(0, c) & 1);
  payload.append_bits(message.bits());
  std::array<std::size_t, 4> quarters = payload_quarters(payload.size());

  GtvXStepCache cache;
  if (kind == PredictorKind::Gtv) cache = make_xstep_cache(params.rho);
  const GtvXStepCache* cache_ptr = kind == PredictorKind::Gtv ? &cache : nullptr;

  SideInfo si;
  si.message_length = static_cast<std::uint32_t>(message.size());
  EmbedReport rep;
  rep.kind = kind;

  std::size_t payload_offset = 0;
  for (int l = 0; l < 4; ++l) {
    LayerPlan plan = make_layer_plan(img.width(), img.height(), l + 1);
    std::vector<std::uint8_t> lm = preprocess_layer_boundaries(img, plan);
    std::vector<std::uint8_t> lm_packed = rle_compress(lm);

    BitStream segment;
    segment.append_bits(lm_packed);
    for (std::size_t k = 0; k < quarters[l]; ++k)
      segment.append(payload.bits()[payload_offset + k]);
    payload_offset += quarters[l];

    // Gate scores depend only on other-layer pixels, which do not change
    // during this layer's pass; compute once and share with every dry run.
    std::vector<double> metrics = gate_metric_map(img, plan.pixels, kind);

    auto dry_run = [&](int code) -> std::int64_t {
      GrayImage scratch = img;
      BitStream probe_bits = segment;
      probe_bits.rewind();
      LayerContext ctx{plan, metrics, tau_from_code(code), kind, params, cache_ptr, nullptr};
      return static_cast<std::int64_t>(embed_layer(scratch, ctx, probe_bits, true));
    };
    GateThreshold gt = find_threshold(static_cast<std::int64_t>(segment.size()), dry_run);

    segment.rewind();
    LayerContext ctx{plan, metrics, gt.tau, kind, params, cache_ptr, nullptr};
    std::size_t consumed = embed_layer(img, ctx, segment);
    if (consumed != segment.size())
      throw Error(Errc::CapacityUnreachable, "verified threshold failed to absorb the segment");

    si.tau_codes[l] = gt.code;
    si.lm_lengths[l] = static_cast<int>(lm_packed.size());
    rep.tau_codes[l] = gt.code;
    rep.lm_lengths[l] = static_cast<int>(lm_packed.size());
    rep.bits_per_layer[l] = consumed;
  }

  std::array<std::uint8_t, kSideInfoBits> header = si.serialize();
  for (int c = 0; c < kSideInfoBits; ++c)
    img.at(0, c) = static_cast<std::uint8_t>((img.at(0, c) & ~1u) | header[c]);

  rep.psnr_db = psnr(cover, img);
  if (report) *report = rep;
  return img;
}

ExtractResult extract(const GrayImage& stego, PredictorKind kind, const PredictorParams& params) {
  if (stego.width() < kSideInfoBits || stego.height() < 4)
    throw Error(Errc::MalformedStego, "image too small to carry a header");

  GrayImage img = stego;
  std::array<std::uint8_t, kSideInfoBits> header{};
  for (int c = 0; c < kSideInfoBits; ++c) header[c] = img.at(0, c) & 1;
  SideInfo si = SideInfo::parse(header);

  std::size_t total = kSideInfoBits + si.message_length;
  std::array<std::size_t, 4> quarters = payload_quarters(total);

  GtvXStepCache cache;
  if (kind == PredictorKind::Gtv) cache = make_xstep_cache(params.rho);
  const GtvXStepCache* cache_ptr = kind == PredictorKind::Gtv ? &cache : nullptr;

  std::array<std::vector<std::uint8_t>, 4> quarter_bits;
  for (int l = 3; l >= 0; --l) {
    LayerPlan plan = make_layer_plan(img.width(), img.height(), l + 1);
    std::vector<double> metrics = gate_metric_map(img, plan.pixels, kind);
    LayerContext ctx{plan, metrics, tau_from_code(si.tau_codes[l]), kind, params, cache_ptr, nullptr};

    std::size_t expected = static_cast<std::size_t>(si.lm_lengths[l]) + quarters[l];
    std::vector<std::uint8_t> bits = extract_layer(img, ctx, expected);

    std::vector<std::uint8_t> lm_packed(bits.begin(), bits.begin() + si.lm_lengths[l]);
    quarter_bits[l].assign(bits.begin() + si.lm_lengths[l], bits.end());

    std::vector<std::uint8_t> lm = rle_decompress(lm_packed);
    undo_layer_boundaries(img, plan, lm);
  }

  std::vector<std::uint8_t> payload;
  payload.reserve(total);
  for (int l = 0; l < 4; ++l)
    payload.insert(payload.end(), quarter_bits[l].begin(), quarter_bits[l].end());
  assert(payload.size() == total);

  for (int c = 0; c < kSideInfoBits; ++c)
    img.at(0, c) = static_cast<std::uint8_t>((img.at(0, c) & ~1u) | payload[c]);

  ExtractResult out;
  out.restored = std::move(img);
  out.message = BitStream(
      std::vector<std::uint8_t>(payload.begin() + kSideInfoBits, payload.end()));
  return out;
}

}  // namespace gpee
