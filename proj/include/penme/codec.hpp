#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "penme/selector.hpp"

namespace penme {

struct ResidualMeta {
  int grid_w = 0;
  int grid_h = 0;
  int res_w = 0;
  int res_h = 0;
  int bits_per_sample = 0;
};

// Everything transmitted for a P-frame. Serialized little-endian in field
// order; see docs/payload_format.md for the byte-exact layout.
struct ResidualPayload {
  Modality modality = Modality::CNN;
  std::int16_t shift_x_q88 = 0;  // robust global shift, Q8.8 fixed point
  std::int16_t shift_y_q88 = 0;
  std::optional<BlockField> block_field;
  std::vector<std::uint8_t> residual_bits;  // packed samples, LSB-first
  ResidualMeta residual_meta;
  bool skipped = false;

  // Test-only escape hatch: raw residual carried alongside the quantized
  // one. Never serialized, never counted in payload_bits.
  std::vector<double> test_raw_residual;

  Vec2d global_shift() const {
    return Vec2d{shift_x_q88 / 256.0, shift_y_q88 / 256.0};
  }
};

struct CodecConfig {
  double epsilon_gate = 0.01;      // T(R_t) magnitude gate
  double gop_skip_threshold = 0.25;  // residual-history quantile
  bool test_lossless = false;      // decode from test_raw_residual when set
};

// Uniform symmetric mid-rise quantizer over [-1, 1].
std::uint32_t quantize_residual(double x, int bits);
double dequantize_residual(std::uint32_t q, int bits);

ResidualPayload encode_frame(const Frame& prev, const Frame& next,
                             const MotionSignals& s, Modality f,
                             const CodecConfig& cfg);

Frame decode_frame(const Frame& prev_recon, const ResidualPayload& p);

// Exact logical bit count before packetization:
// 16 header + 32 shift + 16 per block vector + bits_per_sample per sample.
std::int64_t payload_bits(const ResidualPayload& p);

std::vector<std::uint8_t> serialize_payload(const ResidualPayload& p);
ResidualPayload deserialize_payload(const std::vector<std::uint8_t>& bytes);

// Raw 8-bit working-domain raster with a 6-byte header.
std::vector<std::uint8_t> encode_iframe(const Frame& f);
Frame decode_iframe(const std::vector<std::uint8_t>& bytes);

enum class GopDecision { SendI, SendP, Skip };

// Plan for one GOP: first frame is always an I-frame, the last always a
// P-frame, and middle frames are skipped when their residual ranks below the
// configured quantile of the running history (absolute gate during warm-up).
// Pushes the plan's residuals into the history.
std::vector<GopDecision> gop_plan(const std::vector<MotionSignals>& signals,
                                  const CodecConfig& cfg,
                                  ResidualHistory& history);

// Payload-derived residual scalar: mean absolute dequantized residual.
// Computable identically at both link ends, so the transmitter and receiver
// eCDF histories stay in lockstep.
double payload_residual_scalar(const ResidualPayload& p);

}  // namespace penme
