#include "penme/codec.hpp"

#include <algorithm>
#include <cmath>

namespace penme {

namespace {

constexpr std::uint8_t kIframeMagic0 = 'P';
constexpr std::uint8_t kIframeMagic1 = 'I';

ResidualMeta meta_for(Modality m) {
  switch (m) {
    case Modality::CNN: return {0, 0, 32, 32, 4};
    case Modality::FLOW: return {8, 8, 64, 64, 4};
    case Modality::VIT: return {8, 8, 128, 128, 6};
  }
  return {};
}

// Box-average downsample by an integer factor; values may be in [-1, 1].
std::vector<double> downsample_box(const std::vector<double>& src, int w, int h,
                                   int factor) {
  const int ow = w / factor;
  const int oh = h / factor;
  std::vector<double> out(static_cast<size_t>(ow) * oh, 0.0);
  const double inv = 1.0 / (factor * factor);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int dy = 0; dy < factor; ++dy)
        for (int dx = 0; dx < factor; ++dx)
          s += src[static_cast<size_t>(y * factor + dy) * w + x * factor + dx];
      out[static_cast<size_t>(y) * ow + x] = s * inv;
    }
  return out;
}

// Bit packing: samples appended LSB-first into a little-endian bit stream.
void pack_bits(std::vector<std::uint8_t>& out, std::uint32_t value, int bits,
               int& bitpos) {
  for (int b = 0; b < bits; ++b) {
    if (bitpos % 8 == 0) out.push_back(0);
    if (value & (1u << b)) out.back() |= static_cast<std::uint8_t>(1u << (bitpos % 8));
    ++bitpos;
  }
}

std::uint32_t unpack_bits(const std::vector<std::uint8_t>& in, int bits,
                          int& bitpos) {
  std::uint32_t v = 0;
  for (int b = 0; b < bits; ++b) {
    const int byte = bitpos / 8;
    if (in[byte] & (1u << (bitpos % 8))) v |= 1u << b;
    ++bitpos;
  }
  return v;
}

size_t packed_bytes(const ResidualMeta& m) {
  const std::int64_t bits =
      static_cast<std::int64_t>(m.res_w) * m.res_h * m.bits_per_sample;
  return static_cast<size_t>((bits + 7) / 8);
}

std::int16_t to_q88(double v) {
  return static_cast<std::int16_t>(std::lround(v * 256.0));
}

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

std::uint32_t quantize_residual(double x, int bits) {
  const std::uint32_t levels = 1u << bits;
  const double step = 2.0 / levels;
  const double idx = std::floor((x + 1.0) / step);
  if (idx < 0.0) return 0;
  if (idx >= levels) return levels - 1;
  return static_cast<std::uint32_t>(idx);
}

double dequantize_residual(std::uint32_t q, int bits) {
  const std::uint32_t levels = 1u << bits;
  const double step = 2.0 / levels;
  return -1.0 + (q + 0.5) * step;
}

ResidualPayload encode_frame(const Frame& prev, const Frame& next,
                             const MotionSignals& s, Modality f,
                             const CodecConfig& cfg) {
  if (prev.width != kWorkingSize || prev.height != kWorkingSize ||
      !prev.same_size(next))
    throw Error("encode_frame: frames must be 128x128");

  ResidualPayload p;
  p.modality = f;
  p.shift_x_q88 = to_q88(s.global_shift.x);
  p.shift_y_q88 = to_q88(s.global_shift.y);
  p.residual_meta = meta_for(f);

  // Magnitude gate T(R_t): negligible residuals are not transmitted.
  if (s.residual <= cfg.epsilon_gate) {
    p.skipped = true;
    p.residual_meta = ResidualMeta{};
    return p;
  }

  Frame pred;
  if (f == Modality::CNN) {
    pred = warp(prev, p.global_shift());
  } else {
    p.block_field = s.block_field;
    pred = warp_blockwise(prev, s.block_field);
  }

  std::vector<double> residual(next.pixels.size());
  for (size_t i = 0; i < residual.size(); ++i)
    residual[i] = next.pixels[i] - pred.pixels[i];

  const ResidualMeta& m = p.residual_meta;
  const int factor = kWorkingSize / m.res_w;
  std::vector<double> coarse =
      factor == 1 ? residual
                  : downsample_box(residual, kWorkingSize, kWorkingSize, factor);

  int bitpos = 0;
  p.residual_bits.reserve(packed_bytes(m));
  for (double v : coarse)
    pack_bits(p.residual_bits, quantize_residual(v, m.bits_per_sample),
              m.bits_per_sample, bitpos);
  if (cfg.test_lossless) p.test_raw_residual = std::move(coarse);
  return p;
}

Frame decode_frame(const Frame& prev_recon, const ResidualPayload& p) {
  if (prev_recon.width != kWorkingSize || prev_recon.height != kWorkingSize)
    throw Error("decode_frame: previous reconstruction must be 128x128");

  Frame pred;
  if (p.block_field.has_value())
    pred = warp_blockwise(prev_recon, *p.block_field);
  else
    pred = warp(prev_recon, p.global_shift());

  if (p.skipped) return pred;

  const ResidualMeta& m = p.residual_meta;
  if (m.res_w <= 0 || m.res_h <= 0 || m.bits_per_sample <= 0 ||
      p.residual_bits.size() != packed_bytes(m))
    throw Error("decode_frame: residual meta inconsistent with byte count");

  const size_t n = static_cast<size_t>(m.res_w) * m.res_h;
  std::vector<double> coarse(n);
  if (!p.test_raw_residual.empty()) {
    if (p.test_raw_residual.size() != n)
      throw Error("decode_frame: raw residual size mismatch");
    coarse = p.test_raw_residual;
  } else {
    int bitpos = 0;
    for (size_t i = 0; i < n; ++i)
      coarse[i] =
          dequantize_residual(unpack_bits(p.residual_bits, m.bits_per_sample, bitpos),
                              m.bits_per_sample);
  }

  const int factor = kWorkingSize / m.res_w;
  Frame out(kWorkingSize, kWorkingSize);
  for (int y = 0; y < kWorkingSize; ++y)
    for (int x = 0; x < kWorkingSize; ++x) {
      const double r = coarse[static_cast<size_t>(y / factor) * m.res_w + x / factor];
      out.at(x, y) = clamp01(pred.at(x, y) + r);
    }
  return out;
}

std::int64_t payload_bits(const ResidualPayload& p) {
  std::int64_t bits = 16 + 32;  // modality+flags, Q8.8 shift
  if (p.block_field.has_value())
    bits += static_cast<std::int64_t>(p.block_field->grid_w) *
            p.block_field->grid_h * 16;
  if (!p.skipped)
    bits += static_cast<std::int64_t>(p.residual_meta.res_w) *
            p.residual_meta.res_h * p.residual_meta.bits_per_sample;
  return bits;
}

std::vector<std::uint8_t> serialize_payload(const ResidualPayload& p) {
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(p.modality));
  std::uint8_t flags = 0;
  if (p.skipped) flags |= 1;
  if (p.block_field.has_value()) flags |= 2;
  out.push_back(flags);
  put_u16le(out, static_cast<std::uint16_t>(p.shift_x_q88));
  put_u16le(out, static_cast<std::uint16_t>(p.shift_y_q88));
  if (p.block_field.has_value()) {
    for (const auto& v : p.block_field->vectors) {
      out.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v.x)));
      out.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v.y)));
    }
  }
  if (!p.skipped)
    out.insert(out.end(), p.residual_bits.begin(), p.residual_bits.end());
  return out;
}

ResidualPayload deserialize_payload(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 6) throw Error("payload: truncated header");
  ResidualPayload p;
  if (bytes[0] > 2) throw Error("payload: bad modality tag");
  p.modality = static_cast<Modality>(bytes[0]);
  const std::uint8_t flags = bytes[1];
  p.skipped = (flags & 1) != 0;
  const bool has_field = (flags & 2) != 0;
  p.shift_x_q88 = static_cast<std::int16_t>(bytes[2] | (bytes[3] << 8));
  p.shift_y_q88 = static_cast<std::int16_t>(bytes[4] | (bytes[5] << 8));
  size_t pos = 6;
  if (has_field) {
    if (p.modality == Modality::CNN)
      throw Error("payload: block field not valid for CNN");
    BlockField f;
    f.grid_w = 8;
    f.grid_h = 8;
    f.vectors.resize(64);
    if (bytes.size() < pos + 128) throw Error("payload: truncated block field");
    for (auto& v : f.vectors) {
      v.x = static_cast<std::int8_t>(bytes[pos++]);
      v.y = static_cast<std::int8_t>(bytes[pos++]);
    }
    p.block_field = std::move(f);
  }
  if (p.skipped) {
    if (pos != bytes.size()) throw Error("payload: trailing bytes on skipped payload");
    return p;
  }
  p.residual_meta = meta_for(p.modality);
  const size_t need = packed_bytes(p.residual_meta);
  if (bytes.size() - pos != need)
    throw Error("payload: residual bytes inconsistent with meta");
  p.residual_bits.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return p;
}

std::vector<std::uint8_t> encode_iframe(const Frame& f) {
  if (f.width != kWorkingSize || f.height != kWorkingSize)
    throw Error("encode_iframe: frame must be 128x128");
  std::vector<std::uint8_t> out;
  out.reserve(6 + f.pixels.size());
  out.push_back(kIframeMagic0);
  out.push_back(kIframeMagic1);
  put_u16le(out, static_cast<std::uint16_t>(f.width));
  put_u16le(out, static_cast<std::uint16_t>(f.height));
  for (double v : f.pixels)
    out.push_back(static_cast<std::uint8_t>(std::lround(clamp01(v) * 255.0)));
  return out;
}

Frame decode_iframe(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 6 || bytes[0] != kIframeMagic0 || bytes[1] != kIframeMagic1)
    throw Error("iframe: bad header");
  const int w = bytes[2] | (bytes[3] << 8);
  const int h = bytes[4] | (bytes[5] << 8);
  if (bytes.size() != 6 + static_cast<size_t>(w) * h)
    throw Error("iframe: size mismatch");
  Frame f(w, h);
  for (size_t i = 0; i < f.pixels.size(); ++i) f.pixels[i] = bytes[6 + i] / 255.0;
  return f;
}

std::vector<GopDecision> gop_plan(const std::vector<MotionSignals>& signals,
                                  const CodecConfig& cfg,
                                  ResidualHistory& history) {
  std::vector<GopDecision> plan;
  plan.reserve(signals.size() + 1);
  plan.push_back(GopDecision::SendI);
  for (size_t i = 0; i < signals.size(); ++i) {
    const bool last = (i + 1 == signals.size());
    if (last) {
      plan.push_back(GopDecision::SendP);
      continue;
    }
    const double r = signals[i].residual;
    bool skip;
    if (history.size() < kWarmupSamples)
      skip = r <= cfg.epsilon_gate;  // absolute gate until the eCDF is meaningful
    else
      skip = history.rank_below(r) < cfg.gop_skip_threshold;
    plan.push_back(skip ? GopDecision::Skip : GopDecision::SendP);
  }
  for (const auto& s : signals) history.push(s.residual);
  return plan;
}

double payload_residual_scalar(const ResidualPayload& p) {
  if (p.skipped || p.residual_bits.empty()) return 0.0;
  const ResidualMeta& m = p.residual_meta;
  const size_t n = static_cast<size_t>(m.res_w) * m.res_h;
  int bitpos = 0;
  double s = 0.0;
  for (size_t i = 0; i < n; ++i)
    s += std::abs(dequantize_residual(
        unpack_bits(p.residual_bits, m.bits_per_sample, bitpos), m.bits_per_sample));
  return s / static_cast<double>(n);
}

}  // namespace penme
