#include "penme/receiver.hpp"

#include <algorithm>
#include <cmath>

namespace penme {

ReconstructionState init_state(const Frame& iframe_working, int original_width,
                               int original_height) {
  if (iframe_working.width != kWorkingSize ||
      iframe_working.height != kWorkingSize)
    throw Error("init_state: I-frame must be in the working domain");
  if (original_width <= 0 || original_height <= 0)
    throw Error("init_state: bad original dimensions");
  ReconstructionState s;
  s.prev_recon = iframe_working;
  s.original_width = original_width;
  s.original_height = original_height;
  s.initialized = true;
  return s;
}

Vec2d impute_motion(const Vec2d& m1, const Vec2d& m2, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw Error("impute_motion: alpha must lie in (0,1)");
  return Vec2d{alpha * m1.x + (1.0 - alpha) * m2.x,
               alpha * m1.y + (1.0 - alpha) * m2.y};
}

std::vector<double> interpolate_residual(
    const std::vector<std::vector<double>>& neighbors, size_t size,
    bool& fallback) {
  if (neighbors.empty()) {
    fallback = true;
    return std::vector<double>(size, 0.0);
  }
  fallback = false;
  std::vector<double> out(size, 0.0);
  for (const auto& n : neighbors) {
    if (n.size() != size) throw Error("interpolate_residual: size mismatch");
    for (size_t i = 0; i < size; ++i) out[i] += n[i];
  }
  const double inv = 1.0 / static_cast<double>(neighbors.size());
  for (auto& v : out) v *= inv;
  return out;
}

namespace {

// Working-domain raster of the payload's dequantized residual (zeros for a
// skipped payload).
std::vector<double> payload_residual_raster(const ResidualPayload& p) {
  std::vector<double> out(static_cast<size_t>(kWorkingSize) * kWorkingSize, 0.0);
  if (p.skipped || p.residual_bits.empty()) return out;
  // Re-decode through the public path: decode against a zero frame would
  // clamp, so unpack directly.
  const ResidualMeta& m = p.residual_meta;
  const size_t n = static_cast<size_t>(m.res_w) * m.res_h;
  std::vector<double> coarse(n);
  size_t bit = 0;
  for (size_t i = 0; i < n; ++i) {
    std::uint32_t q = 0;
    for (int b = 0; b < m.bits_per_sample; ++b) {
      if (p.residual_bits[bit / 8] & (1u << (bit % 8))) q |= 1u << b;
      ++bit;
    }
    coarse[i] = dequantize_residual(q, m.bits_per_sample);
  }
  const int factor = kWorkingSize / m.res_w;
  for (int y = 0; y < kWorkingSize; ++y)
    for (int x = 0; x < kWorkingSize; ++x)
      out[static_cast<size_t>(y) * kWorkingSize + x] =
          coarse[static_cast<size_t>(y / factor) * m.res_w + x / factor];
  return out;
}

// Spatial concealment: every 16px block becomes the mean of its 4-neighbor
// block means from the last received residual.
std::vector<double> conceal_residual(const std::vector<double>& last,
                                     bool& fallback) {
  const int grid = kWorkingSize / kBlockSize;
  if (last.empty()) {
    fallback = true;
    return std::vector<double>(static_cast<size_t>(kWorkingSize) * kWorkingSize,
                               0.0);
  }
  fallback = false;
  std::vector<double> block_means(static_cast<size_t>(grid) * grid, 0.0);
  for (int by = 0; by < grid; ++by)
    for (int bx = 0; bx < grid; ++bx) {
      double s = 0.0;
      for (int y = 0; y < kBlockSize; ++y)
        for (int x = 0; x < kBlockSize; ++x)
          s += last[static_cast<size_t>(by * kBlockSize + y) * kWorkingSize +
                    bx * kBlockSize + x];
      block_means[static_cast<size_t>(by) * grid + bx] =
          s / (kBlockSize * kBlockSize);
    }
  std::vector<double> out(static_cast<size_t>(kWorkingSize) * kWorkingSize, 0.0);
  for (int by = 0; by < grid; ++by)
    for (int bx = 0; bx < grid; ++bx) {
      std::vector<std::vector<double>> neighbors;
      for (const auto& [dx, dy] :
           {std::pair{-1, 0}, std::pair{1, 0}, std::pair{0, -1}, std::pair{0, 1}}) {
        const int nx = bx + dx;
        const int ny = by + dy;
        if (nx < 0 || ny < 0 || nx >= grid || ny >= grid) continue;
        neighbors.push_back({block_means[static_cast<size_t>(ny) * grid + nx]});
      }
      bool unused = false;
      const double value = interpolate_residual(neighbors, 1, unused)[0];
      for (int y = 0; y < kBlockSize; ++y)
        for (int x = 0; x < kBlockSize; ++x)
          out[static_cast<size_t>(by * kBlockSize + y) * kWorkingSize +
              bx * kBlockSize + x] = value;
    }
  return out;
}

}  // namespace

Frame refine(const Frame& f, const ReconstructionState& state,
             const RefinerConfig& cfg) {
  if (f.width != kWorkingSize || f.height != kWorkingSize)
    throw Error("refine: frame must be in the working domain");
  const int r = cfg.median_radius;
  const int n = (2 * r + 1) * (2 * r + 1);
  std::vector<double> window(static_cast<size_t>(n));
  Frame med(f.width, f.height);
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      int k = 0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          window[k++] = f.at_reflect(x + dx, y + dy);
      std::nth_element(window.begin(), window.begin() + n / 2, window.end());
      med.at(x, y) = window[n / 2];
    }
  const double beta = cfg.blend_beta;
  if (beta == 0.0) return med;
  const Frame temporal = warp(state.prev_recon, state.prev_motion);
  Frame out(f.width, f.height);
  for (size_t i = 0; i < out.pixels.size(); ++i)
    out.pixels[i] =
        clamp01((1.0 - beta) * med.pixels[i] + beta * temporal.pixels[i]);
  return out;
}

ReconstructionOutput reconstruct_frame(ReconstructionState& state,
                                       const std::optional<ResidualPayload>& p,
                                       const ReceiverParams& params) {
  if (!state.initialized) throw Error("reconstruct_frame: uninitialized state");
  ReconstructionOutput out;

  Frame estimate;
  Vec2d motion;
  bool update_history = false;
  double history_scalar = 0.0;
  std::vector<double> residual_raster;

  if (p.has_value()) {
    estimate = decode_frame(state.prev_recon, *p);
    motion = p->global_shift();
    history_scalar = payload_residual_scalar(*p);
    update_history = true;
    residual_raster = payload_residual_raster(*p);

    const double rq = residual_percentile(state.residual_history, history_scalar);
    if (refinement_trigger(p->modality, rq, params.tau_rq)) {
      estimate = refine(estimate, state, params.refiner);
      out.refined = true;
    }
  } else {
    out.concealed = true;
    if (params.concealment == Concealment::kFreeze) {
      estimate = state.prev_recon;
      motion = Vec2d{0.0, 0.0};
      residual_raster = state.last_residual;
    } else {
      motion = impute_motion(state.prev_motion, state.prev_prev_motion,
                             params.alpha);
      const Frame pred = warp(state.prev_recon, motion);
      residual_raster = conceal_residual(state.last_residual, out.conceal_fallback);
      estimate = Frame(kWorkingSize, kWorkingSize);
      for (size_t i = 0; i < estimate.pixels.size(); ++i)
        estimate.pixels[i] = clamp01(pred.pixels[i] + residual_raster[i]);
    }
    // Concealed frames bypass the trigger: the eCDF has no sample for them
    // and the concealment path already applies temporal compensation.
  }

  out.frame = upscale(estimate, state.original_width, state.original_height);

  state.prev_prev_motion = state.prev_motion;
  state.prev_motion = motion;
  state.prev_recon = std::move(estimate);
  state.last_residual = std::move(residual_raster);
  if (update_history) state.residual_history.push(history_scalar);
  return out;
}

ReconstructionOutput reconstruct_skipped(ReconstructionState& state) {
  if (!state.initialized) throw Error("reconstruct_skipped: uninitialized state");
  ReconstructionOutput out;
  out.frame = upscale(state.prev_recon, state.original_width, state.original_height);
  return out;
}

}  // namespace penme
