#pragma once

#include <optional>

#include "penme/codec.hpp"

namespace penme {

struct RefinerConfig {
  double blend_beta = 0.25;  // temporal blend weight
  int median_radius = 1;     // 3x3 window
};

enum class Concealment {
  kImputeInterpolate,  // motion imputation + residual interpolation
  kFreeze,             // keep the previous reconstruction (ablation)
};

struct ReceiverParams {
  RefinerConfig refiner;
  double tau_rq = 0.90;
  double alpha = 0.7;  // motion imputation smoothing factor
  Concealment concealment = Concealment::kImputeInterpolate;
};

struct ReconstructionState {
  Frame prev_recon;  // working domain
  Vec2d prev_motion;
  Vec2d prev_prev_motion;
  ResidualHistory residual_history;
  std::vector<double> last_residual;  // working-domain raster of the last payload
  int original_width = 0;
  int original_height = 0;
  bool initialized = false;
};

struct ReconstructionOutput {
  Frame frame;          // original resolution
  bool refined = false;
  bool concealed = false;
  bool conceal_fallback = false;  // no residual neighbors were available
};

ReconstructionState init_state(const Frame& iframe_working, int original_width,
                               int original_height);

// M_hat = alpha * m1 + (1 - alpha) * m2.
Vec2d impute_motion(const Vec2d& m1, const Vec2d& m2, double alpha);

// Elementwise mean of the neighbor rasters; empty input yields a zero
// raster of the requested size plus a fallback flag.
std::vector<double> interpolate_residual(
    const std::vector<std::vector<double>>& neighbors, size_t size,
    bool& fallback);

// Median filter plus a temporal blend with the motion-warped previous
// reconstruction; deterministic stand-in for the latent refiner.
Frame refine(const Frame& f, const ReconstructionState& state,
             const RefinerConfig& cfg);

// One receiver step: decode or conceal, optionally refine, upscale, and
// advance the state. A nullopt payload means the frame was lost.
ReconstructionOutput reconstruct_frame(ReconstructionState& state,
                                       const std::optional<ResidualPayload>& p,
                                       const ReceiverParams& params);

// Reconstruction for a GOP-skipped frame: the previous reconstruction.
ReconstructionOutput reconstruct_skipped(ReconstructionState& state);

}  // namespace penme
