#pragma once

#include <utility>
#include <vector>

#include "penme/common.hpp"
#include "penme/frame.hpp"

namespace penme {

// Grid of per-block integer displacements, row-major.
struct BlockField {
  int grid_w = 0;
  int grid_h = 0;
  std::vector<Vec2i> vectors;

  Vec2i& at(int bx, int by) {
    return vectors[static_cast<size_t>(by) * grid_w + bx];
  }
  const Vec2i& at(int bx, int by) const {
    return vectors[static_cast<size_t>(by) * grid_w + bx];
  }
  bool empty() const { return vectors.empty(); }
};

struct CorrelationResult {
  Vec2i shift;             // argmax of the correlation surface, signed
  double peak = 0.0;       // surface value at the argmax
  double background_mean = 0.0;  // mean outside the peak neighborhood
  double sharpness = 0.0;  // peak / (peak + background_mean + eps)
};

// The five bounded selection signals plus the motion evidence behind them.
struct MotionSignals {
  double strength = 0.0;      // M
  double consistency = 0.0;   // C_g
  double sharpness = 0.0;     // S
  double heterogeneity = 0.0; // H
  double residual = 0.0;      // R
  Vec2d global_shift;         // robust shift, px
  BlockField block_field;
};

// Normalized L1 change ratio per frame pair; returns (max, per-pair values).
std::pair<double, std::vector<double>> motion_strength(
    const std::vector<Frame>& frames);

// FFT phase correlation between two working-domain frames. Background mean
// excludes a (2w+1)^2 window around the peak, w = 4, with circular wrap.
CorrelationResult phase_correlate(const Frame& a, const Frame& b);

// Consistency of a sequence of translational shifts, clamped to [0, 1].
double global_consistency(const std::vector<Vec2d>& shifts);

// Exhaustive SAD block matching on a 16px grid, search radius 4. Candidate
// windows outside b use reflective padding. SAD ties break toward the
// smallest |v|, then row-major scan order.
BlockField block_match(const Frame& a, const Frame& b);

// Squashed coefficient of variation of block-vector magnitudes.
double heterogeneity(const BlockField& field);

// Componentwise median of block vectors (lower median for even counts).
Vec2i robust_global_shift(const BlockField& field);

// Translate by a real-valued shift; bilinear with reflective padding.
Frame warp(const Frame& f, const Vec2d& shift);

// Per-block constant-motion prediction of the next frame from f.
Frame warp_blockwise(const Frame& f, const BlockField& field);

// Normalized L1 residual after removing the given global shift.
double residual_error(const Frame& a, const Frame& b, const Vec2d& shift);

struct GradientField {
  Frame ix;
  Frame iy;
  Frame it;
};

// Central-difference spatio-temporal gradients over a frame pair, averaged
// over the 2x2x2 support; reflective borders.
GradientField image_gradients(const Frame& prev, const Frame& next);

// Full signal extraction for one working-domain frame pair.
MotionSignals analyze_pair(const Frame& prev, const Frame& next);

}  // namespace penme
