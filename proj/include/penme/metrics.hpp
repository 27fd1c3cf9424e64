#pragma once

#include "penme/frame.hpp"

namespace penme {

struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  double ms_ssim = 0.0;
};

double mse(const Frame& a, const Frame& b);

// 10*log10(1/mse) for unit dynamic range; zero MSE reports the 100 dB cap.
double psnr(double mse_val);

// Multi-scale SSIM: 11x11 Gaussian window (sigma 1.5), dyadic 2x2-average
// downsampling, C1=(0.01)^2, C2=(0.03)^2. Five scales when min(w,h) >= 176,
// four (with renormalized exponents) when min(w,h) >= 88.
double ms_ssim(const Frame& a, const Frame& b);

QualityReport score_frames(const Frame& reference, const Frame& test);

}  // namespace penme
