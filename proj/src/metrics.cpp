#include "penme/metrics.hpp"

#include <array>
#include <cmath>

namespace penme {

double mse(const Frame& a, const Frame& b) {
  if (!a.same_size(b)) throw Error("mse: frame dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    s += d * d;
  }
  return s / static_cast<double>(a.pixels.size());
}

double psnr(double mse_val) {
  if (mse_val < 0.0) throw Error("psnr: negative mse");
  if (mse_val == 0.0) return 100.0;
  return 10.0 * std::log10(1.0 / mse_val);
}

namespace {

constexpr int kWin = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;
// Standard per-scale exponents (beta_j = gamma_j; alpha_M equals the last).
constexpr std::array<double, 5> kWeights = {0.0448, 0.2856, 0.3001, 0.2363,
                                            0.1333};

std::array<double, kWin> gaussian_taps() {
  std::array<double, kWin> t{};
  double sum = 0.0;
  for (int i = 0; i < kWin; ++i) {
    const double d = i - (kWin - 1) / 2.0;
    t[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += t[i];
  }
  for (auto& v : t) v /= sum;
  return t;
}

// Separable valid-region Gaussian filter: output is (w-10) x (h-10).
Frame filter_valid(const Frame& f) {
  static const std::array<double, kWin> taps = gaussian_taps();
  const int ow = f.width - kWin + 1;
  const int oh = f.height - kWin + 1;
  Frame horiz(ow, f.height);
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWin; ++k) s += taps[k] * f.at(x + k, y);
      horiz.at(x, y) = s;
    }
  Frame out(ow, oh);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWin; ++k) s += taps[k] * horiz.at(x, y + k);
      out.at(x, y) = s;
    }
  return out;
}

Frame downsample2(const Frame& f) {
  Frame out(f.width / 2, f.height / 2);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      out.at(x, y) = 0.25 * (f.at(2 * x, 2 * y) + f.at(2 * x + 1, 2 * y) +
                             f.at(2 * x, 2 * y + 1) + f.at(2 * x + 1, 2 * y + 1));
  return out;
}

Frame multiply(const Frame& a, const Frame& b) {
  Frame out(a.width, a.height);
  for (size_t i = 0; i < a.pixels.size(); ++i)
    out.pixels[i] = a.pixels[i] * b.pixels[i];
  return out;
}

// Mean luminance*contrast*structure and mean contrast*structure over the
// valid region of one scale.
void ssim_scale(const Frame& a, const Frame& b, double& mean_lcs,
                double& mean_cs) {
  const Frame mu_a = filter_valid(a);
  const Frame mu_b = filter_valid(b);
  const Frame aa = filter_valid(multiply(a, a));
  const Frame bb = filter_valid(multiply(b, b));
  const Frame ab = filter_valid(multiply(a, b));
  double lcs = 0.0, cs = 0.0;
  for (size_t i = 0; i < mu_a.pixels.size(); ++i) {
    const double ma = mu_a.pixels[i];
    const double mb = mu_b.pixels[i];
    const double va = aa.pixels[i] - ma * ma;
    const double vb = bb.pixels[i] - mb * mb;
    const double cov = ab.pixels[i] - ma * mb;
    const double c = (2.0 * cov + kC2) / (va + vb + kC2);
    const double l = (2.0 * ma * mb + kC1) / (ma * ma + mb * mb + kC1);
    cs += c;
    lcs += l * c;
  }
  const double n = static_cast<double>(mu_a.pixels.size());
  mean_lcs = lcs / n;
  mean_cs = cs / n;
}

}  // namespace

double ms_ssim(const Frame& a, const Frame& b) {
  if (!a.same_size(b)) throw Error("ms_ssim: frame dimension mismatch");
  const int min_dim = std::min(a.width, a.height);
  int scales;
  if (min_dim >= 176)
    scales = 5;
  else if (min_dim >= 88)
    scales = 4;
  else
    throw Error("ms_ssim: frames too small for multi-scale evaluation");

  double weight_sum_all = 0.0;
  for (double w : kWeights) weight_sum_all += w;
  double weight_sum_used = 0.0;
  for (int j = 0; j < scales; ++j) weight_sum_used += kWeights[j];
  const double renorm = weight_sum_all / weight_sum_used;

  Frame fa = a, fb = b;
  double value = 1.0;
  for (int j = 0; j < scales; ++j) {
    double mean_lcs = 0.0, mean_cs = 0.0;
    ssim_scale(fa, fb, mean_lcs, mean_cs);
    const double w = kWeights[j] * (scales == 5 ? 1.0 : renorm);
    const double factor = (j == scales - 1) ? mean_lcs : mean_cs;
    value *= std::pow(std::max(factor, 0.0), w);
    if (j + 1 < scales) {
      fa = downsample2(fa);
      fb = downsample2(fb);
    }
  }
  return value;
}

QualityReport score_frames(const Frame& reference, const Frame& test) {
  QualityReport q;
  q.mse = mse(reference, test);
  q.psnr_db = psnr(q.mse);
  q.ms_ssim = ms_ssim(reference, test);
  return q;
}

}  // namespace penme
