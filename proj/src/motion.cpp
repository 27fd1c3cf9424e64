#include "penme/motion.hpp"

#include <algorithm>
#include <cmath>

#include "penme/fft.hpp"

namespace penme {

namespace {

double l1_norm(const Frame& f) {
  double s = 0.0;
  for (double v : f.pixels) s += std::abs(v);
  return s;
}

double l1_diff(const Frame& a, const Frame& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.pixels.size(); ++i)
    s += std::abs(a.pixels[i] - b.pixels[i]);
  return s;
}

}  // namespace

std::pair<double, std::vector<double>> motion_strength(
    const std::vector<Frame>& frames) {
  if (frames.size() < 2) throw Error("motion_strength: need at least 2 frames");
  std::vector<double> per_pair;
  per_pair.reserve(frames.size() - 1);
  double m_max = 0.0;
  for (size_t i = 0; i + 1 < frames.size(); ++i) {
    if (!frames[i].same_size(frames[i + 1]))
      throw Error("motion_strength: frame dimension mismatch");
    const double num = l1_diff(frames[i + 1], frames[i]);
    const double den = l1_norm(frames[i + 1]) + l1_norm(frames[i]) + kEps;
    const double m = num / den;
    per_pair.push_back(m);
    m_max = std::max(m_max, m);
  }
  return {m_max, per_pair};
}

CorrelationResult phase_correlate(const Frame& a, const Frame& b) {
  const int n = kWorkingSize;
  if (a.width != n || a.height != n || b.width != n || b.height != n)
    throw Error("phase_correlate: frames must be 128x128");

  std::vector<Cplx> ga(static_cast<size_t>(n) * n), gb(ga.size());
  for (size_t i = 0; i < ga.size(); ++i) {
    ga[i] = Cplx(a.pixels[i], 0.0);
    gb[i] = Cplx(b.pixels[i], 0.0);
  }
  fft2d_inplace(ga, n, false);
  fft2d_inplace(gb, n, false);

  // Normalized cross-power spectrum, then back to the spatial domain.
  std::vector<Cplx> gamma(ga.size());
  for (size_t i = 0; i < ga.size(); ++i) {
    const Cplx cross = gb[i] * std::conj(ga[i]);
    gamma[i] = cross / (std::abs(cross) + kEps);
  }
  fft2d_inplace(gamma, n, true);

  std::vector<double> surface(gamma.size());
  size_t arg = 0;
  for (size_t i = 0; i < gamma.size(); ++i) {
    surface[i] = std::abs(gamma[i]);
    if (surface[i] > surface[arg]) arg = i;
  }
  const int px = static_cast<int>(arg % n);
  const int py = static_cast<int>(arg / n);

  // Background mean excludes a (2w+1)^2 window around the peak (circular).
  const int w = 4;
  double bg_sum = 0.0;
  size_t bg_count = 0;
  for (int y = 0; y < n; ++y) {
    int dy = std::abs(y - py);
    dy = std::min(dy, n - dy);
    for (int x = 0; x < n; ++x) {
      int dx = std::abs(x - px);
      dx = std::min(dx, n - dx);
      if (dx <= w && dy <= w) continue;
      bg_sum += surface[static_cast<size_t>(y) * n + x];
      ++bg_count;
    }
  }

  CorrelationResult r;
  // Map indices to signed offsets in (-n/2, n/2].
  r.shift.x = px <= n / 2 ? px : px - n;
  r.shift.y = py <= n / 2 ? py : py - n;
  r.peak = surface[arg];
  r.background_mean = bg_count ? bg_sum / static_cast<double>(bg_count) : 0.0;
  r.sharpness = r.peak / (r.peak + r.background_mean + kEps);
  return r;
}

double global_consistency(const std::vector<Vec2d>& shifts) {
  if (shifts.size() < 2) throw Error("global_consistency: need at least 2 shifts");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i + 1 < shifts.size(); ++i) {
    num += std::hypot(shifts[i + 1].x - shifts[i].x, shifts[i + 1].y - shifts[i].y);
    den += norm2(shifts[i]) + norm2(shifts[i + 1]);
  }
  return clamp01(1.0 - num / (den + kEps));
}

BlockField block_match(const Frame& a, const Frame& b) {
  if (!a.same_size(b)) throw Error("block_match: frame dimension mismatch");
  if (a.width < kBlockSize || a.height < kBlockSize)
    throw Error("block_match: frame smaller than one block");

  BlockField field;
  field.grid_w = a.width / kBlockSize;
  field.grid_h = a.height / kBlockSize;
  field.vectors.resize(static_cast<size_t>(field.grid_w) * field.grid_h);

  for (int by = 0; by < field.grid_h; ++by) {
    for (int bx = 0; bx < field.grid_w; ++bx) {
      const int ox = bx * kBlockSize;
      const int oy = by * kBlockSize;
      double best_sad = std::numeric_limits<double>::infinity();
      double best_norm = 0.0;
      Vec2i best{0, 0};
      for (int dy = -kSearchRadius; dy <= kSearchRadius; ++dy) {
        for (int dx = -kSearchRadius; dx <= kSearchRadius; ++dx) {
          double sad = 0.0;
          for (int y = 0; y < kBlockSize; ++y) {
            const int ay = oy + y;
            const int by2 = ay + dy;
            for (int x = 0; x < kBlockSize; ++x) {
              const int ax = ox + x;
              sad += std::abs(a.at(ax, ay) - b.at_reflect(ax + dx, by2));
            }
          }
          const double n = static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
          if (sad < best_sad || (sad == best_sad && n < best_norm)) {
            best_sad = sad;
            best_norm = n;
            best = Vec2i{dx, dy};
          }
        }
      }
      field.at(bx, by) = best;
    }
  }
  return field;
}

double heterogeneity(const BlockField& field) {
  if (field.empty()) throw Error("heterogeneity: empty field");
  double mean = 0.0;
  for (const auto& v : field.vectors) mean += norm2(v);
  mean /= static_cast<double>(field.vectors.size());
  double var = 0.0;
  for (const auto& v : field.vectors) {
    const double d = norm2(v) - mean;
    var += d * d;
  }
  var /= static_cast<double>(field.vectors.size());  // population variance
  const double cv = std::sqrt(var) / (mean + kEps);
  return cv / (1.0 + cv);
}

Vec2i robust_global_shift(const BlockField& field) {
  if (field.empty()) throw Error("robust_global_shift: empty field");
  std::vector<int> xs, ys;
  xs.reserve(field.vectors.size());
  ys.reserve(field.vectors.size());
  for (const auto& v : field.vectors) {
    xs.push_back(v.x);
    ys.push_back(v.y);
  }
  const size_t mid = (xs.size() - 1) / 2;  // lower median
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  std::nth_element(ys.begin(), ys.begin() + mid, ys.end());
  return Vec2i{xs[mid], ys[mid]};
}

Frame warp(const Frame& f, const Vec2d& shift) {
  if (f.empty()) throw Error("warp: empty frame");
  if (shift.x == 0.0 && shift.y == 0.0) return f;
  Frame out(f.width, f.height);
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x)
      out.at(x, y) = f.sample_reflect(x - shift.x, y - shift.y);
  return out;
}

Frame warp_blockwise(const Frame& f, const BlockField& field) {
  if (f.empty()) throw Error("warp_blockwise: empty frame");
  if (field.empty()) throw Error("warp_blockwise: empty field");
  Frame out(f.width, f.height);
  for (int y = 0; y < f.height; ++y) {
    const int by = std::min(y / kBlockSize, field.grid_h - 1);
    for (int x = 0; x < f.width; ++x) {
      const int bx = std::min(x / kBlockSize, field.grid_w - 1);
      const Vec2i v = field.at(bx, by);
      out.at(x, y) = f.at_reflect(x - v.x, y - v.y);
    }
  }
  return out;
}

double residual_error(const Frame& a, const Frame& b, const Vec2d& shift) {
  if (!a.same_size(b)) throw Error("residual_error: frame dimension mismatch");
  const Frame pred = warp(a, shift);
  const double num = l1_diff(b, pred);
  const double den = l1_norm(b) + l1_norm(a) + kEps;
  return num / den;
}

GradientField image_gradients(const Frame& prev, const Frame& next) {
  if (!prev.same_size(next)) throw Error("image_gradients: dimension mismatch");
  if (prev.width < 3 || prev.height < 3)
    throw Error("image_gradients: frames must be at least 3x3");
  GradientField g{Frame(prev.width, prev.height), Frame(prev.width, prev.height),
                  Frame(prev.width, prev.height)};
  // Eight-sample averages: x uses k+1 minus k-1 columns over rows {l, l+1}
  // in both frames; y and t are the symmetric constructions.
  for (int l = 0; l < prev.height; ++l) {
    for (int k = 0; k < prev.width; ++k) {
      auto s2 = [&](const Frame& f, int kk, int ll) {
        return f.at_reflect(kk, ll) + f.at_reflect(kk, ll + 1);
      };
      const double fwd_x = s2(prev, k + 1, l) + s2(next, k + 1, l);
      const double bwd_x = s2(prev, k - 1, l) + s2(next, k - 1, l);
      g.ix.at(k, l) = 0.25 * (fwd_x - bwd_x);

      auto s2x = [&](const Frame& f, int kk, int ll) {
        return f.at_reflect(kk, ll) + f.at_reflect(kk + 1, ll);
      };
      const double fwd_y = s2x(prev, k, l + 1) + s2x(next, k, l + 1);
      const double bwd_y = s2x(prev, k, l - 1) + s2x(next, k, l - 1);
      g.iy.at(k, l) = 0.25 * (fwd_y - bwd_y);

      const double sum_next = next.at_reflect(k, l) + next.at_reflect(k + 1, l) +
                              next.at_reflect(k, l + 1) + next.at_reflect(k + 1, l + 1);
      const double sum_prev = prev.at_reflect(k, l) + prev.at_reflect(k + 1, l) +
                              prev.at_reflect(k, l + 1) + prev.at_reflect(k + 1, l + 1);
      g.it.at(k, l) = 0.25 * (sum_next - sum_prev);
    }
  }
  return g;
}

MotionSignals analyze_pair(const Frame& prev, const Frame& next) {
  if (prev.width != kWorkingSize || prev.height != kWorkingSize ||
      next.width != kWorkingSize || next.height != kWorkingSize)
    throw Error("analyze_pair: frames must be in the working domain");

  MotionSignals s;
  auto [m, per_pair] = motion_strength({prev, next});
  s.strength = m;

  const CorrelationResult corr = phase_correlate(prev, next);
  s.sharpness = corr.sharpness;  // min over the single pair

  s.block_field = block_match(prev, next);
  s.heterogeneity = heterogeneity(s.block_field);
  const Vec2i med = robust_global_shift(s.block_field);
  s.global_shift = Vec2d{static_cast<double>(med.x), static_cast<double>(med.y)};

  // Pair mode: consistency between the phase-correlation shift and the
  // block-median shift stands in for the sequence-level measure.
  s.consistency = global_consistency(
      {Vec2d{static_cast<double>(corr.shift.x), static_cast<double>(corr.shift.y)},
       s.global_shift});

  s.residual = residual_error(prev, next, s.global_shift);
  return s;
}

}  // namespace penme
