#pragma once

// Independent reference implementations used only by tests. These are kept
// deliberately separate from the library code paths they check.

#include <cmath>
#include <cstdint>
#include <vector>

#include "penme/frame.hpp"
#include "penme/motion.hpp"
#include "penme/rng.hpp"

namespace oracle {

// High-precision erfc in long double: Maclaurin series of erf below x = 4,
// Lentz-evaluated Laplace continued fraction above. Anchored against
// published values in the tests that use it.
inline long double erfc_ref(long double x) {
  const long double sqrt_pi = 1.77245385090551602729816748334L;
  if (x < 0.0L) return 2.0L - erfc_ref(-x);
  if (x < 2.0L) {
    long double power = x;  // (-1)^n x^(2n+1) / n!
    long double sum = x;
    for (int n = 1; n < 200; ++n) {
      power *= -x * x / n;
      const long double term = power / (2 * n + 1);
      sum += term;
      if (fabsl(term) < 1e-25L * fabsl(sum)) break;
    }
    return 1.0L - 2.0L / sqrt_pi * sum;
  }
  // Modified Lentz algorithm on erfc(x) = e^{-x^2}/sqrt(pi) *
  // 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
  const long double tiny = 1e-30L;
  long double f = x, c = x, d = 0.0L;
  for (int k = 1; k < 400; ++k) {
    const long double a = k * 0.5L;
    d = x + a * d;
    if (fabsl(d) < tiny) d = tiny;
    c = x + a / c;
    if (fabsl(c) < tiny) c = tiny;
    d = 1.0L / d;
    const long double delta = c * d;
    f *= delta;
    if (fabsl(delta - 1.0L) < 1e-25L) break;
  }
  return expl(-x * x) / sqrt_pi / f;
}

inline long double qfunc_ref(long double x) {
  return 0.5L * erfc_ref(x / 1.41421356237309504880168872421L);
}

// Straightforward bilinear resize with half-pixel centers; no shortcuts.
inline penme::Frame resize_ref(const penme::Frame& f, int tw, int th) {
  penme::Frame out(tw, th);
  for (int y = 0; y < th; ++y) {
    for (int x = 0; x < tw; ++x) {
      double sx = (x + 0.5) * f.width / tw - 0.5;
      double sy = (y + 0.5) * f.height / th - 0.5;
      sx = std::min(std::max(sx, 0.0), f.width - 1.0);
      sy = std::min(std::max(sy, 0.0), f.height - 1.0);
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, f.width - 1);
      const int y1 = std::min(y0 + 1, f.height - 1);
      const double ax = sx - x0;
      const double ay = sy - y0;
      const double v = (1 - ay) * ((1 - ax) * f.at(x0, y0) + ax * f.at(x1, y0)) +
                       ay * ((1 - ax) * f.at(x0, y1) + ax * f.at(x1, y1));
      out.at(x, y) = penme::clamp01(v);
    }
  }
  return out;
}

// Exhaustive SAD over the search window for a single block, mirroring the
// declared tie-break rules but written independently.
inline penme::Vec2i block_sad_ref(const penme::Frame& a, const penme::Frame& b,
                                  int ox, int oy) {
  double best = 1e300;
  double best_norm = 1e300;
  penme::Vec2i arg{0, 0};
  for (int dy = -penme::kSearchRadius; dy <= penme::kSearchRadius; ++dy)
    for (int dx = -penme::kSearchRadius; dx <= penme::kSearchRadius; ++dx) {
      double sad = 0.0;
      for (int y = 0; y < penme::kBlockSize; ++y)
        for (int x = 0; x < penme::kBlockSize; ++x)
          sad += std::abs(a.at(ox + x, oy + y) -
                          b.at_reflect(ox + x + dx, oy + y + dy));
      const double norm = double(dx) * dx + double(dy) * dy;
      if (sad < best || (sad == best && norm < best_norm)) {
        best = sad;
        best_norm = norm;
        arg = {dx, dy};
      }
    }
  return arg;
}

// Seeded noise frame in [0, 1].
inline penme::Frame noise_frame(std::uint64_t seed, int w = 128, int h = 128) {
  penme::Rng rng(seed);
  penme::Frame f(w, h);
  for (auto& p : f.pixels) p = rng.next_double();
  return f;
}

// Circular shift: out(x, y) = f((x - dx) mod w, (y - dy) mod h).
inline penme::Frame circular_shift(const penme::Frame& f, int dx, int dy) {
  penme::Frame out(f.width, f.height);
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      const int sx = ((x - dx) % f.width + f.width) % f.width;
      const int sy = ((y - dy) % f.height + f.height) % f.height;
      out.at(x, y) = f.at(sx, sy);
    }
  return out;
}

}  // namespace oracle
