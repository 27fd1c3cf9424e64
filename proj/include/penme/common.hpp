#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace penme {

// Numerical stability constant used by every normalized ratio in the
// signal/codec pipeline.
inline constexpr double kEps = 1e-8;

// Side length of the working-domain raster.
inline constexpr int kWorkingSize = 128;

// Block matching parameters: block size and integer search radius.
inline constexpr int kBlockSize = 16;
inline constexpr int kSearchRadius = 4;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Vec2i {
  int x = 0;  // column offset
  int y = 0;  // row offset

  friend bool operator==(const Vec2i&, const Vec2i&) = default;
};

struct Vec2d {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2d&, const Vec2d&) = default;
};

inline double norm2(const Vec2d& v) { return std::hypot(v.x, v.y); }
inline double norm2(const Vec2i& v) {
  return std::hypot(static_cast<double>(v.x), static_cast<double>(v.y));
}

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Reflective index extension: ba|abcd|dc. Valid for any offset magnitude.
inline int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

}  // namespace penme
