#include "penme/fft.hpp"

#include <cmath>

#include "penme/common.hpp"

namespace penme {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

void fft_inplace(std::vector<Cplx>& data, bool inverse) {
  const size_t n = data.size();
  if (!is_pow2(n)) throw Error("fft: size must be a power of two");
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const Cplx wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      Cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const Cplx u = data[i + k];
        const Cplx v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& c : data) c *= inv;
  }
}

void fft2d_inplace(std::vector<Cplx>& grid, int n, bool inverse) {
  if (grid.size() != static_cast<size_t>(n) * n)
    throw Error("fft2d: grid size mismatch");
  std::vector<Cplx> line(static_cast<size_t>(n));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) line[x] = grid[static_cast<size_t>(y) * n + x];
    fft_inplace(line, inverse);
    for (int x = 0; x < n; ++x) grid[static_cast<size_t>(y) * n + x] = line[x];
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) line[y] = grid[static_cast<size_t>(y) * n + x];
    fft_inplace(line, inverse);
    for (int y = 0; y < n; ++y) grid[static_cast<size_t>(y) * n + x] = line[y];
  }
}

}  // namespace penme
