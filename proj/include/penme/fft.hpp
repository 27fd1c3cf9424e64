#pragma once

#include <complex>
#include <vector>

namespace penme {

using Cplx = std::complex<double>;

// In-place radix-2 Cooley-Tukey. n must be a power of two.
void fft_inplace(std::vector<Cplx>& data, bool inverse);

// 2D transform of an n x n row-major grid, n a power of two.
void fft2d_inplace(std::vector<Cplx>& grid, int n, bool inverse);

}  // namespace penme
