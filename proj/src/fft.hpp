#pragma once

#include <complex>
#include <vector>

namespace wifiholo::detail {

// Unnormalized in-place DFT. sign = -1 forward, +1 inverse.
void fft_1d(std::vector<std::complex<double>>& data, int sign);

// Row-major n0 x n1 array (n1 fastest).
void fft_2d(std::vector<std::complex<double>>& data, int n0, int n1, int sign);

}  // namespace wifiholo::detail
