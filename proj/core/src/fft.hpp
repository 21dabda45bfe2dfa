#ifndef MIDSIFT_SRC_FFT_HPP
#define MIDSIFT_SRC_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace midsift::detail {

// Unnormalized r2c transform: n/2+1 bins of sum_k x_k exp(-2 pi i jk/n).
std::vector<std::complex<double>> real_forward(std::span<const double> x);

// Unnormalized c2r transform of a half spectrum (n/2+1 bins) to n samples:
// x_k = sum over the full Hermitian spectrum of X_j exp(+2 pi i jk/n).
std::vector<double> real_inverse(std::span<const std::complex<double>> half, std::size_t n);

} // namespace midsift::detail

#endif // MIDSIFT_SRC_FFT_HPP
