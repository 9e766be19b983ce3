#pragma once

#include <complex>
#include <span>

namespace dhlab::detail {

/// In-place unnormalised DFT, X_j = sum_k x_k exp(-2 pi i jk / n).
void fft_forward(std::span<std::complex<double>> data);

/// In-place unnormalised inverse DFT, x_k = sum_j X_j exp(+2 pi i jk / n).
void fft_backward(std::span<std::complex<double>> data);

}  // namespace dhlab::detail
