#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace lacuna::fft {

// Unnormalized in-place transforms backed by FFTW. sign = -1 forward, +1 backward.
// Plans are cached per (shape, sign) and are safe to execute from several threads.
void transform_2d(std::span<std::complex<double>> data, std::size_t n, int sign);
void transform_1d(std::span<std::complex<double>> data, int sign);

}  // namespace lacuna::fft
