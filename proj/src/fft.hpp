#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace jade::detail {

using cplx = std::complex<double>;

// Half spectrum (n/2 + 1 bins) of a real sequence.
std::vector<cplx> rfft(std::span<const double> x);
// Inverse of rfft, normalized; n is the time-domain length.
std::vector<double> irfft(std::span<const cplx> half, std::size_t n);
std::vector<cplx> fft(std::span<const cplx> x);
// Normalized inverse.
std::vector<cplx> ifft(std::span<const cplx> x);

// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t fft_size(std::size_t n);

}  // namespace jade::detail
