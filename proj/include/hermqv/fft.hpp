#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hermqv::fft {

/// Half-spectrum forward transform of a real signal of even length m:
/// out[k] = sum_j in[j] exp(-2 pi i j k / m) for k = 0 .. m/2.
std::vector<std::complex<double>> rfft(const std::vector<double>& in);

/// Inverse of the half-spectrum transform, unnormalized:
/// out[j] = sum_{k=0}^{m-1} spec'[k] exp(+2 pi i j k / m), where spec' is the
/// Hermitian extension of `in` (length m/2+1) to length m. The caller divides
/// by m (or folds the factor into the spectrum) as needed.
std::vector<double> irfft(const std::vector<std::complex<double>>& in, std::size_t m);

/// Circular convolution helper: returns irfft(rfft(a) .* b_spec, m) where
/// b_spec is a precomputed half spectrum of the kernel. a is zero-padded to m.
std::vector<double> convolve_with_spectrum(const std::vector<double>& a,
                                           const std::vector<std::complex<double>>& b_spec,
                                           std::size_t m);

} // namespace hermqv::fft
