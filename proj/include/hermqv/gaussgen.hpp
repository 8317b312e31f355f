#pragma once

#include <cstdint>
#include <vector>

namespace hermqv::gaussgen {

/// Autocovariance of a stationary standard Gaussian sequence. Currently the
/// fractional Gaussian noise family: r(k) = (|k+1|^{2h} - 2|k|^{2h} +
/// |k-1|^{2h}) / 2, r(0) = 1.
struct AutocovModel {
    double h;

    static AutocovModel fgn(double h);
    double r(std::int64_t k) const;
};

/// Circulant embedding of r(0..m/2), diagonalized by an FFT. Sampling is
/// exact up to clamping of eigenvalues in [-tol, 0), whose total mass is
/// tracked. Immutable after construction; sample() is safe from any thread.
struct CirculantSampler {
    AutocovModel model{0.5};
    std::int64_t n = 0;          // target length
    std::int64_t m = 0;          // embedding length, power of two, >= 2n-2
    std::vector<double> scale;   // sqrt(lambda_k / m), k = 0..m/2
    double clamped_mass = 0.0;   // sum of |clamped negative eigenvalues|
    double trace = 0.0;          // sum of eigenvalues
};

/// Builds the embedding with the smallest power-of-two m >= 2n-2. Throws
/// embedding_error (reporting the most negative eigenvalue) if some
/// eigenvalue is below -1e-10 * max eigenvalue; the caller may double m and
/// retry (see build_sampler_retry).
CirculantSampler build_sampler(const AutocovModel& model, std::int64_t n);
CirculantSampler build_sampler(const AutocovModel& model, std::int64_t n, std::int64_t m);

/// build_sampler with up to `max_doublings` retries at doubled m.
CirculantSampler build_sampler_retry(const AutocovModel& model, std::int64_t n,
                                     int max_doublings = 4);

/// Draws a mean-zero Gaussian vector of length n with covariance
/// [r(|i-j|)]; deterministic given the seed.
std::vector<double> sample(const CirculantSampler& s, std::uint64_t seed);

} // namespace hermqv::gaussgen
