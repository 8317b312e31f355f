#include "hermqv/gaussgen.hpp"

#include "hermqv/analytic.hpp"
#include "hermqv/errors.hpp"
#include "hermqv/fft.hpp"
#include "hermqv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace hermqv::gaussgen {

AutocovModel AutocovModel::fgn(double h) {
    if (!(h > 0.0 && h < 1.0)) throw std::domain_error("fgn index h must be in (0,1)");
    return AutocovModel{h};
}

double AutocovModel::r(std::int64_t k) const {
    if (k < 0) k = -k;
    if (k == 0) return 1.0;
    return 0.5 * analytic::power_second_diff(2.0 * h, static_cast<double>(k));
}

CirculantSampler build_sampler(const AutocovModel& model, std::int64_t n) {
    if (n < 2) throw std::domain_error("build_sampler: n must be >= 2");
    std::int64_t m = 2;
    while (m < 2 * n - 2) m *= 2;
    return build_sampler(model, n, m);
}

CirculantSampler build_sampler(const AutocovModel& model, std::int64_t n, std::int64_t m) {
    if (n < 2) throw std::domain_error("build_sampler: n must be >= 2");
    if (m < 2 * n - 2 || (m & (m - 1)) != 0)
        throw std::domain_error("build_sampler: m must be a power of two >= 2n-2");

    // first row of the circulant: r(0), ..., r(m/2), r(m/2-1), ..., r(1)
    std::vector<double> row(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k <= m / 2; ++k) row[k] = model.r(k);
    for (std::int64_t k = m / 2 + 1; k < m; ++k) row[k] = row[m - k];

    auto spec = fft::rfft(row);
    CirculantSampler s;
    s.model = model;
    s.n = n;
    s.m = m;
    s.scale.resize(spec.size());

    double max_eig = 0.0;
    for (const auto& z : spec) max_eig = std::max(max_eig, z.real());
    const double tol = 1e-10 * max_eig;

    double min_eig = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        double lam = spec[k].real(); // imaginary parts vanish for an even row
        min_eig = std::min(min_eig, lam);
        if (lam < 0.0) {
            s.clamped_mass += -lam;
            lam = 0.0;
        }
        s.trace += lam;
        s.scale[k] = std::sqrt(lam / static_cast<double>(m));
    }
    if (min_eig < -tol) {
        std::ostringstream os;
        os << "circulant embedding failed: eigenvalue " << min_eig << " below -" << tol
           << " at m = " << m;
        throw embedding_error(os.str(), min_eig);
    }
    return s;
}

CirculantSampler build_sampler_retry(const AutocovModel& model, std::int64_t n,
                                     int max_doublings) {
    std::int64_t m = 2;
    while (m < 2 * n - 2) m *= 2;
    for (int attempt = 0;; ++attempt) {
        try {
            return build_sampler(model, n, m);
        } catch (const embedding_error&) {
            if (attempt >= max_doublings) throw;
            m *= 2;
        }
    }
}

std::vector<double> sample(const CirculantSampler& s, std::uint64_t seed) {
    const std::int64_t m = s.m;
    const std::size_t half = static_cast<std::size_t>(m / 2);
    rng::GaussianStream g(seed);

    // Hermitian half-spectrum with independent real/imag normal arrays;
    // DC and Nyquist modes are real.
    std::vector<std::complex<double>> spec(half + 1);
    const double inv_sqrt2 = 0.70710678118654752440;
    for (std::size_t k = 0; k <= half; ++k) {
        const double a = g();
        const double b = g();
        if (k == 0 || k == half) {
            spec[k] = {s.scale[k] * a, 0.0};
        } else {
            spec[k] = {s.scale[k] * a * inv_sqrt2, s.scale[k] * b * inv_sqrt2};
        }
    }
    auto full = fft::irfft(spec, static_cast<std::size_t>(m));
    full.resize(static_cast<std::size_t>(s.n));
    return full;
}

} // namespace hermqv::gaussgen
