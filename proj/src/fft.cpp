#include "hermqv/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hermqv::fft {

namespace {

// Plans are cached per length and executed through the new-array interface.
// Plan creation is not thread-safe in FFTW; execution on distinct buffers is.
struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

std::mutex g_plan_mu;
std::map<std::size_t, Plans>& plan_cache() {
    static std::map<std::size_t, Plans> cache;
    return cache;
}

const Plans& plans_for(std::size_t m) {
    std::lock_guard<std::mutex> lk(g_plan_mu);
    auto& cache = plan_cache();
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    double* re = fftw_alloc_real(m);
    fftw_complex* cx = fftw_alloc_complex(m / 2 + 1);
    Plans p;
    p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(m), re, cx, FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(m), cx, re, FFTW_ESTIMATE);
    fftw_free(re);
    fftw_free(cx);
    if (!p.r2c || !p.c2r) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(m, p).first->second;
}

struct RealBuf {
    double* p;
    explicit RealBuf(std::size_t n) : p(fftw_alloc_real(n)) {}
    ~RealBuf() { fftw_free(p); }
    RealBuf(const RealBuf&) = delete;
    RealBuf& operator=(const RealBuf&) = delete;
};

struct ComplexBuf {
    fftw_complex* p;
    explicit ComplexBuf(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~ComplexBuf() { fftw_free(p); }
    ComplexBuf(const ComplexBuf&) = delete;
    ComplexBuf& operator=(const ComplexBuf&) = delete;
};

} // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& in) {
    const std::size_t m = in.size();
    if (m < 2 || (m % 2) != 0) throw std::invalid_argument("rfft: length must be even >= 2");
    const Plans& p = plans_for(m);
    RealBuf re(m);
    ComplexBuf cx(m / 2 + 1);
    std::memcpy(re.p, in.data(), m * sizeof(double));
    fftw_execute_dft_r2c(p.r2c, re.p, cx.p);
    std::vector<std::complex<double>> out(m / 2 + 1);
    for (std::size_t k = 0; k <= m / 2; ++k) out[k] = {cx.p[k][0], cx.p[k][1]};
    return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& in, std::size_t m) {
    if (in.size() != m / 2 + 1 || (m % 2) != 0)
        throw std::invalid_argument("irfft: spectrum length must be m/2+1, m even");
    const Plans& p = plans_for(m);
    ComplexBuf cx(m / 2 + 1);
    RealBuf re(m);
    for (std::size_t k = 0; k <= m / 2; ++k) {
        cx.p[k][0] = in[k].real();
        cx.p[k][1] = in[k].imag();
    }
    fftw_execute_dft_c2r(p.c2r, cx.p, re.p);
    return std::vector<double>(re.p, re.p + m);
}

std::vector<double> convolve_with_spectrum(const std::vector<double>& a,
                                           const std::vector<std::complex<double>>& b_spec,
                                           std::size_t m) {
    if (a.size() > m) throw std::invalid_argument("convolve_with_spectrum: signal longer than m");
    std::vector<double> padded(m, 0.0);
    std::copy(a.begin(), a.end(), padded.begin());
    auto spec = rfft(padded);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= b_spec[k] * inv_m;
    return irfft(spec, m);
}

} // namespace hermqv::fft
