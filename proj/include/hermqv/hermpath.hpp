#pragma once

#include "hermqv/analytic.hpp"
#include "hermqv/gaussgen.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hermqv::hermpath {

struct PathMeta {
    int order = 1;
    double hurst = 0.5;
    std::string generator;
};

/// One sampled trajectory; values[0] = 0 and times form an arithmetic grid
/// starting at 0.
struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;
    PathMeta meta;
};

/// Coupled pair (order q, index H1) and (order q+1, index H2) on a shared
/// time grid.
struct PathPair {
    SamplePath component1;
    SamplePath component2;
    analytic::Coupling coupling = analytic::Coupling::subordinated;
};

/// Spatial discretization of the Wiener integral for the kernel-grid method.
/// [-M, t_max] is covered by m cells of width delta; the slowly decaying
/// kernel tail beyond -M is carried by an internal geometric far grid, sized
/// so the omitted L2 kernel mass stays below 1e-5 per component.
struct GridSpec {
    double delta = 1.0 / 64.0;
    double M = 32.0;
    std::int64_t m = 0; // 0: derived as (M + t_max)/delta

    static GridSpec standard() { return {}; }
};

/// H2 on the subordination constraint line: 1 - (q+1)(1-H1)/q. Domain error
/// when the result would leave (1/2, 1).
double constraint_H2(int q, double H1);

// ---------------------------------------------------------------------------
// Generators. Construction does the heavy precomputation (embeddings,
// kernel spectra, calibration); generate() is const and thread-safe, keyed
// only by the seed.
// ---------------------------------------------------------------------------

/// Dependent pair on the constraint line: both components are normalized
/// partial sums of H_q(X) and H_{q+1}(X) over one fGn sequence X with index
/// h = 1-(1-H1)/q, at n_inner inner points per unit time. The normalizers
/// s1, s2 match the exact discrete variance at t=1 to one.
class SubordinatedPairGenerator {
public:
    SubordinatedPairGenerator(int q, double H1, std::int64_t N, std::int64_t n_inner);

    PathPair generate(std::uint64_t seed) const;

    int q() const { return q_; }
    double H1() const { return H1_; }
    double H2() const { return H2_; }
    double s1() const { return s1_; }
    double s2() const { return s2_; }

private:
    int q_;
    double H1_, H2_, h_;
    std::int64_t N_, n_inner_;
    gaussgen::CirculantSampler sampler_;
    double s1_ = 1.0, s2_ = 1.0;
};

/// Exact fractional Brownian motion at t_i = gamma*i via cumulated fGn.
class FbmGenerator {
public:
    FbmGenerator(double H, std::int64_t N, double gamma);
    SamplePath generate(std::uint64_t seed) const;

private:
    double H_, gamma_;
    std::int64_t N_;
    gaussgen::CirculantSampler sampler_;
};

/// Single Hermite process of order p >= 2 via subordination to fGn with
/// index 1-(1-H)/p (used for the independent-drivers coupling).
class SingleHermiteGenerator {
public:
    SingleHermiteGenerator(int order, double H, std::int64_t N, std::int64_t n_inner);
    SamplePath generate(std::uint64_t seed) const;

private:
    int order_;
    double H_, h_;
    std::int64_t N_, n_inner_;
    gaussgen::CirculantSampler sampler_;
    double s_ = 1.0;
};

/// Dependent q = 1 pair at arbitrary (H1, H2) through the discretized
/// Wiener-integral kernels on a shared white-noise grid, at unit spacing.
/// Component 2 is the off-diagonal quadratic form of the order-2 kernel,
/// evaluated by per-step Gauss quadrature in u and FFT convolutions over the
/// grid cells.
class KernelPairGenerator {
public:
    KernelPairGenerator(double H1, double H2, std::int64_t N, GridSpec grid, int u_nodes = 4);

    PathPair generate(std::uint64_t seed) const;

    /// exact variance of the discrete model at t = 1 (diagnostics; ~1)
    double calib_var1() const { return calib_var1_; }
    double calib_var2() const { return calib_var2_; }

private:
    double H1_, H2_;
    std::int64_t N_;
    GridSpec grid_;
    int u_nodes_;
    double a1p1_, a2p1_; // kernel exponents + 1
    double c1_, c2_;     // normalizing constants
    std::int64_t d_inv_; // cells per unit time
    std::int64_t J_;     // fine cells over [-M, N]
    std::size_t fft_m_;  // convolution length
    double calib_var1_ = 0.0, calib_var2_ = 0.0;

    std::vector<double> gl_x_, gl_w_; // u nodes/weights on (0,1)
    std::vector<std::int64_t> node_cell_;
    // kernel half-spectra: fbm, then per u-node S and D kernels
    std::vector<std::complex<double>> fbm_spec_;
    std::vector<std::vector<std::complex<double>>> s_spec_, d_spec_;
    // geometric far grid
    std::vector<double> coarse_edges_;  // e_0 = M < e_1 < ... (distances)
    std::vector<double> coarse_width_;  // widths
    std::vector<double> fbm_coarse_;    // [i * n_c + c]
    std::vector<double> s_coarse_;      // [(i * u_nodes + t) * n_c + c]
};

/// Independent pair: exact fBm for order 1, subordinated single Hermite
/// processes otherwise; distinct driver streams per component.
class IndependentPairGenerator {
public:
    IndependentPairGenerator(int q, double H1, double H2, std::int64_t N, std::int64_t n_inner,
                             bool component1_only = false);
    PathPair generate(std::uint64_t seed) const;

private:
    int q_;
    std::int64_t N_;
    bool component1_only_;
    std::unique_ptr<FbmGenerator> fbm1_;
    std::unique_ptr<SingleHermiteGenerator> herm1_;
    std::unique_ptr<SingleHermiteGenerator> herm2_;
};

// ---------------------------------------------------------------------------
// One-shot operations
// ---------------------------------------------------------------------------

PathPair simulate_pair_subordinated(int q, double H1, std::int64_t N, std::int64_t n_inner,
                                    std::uint64_t seed);
SamplePath simulate_fbm(double H, std::int64_t N, double gamma, std::uint64_t seed);
PathPair simulate_pair_kernel(double H1, double H2, std::int64_t N, const GridSpec& grid,
                              std::uint64_t seed);
PathPair simulate_pair_independent(int q, double H1, double H2, std::int64_t N, double gamma,
                                   std::uint64_t seed, std::int64_t n_inner = 256);

/// Pushes a unit-spacing pair to the grid t_i = gamma*i using joint
/// self-similarity: values scale by gamma^{H1}, gamma^{H2}.
PathPair rescale_selfsimilar(PathPair pair, double gamma, double H1, double H2);

} // namespace hermqv::hermpath
