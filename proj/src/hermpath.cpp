#include "hermqv/hermpath.hpp"

#include "hermqv/errors.hpp"
#include "hermqv/fft.hpp"
#include "hermqv/quadrature.hpp"
#include "hermqv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hermqv::hermpath {

using analytic::Coupling;

double constraint_H2(int q, double H1) {
    if (q < 1) throw std::domain_error("order q must be >= 1");
    if (!(H1 > 0.5 && H1 < 1.0)) throw std::domain_error("H1 outside (1/2, 1)");
    const double H2 = 1.0 - (q + 1) * (1.0 - H1) / q;
    if (!(H2 > 0.5)) {
        std::ostringstream os;
        os << "constraint line leaves (1/2,1): H2 = " << H2 << " for q = " << q
           << ", H1 = " << H1 << "; need H1 > " << 1.0 - 0.5 * q / (q + 1);
        throw std::domain_error(os.str());
    }
    return H2;
}

namespace {

// Var( sum_{i=1}^{n} He_p(X_i) ) = p! sum_{|l|<n} (n-|l|) rho(l)^p for a
// stationary standard Gaussian sequence with autocovariance rho.
double block_sum_variance(const gaussgen::AutocovModel& model, int p, std::int64_t n) {
    const double pfact = std::exp(std::lgamma(p + 1.0));
    double acc = static_cast<double>(n); // l = 0 term: rho(0)^p = 1
    double c = 0.0;
    for (std::int64_t l = 1; l < n; ++l) {
        const double y = 2.0 * static_cast<double>(n - l) * std::pow(model.r(l), p) - c;
        const double t = acc + y;
        c = (t - acc) - y;
        acc = t;
    }
    return pfact * acc;
}

// In-place He_p over a vector, via the three-term recurrence.
void hermite_apply(std::vector<double>& x, int p) {
    if (p == 1) return;
    for (double& v : x) {
        double p0 = 1.0, p1 = v;
        for (int k = 2; k <= p; ++k) {
            const double p2 = v * p1 - (k - 1.0) * p0;
            p0 = p1;
            p1 = p2;
        }
        v = p1;
    }
}

SamplePath partial_sum_path(const std::vector<double>& herm, std::int64_t N,
                            std::int64_t n_inner, double H, double s, int order,
                            const char* tag) {
    SamplePath path;
    path.times.resize(N + 1);
    path.values.resize(N + 1);
    path.meta = {order, H, tag};
    const double scale = std::pow(static_cast<double>(n_inner), -H) / s;
    path.times[0] = 0.0;
    path.values[0] = 0.0;
    double acc = 0.0;
    std::int64_t idx = 0;
    for (std::int64_t t = 1; t <= N; ++t) {
        for (std::int64_t i = 0; i < n_inner; ++i) acc += herm[idx++];
        path.times[t] = static_cast<double>(t);
        path.values[t] = scale * acc;
    }
    return path;
}

} // namespace

// ---------------------------------------------------------------------------
// SubordinatedPairGenerator
// ---------------------------------------------------------------------------

SubordinatedPairGenerator::SubordinatedPairGenerator(int q, double H1, std::int64_t N,
                                                     std::int64_t n_inner)
    : q_(q), H1_(H1), N_(N), n_inner_(n_inner) {
    H2_ = constraint_H2(q, H1);
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (n_inner < 64) throw std::domain_error("n_inner must be >= 64");
    h_ = 1.0 - (1.0 - H1) / q;
    const auto model = gaussgen::AutocovModel::fgn(h_);
    sampler_ = gaussgen::build_sampler_retry(model, N * n_inner);
    const double v1 = block_sum_variance(model, q, n_inner);
    const double v2 = block_sum_variance(model, q + 1, n_inner);
    if (!(v1 > 0.0) || !(v2 > 0.0))
        throw calibration_error("subordination calibration produced a nonpositive variance");
    s1_ = std::sqrt(v1) / std::pow(static_cast<double>(n_inner), H1_);
    s2_ = std::sqrt(v2) / std::pow(static_cast<double>(n_inner), H2_);
}

PathPair SubordinatedPairGenerator::generate(std::uint64_t seed) const {
    auto x = gaussgen::sample(sampler_, seed);
    std::vector<double> hq = x;
    hermite_apply(hq, q_);
    hermite_apply(x, q_ + 1);
    PathPair pair;
    pair.coupling = Coupling::subordinated;
    pair.component1 = partial_sum_path(hq, N_, n_inner_, H1_, s1_, q_, "subordinated");
    pair.component2 = partial_sum_path(x, N_, n_inner_, H2_, s2_, q_ + 1, "subordinated");
    return pair;
}

// ---------------------------------------------------------------------------
// FbmGenerator
// ---------------------------------------------------------------------------

FbmGenerator::FbmGenerator(double H, std::int64_t N, double gamma)
    : H_(H), gamma_(gamma), N_(N) {
    if (!(H > 0.0 && H < 1.0)) throw std::domain_error("H outside (0,1)");
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
    sampler_ = gaussgen::build_sampler_retry(gaussgen::AutocovModel::fgn(H), std::max<std::int64_t>(N, 2));
}

SamplePath FbmGenerator::generate(std::uint64_t seed) const {
    auto x = gaussgen::sample(sampler_, seed);
    SamplePath path;
    path.times.resize(N_ + 1);
    path.values.resize(N_ + 1);
    path.meta = {1, H_, "fbm-circulant"};
    const double vscale = std::pow(gamma_, H_);
    path.times[0] = 0.0;
    path.values[0] = 0.0;
    double acc = 0.0;
    for (std::int64_t i = 1; i <= N_; ++i) {
        acc += x[i - 1];
        path.times[i] = gamma_ * static_cast<double>(i);
        path.values[i] = vscale * acc;
    }
    return path;
}

// ---------------------------------------------------------------------------
// SingleHermiteGenerator
// ---------------------------------------------------------------------------

SingleHermiteGenerator::SingleHermiteGenerator(int order, double H, std::int64_t N,
                                               std::int64_t n_inner)
    : order_(order), H_(H), N_(N), n_inner_(n_inner) {
    if (order < 2) throw std::domain_error("SingleHermiteGenerator: order must be >= 2");
    if (!(H > 0.5 && H < 1.0)) throw std::domain_error("H outside (1/2, 1)");
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (n_inner < 64) throw std::domain_error("n_inner must be >= 64");
    h_ = 1.0 - (1.0 - H) / order;
    const auto model = gaussgen::AutocovModel::fgn(h_);
    sampler_ = gaussgen::build_sampler_retry(model, N * n_inner);
    const double v = block_sum_variance(model, order, n_inner);
    if (!(v > 0.0)) throw calibration_error("hermite subordination calibration failed");
    s_ = std::sqrt(v) / std::pow(static_cast<double>(n_inner), H_);
}

SamplePath SingleHermiteGenerator::generate(std::uint64_t seed) const {
    auto x = gaussgen::sample(sampler_, seed);
    hermite_apply(x, order_);
    return partial_sum_path(x, N_, n_inner_, H_, s_, order_, "hermite-subordinated");
}

// ---------------------------------------------------------------------------
// KernelPairGenerator
// ---------------------------------------------------------------------------

KernelPairGenerator::KernelPairGenerator(double H1, double H2, std::int64_t N, GridSpec grid,
                                         int u_nodes)
    : H1_(H1), H2_(H2), N_(N), grid_(grid), u_nodes_(u_nodes) {
    if (!(H1 > 0.5 && H1 < 1.0) || !(H2 > 0.5 && H2 < 1.0))
        throw std::domain_error("H1, H2 outside (1/2, 1)");
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (grid_.delta > 1.0 / 64.0 + 1e-15)
        throw grid_error("kernel grid requires delta <= 1/64");
    if (u_nodes_ < 2 || u_nodes_ > 16) throw std::domain_error("u_nodes in [2,16]");

    d_inv_ = std::llround(1.0 / grid_.delta);
    if (std::abs(d_inv_ * grid_.delta - 1.0) > 1e-12)
        throw grid_error("kernel grid requires 1/delta integral");
    const std::int64_t M_cells = std::llround(grid_.M / grid_.delta);
    if (std::abs(M_cells * grid_.delta - grid_.M) > 1e-9)
        throw grid_error("kernel grid requires M to be a multiple of delta");
    J_ = (N_ + std::llround(grid_.M)) * d_inv_;
    if (grid_.m == 0) grid_.m = J_;
    if (grid_.m < J_) throw grid_error("grid.m does not cover [-M, t_max]");

    const double a1 = H1_ - 1.5;              // order-1 kernel exponent
    const double a2 = -(0.5 + (1.0 - H2_) / 2.0); // order-2 kernel exponent
    a1p1_ = a1 + 1.0;
    a2p1_ = a2 + 1.0;
    c1_ = analytic::norm_constant(1, H1_);
    c2_ = analytic::norm_constant(2, H2_);

    // u quadrature nodes on (0,1)
    const auto& gl = quadrature::gauss_legendre(u_nodes_);
    gl_x_.resize(u_nodes_);
    gl_w_.resize(u_nodes_);
    node_cell_.resize(u_nodes_);
    for (int t = 0; t < u_nodes_; ++t) {
        gl_x_[t] = 0.5 * (gl.x[t] + 1.0);
        gl_w_[t] = 0.5 * gl.w[t];
        node_cell_[t] = static_cast<std::int64_t>(std::floor(gl_x_[t] * d_inv_));
    }

    // --- geometric far grid: [-M_far, -M], sized so the omitted L2 kernel
    // mass is below 1e-5 of each increment's variance ---
    const double delta = grid_.delta;
    {
        // component 1 tail: c1^2 int_Mfar x^{2H1-2} ... (2a1+1 = 2H1-3+1)
        const double t1 = 2.0 * H1_ - 2.0; // exponent of the tail integral bound
        const double need1 = 1e-5 * (2.0 - 2.0 * H1_) / (c1_ * c1_);
        const double mfar1 = std::pow(need1, 1.0 / t1);
        // component 2 tail (both arguments remote): [x^{2a2+1}/|2a2+1|]^2
        const double t2 = 2.0 * a2 + 1.0; // = -(1-H2), negative
        const double l2tot = 1.0 / (2.0 * c2_ * c2_);
        const double need2 = std::sqrt(1e-5 * l2tot) * std::abs(t2);
        const double mfar2 = std::pow(need2, 1.0 / t2);
        double m_far = std::clamp(std::max(mfar1, mfar2), 2.0 * grid_.M, 1e16);
        const double g = 1.12;
        double e = grid_.M;
        coarse_edges_.push_back(e);
        while (e < m_far) {
            e *= g;
            coarse_edges_.push_back(e);
        }
        coarse_width_.resize(coarse_edges_.size() - 1);
        for (std::size_t c = 0; c + 1 < coarse_edges_.size(); ++c)
            coarse_width_[c] = coarse_edges_[c + 1] - coarse_edges_[c];
    }
    const std::size_t n_c = coarse_width_.size();

    // --- fine-zone kernels (stationary in the step index) ---
    // fBm step weight at lag l from the step's right edge:
    // cell average over [y_j, y_j+delta] of K1(i+1,.) - K1(i,.).
    const std::int64_t L_ker = J_;
    fft_m_ = 1;
    while (fft_m_ < static_cast<std::size_t>(J_ + L_ker)) fft_m_ *= 2;

    auto pow_p = [](double x, double p) { return x <= 0.0 ? 0.0 : std::pow(x, p); };

    {
        std::vector<double> ker(L_ker, 0.0);
        const double p = a1p1_; // H1 - 1/2
        const double norm = 1.0 / (p * (p + 1.0) * delta);
        for (std::int64_t l = 0; l < L_ker; ++l) {
            const double A = pow_p(delta * static_cast<double>(l), p + 1.0);
            const double B = pow_p(delta * static_cast<double>(l - 1), p + 1.0);
            const double C = pow_p(delta * static_cast<double>(l - d_inv_), p + 1.0);
            const double D = pow_p(delta * static_cast<double>(l - d_inv_ - 1), p + 1.0);
            ker[l] = norm * ((A - B) - (C - D));
        }
        std::vector<double> padded(fft_m_, 0.0);
        std::copy(ker.begin(), ker.end(), padded.begin());
        fbm_spec_ = fft::rfft(padded);
    }

    // order-2 per-node kernels: cell average of (u - y)^{a2} at lag l behind
    // the cell holding u, with off = frac(u/delta).
    s_spec_.resize(u_nodes_);
    d_spec_.resize(u_nodes_);
    std::vector<std::vector<double>> g_ker(u_nodes_);
    for (int t = 0; t < u_nodes_; ++t) {
        const double off = gl_x_[t] * d_inv_ - static_cast<double>(node_cell_[t]);
        std::vector<double> ker(L_ker, 0.0), ker2(L_ker, 0.0);
        const double norm = std::pow(delta, a2p1_ - 1.0) / a2p1_;
        for (std::int64_t l = 0; l < L_ker; ++l) {
            const double hi = pow_p(static_cast<double>(l) + off, a2p1_);
            const double lo = pow_p(static_cast<double>(l) + off - 1.0, a2p1_);
            ker[l] = norm * (hi - lo);
            ker2[l] = ker[l] * ker[l];
        }
        g_ker[t] = ker;
        std::vector<double> padded(fft_m_, 0.0);
        std::copy(ker.begin(), ker.end(), padded.begin());
        s_spec_[t] = fft::rfft(padded);
        std::fill(padded.begin(), padded.end(), 0.0);
        std::copy(ker2.begin(), ker2.end(), padded.begin());
        d_spec_[t] = fft::rfft(padded);
    }

    // --- far-grid weight tables ---
    fbm_coarse_.assign(static_cast<std::size_t>(N_) * n_c, 0.0);
    s_coarse_.assign(static_cast<std::size_t>(N_) * u_nodes_ * n_c, 0.0);
    {
        const double p = a1p1_;
        for (std::int64_t i = 0; i < N_; ++i) {
            const double t0 = static_cast<double>(i), t1 = t0 + 1.0;
            for (std::size_t c = 0; c < n_c; ++c) {
                const double elo = coarse_edges_[c], ehi = coarse_edges_[c + 1];
                const double w = coarse_width_[c];
                const double A = std::pow(t1 + ehi, p + 1.0) - std::pow(t1 + elo, p + 1.0);
                const double B = std::pow(t0 + ehi, p + 1.0) - std::pow(t0 + elo, p + 1.0);
                fbm_coarse_[i * n_c + c] = (A - B) / (p * (p + 1.0) * w);
            }
            for (int t = 0; t < u_nodes_; ++t) {
                const double u = t0 + gl_x_[t];
                for (std::size_t c = 0; c < n_c; ++c) {
                    const double elo = coarse_edges_[c], ehi = coarse_edges_[c + 1];
                    const double w = coarse_width_[c];
                    s_coarse_[(i * u_nodes_ + t) * n_c + c] =
                        (std::pow(u + ehi, a2p1_) - std::pow(u + elo, a2p1_)) / (a2p1_ * w);
                }
            }
        }
    }

    // --- exact discrete-model variances at t = 1 (diagnostics) ---
    {
        const std::int64_t lags = (1 + std::llround(grid_.M)) * d_inv_;
        double v1 = 0.0;
        const double p = a1p1_;
        const double norm = 1.0 / (p * (p + 1.0) * delta);
        for (std::int64_t l = 0; l < lags; ++l) {
            const double A = pow_p(delta * static_cast<double>(l), p + 1.0);
            const double B = pow_p(delta * static_cast<double>(l - 1), p + 1.0);
            const double C = pow_p(delta * static_cast<double>(l - d_inv_), p + 1.0);
            const double D = pow_p(delta * static_cast<double>(l - d_inv_ - 1), p + 1.0);
            const double wv = norm * ((A - B) - (C - D));
            v1 += wv * wv * delta;
        }
        for (std::size_t c = 0; c < n_c; ++c) {
            const double wv = fbm_coarse_[c];
            v1 += wv * wv * coarse_width_[c];
        }
        calib_var1_ = c1_ * c1_ * v1;

        // Var = 2 c2^2 [ sum_{t,t'} w w' P(t,t')^2 - sum_j (K(j,j) w_j)^2 ],
        // P(t,t') = sum_j g_t(j) g_t'(j) w_j over fine and far cells of step 0
        const std::size_t fine0 = static_cast<std::size_t>((0 + std::llround(grid_.M)) * d_inv_);
        std::vector<std::vector<double>> gv(u_nodes_);
        for (int t = 0; t < u_nodes_; ++t) {
            auto& v = gv[t];
            v.assign(fine0 + d_inv_ + n_c, 0.0);
            // fine cells j = 0..fine0+cell(u): lag = node_cell + fine0... build directly
            const std::int64_t ju = std::llround(grid_.M) * d_inv_ + node_cell_[t];
            for (std::int64_t j = 0; j <= ju; ++j) {
                const std::int64_t lag = ju - j;
                if (lag < static_cast<std::int64_t>(g_ker[t].size()))
                    v[j] = g_ker[t][lag];
            }
            for (std::size_t c = 0; c < n_c; ++c)
                v[fine0 + d_inv_ + c] = s_coarse_[t * n_c + c];
        }
        auto cellw = [&](std::size_t j) {
            return j < fine0 + static_cast<std::size_t>(d_inv_)
                       ? delta
                       : coarse_width_[j - fine0 - static_cast<std::size_t>(d_inv_)];
        };
        double total = 0.0;
        for (int t = 0; t < u_nodes_; ++t) {
            for (int t2 = 0; t2 < u_nodes_; ++t2) {
                double P = 0.0;
                const std::size_t lim = gv[t].size();
                for (std::size_t j = 0; j < lim; ++j) P += gv[t][j] * gv[t2][j] * cellw(j);
                total += gl_w_[t] * gl_w_[t2] * P * P;
            }
        }
        double diag = 0.0;
        for (std::size_t j = 0; j < gv[0].size(); ++j) {
            double K = 0.0;
            for (int t = 0; t < u_nodes_; ++t) K += gl_w_[t] * gv[t][j] * gv[t][j];
            diag += K * K * cellw(j) * cellw(j);
        }
        calib_var2_ = 2.0 * c2_ * c2_ * (total - diag);
    }

    if (std::abs(calib_var1_ - 1.0) > 0.05 || std::abs(calib_var2_ - 1.0) > 0.05) {
        std::ostringstream os;
        os << "kernel grid too coarse: variance at t=1 is " << calib_var1_ << " / "
           << calib_var2_ << " (component 1 / 2)";
        throw grid_error(os.str());
    }
}

PathPair KernelPairGenerator::generate(std::uint64_t seed) const {
    const std::size_t n_c = coarse_width_.size();
    const double delta = grid_.delta;
    rng::GaussianStream g(seed);

    std::vector<double> xs(static_cast<std::size_t>(J_));
    g.fill(xs.data(), xs.size());
    std::vector<double> xc(n_c);
    g.fill(xc.data(), xc.size());
    // scale to Brownian increments
    std::vector<double> xs_d(xs.size());
    const double sqd = std::sqrt(delta);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        xs_d[j] = xs[j] * xs[j] * delta; // squared increments for the D term
        xs[j] *= sqd;
    }
    std::vector<double> xc_b(n_c);
    for (std::size_t c = 0; c < n_c; ++c) xc_b[c] = xc[c] * std::sqrt(coarse_width_[c]);

    auto conv_s = fft::convolve_with_spectrum(xs, fbm_spec_, fft_m_);

    PathPair pair;
    pair.coupling = Coupling::kernel_grid;
    auto& p1 = pair.component1;
    auto& p2 = pair.component2;
    p1.times.resize(N_ + 1);
    p1.values.resize(N_ + 1);
    p1.meta = {1, H1_, "kernel-grid"};
    p2.times.resize(N_ + 1);
    p2.values.resize(N_ + 1);
    p2.meta = {2, H2_, "kernel-grid"};

    const std::int64_t M_cells = std::llround(grid_.M) * d_inv_;
    std::vector<double> dB(N_), dR(N_, 0.0);
    for (std::int64_t i = 0; i < N_; ++i) {
        double v = conv_s[static_cast<std::size_t>(M_cells + (i + 1) * d_inv_)];
        const double* wrow = &fbm_coarse_[i * n_c];
        for (std::size_t c = 0; c < n_c; ++c) v += wrow[c] * xc_b[c];
        dB[i] = c1_ * v;
    }

    for (int t = 0; t < u_nodes_; ++t) {
        auto conv_a = fft::convolve_with_spectrum(xs, s_spec_[t], fft_m_);
        auto conv_b = fft::convolve_with_spectrum(xs_d, d_spec_[t], fft_m_);
        const double wt = gl_w_[t];
        for (std::int64_t i = 0; i < N_; ++i) {
            const std::size_t ju = static_cast<std::size_t>(M_cells + i * d_inv_ + node_cell_[t]);
            double S = conv_a[ju];
            double D = conv_b[ju];
            const double* srow = &s_coarse_[(i * u_nodes_ + t) * n_c];
            for (std::size_t c = 0; c < n_c; ++c) {
                const double gc = srow[c];
                S += gc * xc_b[c];
                D += gc * gc * xc[c] * xc[c] * coarse_width_[c];
            }
            dR[i] += wt * (S * S - D);
        }
    }

    p1.times[0] = p2.times[0] = 0.0;
    p1.values[0] = p2.values[0] = 0.0;
    double acc1 = 0.0, acc2 = 0.0;
    for (std::int64_t i = 0; i < N_; ++i) {
        acc1 += dB[i];
        acc2 += c2_ * dR[i];
        p1.times[i + 1] = p2.times[i + 1] = static_cast<double>(i + 1);
        p1.values[i + 1] = acc1;
        p2.values[i + 1] = acc2;
    }
    return pair;
}

// ---------------------------------------------------------------------------
// IndependentPairGenerator
// ---------------------------------------------------------------------------

IndependentPairGenerator::IndependentPairGenerator(int q, double H1, double H2, std::int64_t N,
                                                   std::int64_t n_inner, bool component1_only)
    : q_(q), N_(N), component1_only_(component1_only) {
    if (q < 1) throw std::domain_error("order q must be >= 1");
    if (q == 1) {
        fbm1_ = std::make_unique<FbmGenerator>(H1, N, 1.0);
    } else {
        herm1_ = std::make_unique<SingleHermiteGenerator>(q, H1, N, n_inner);
    }
    if (!component1_only_)
        herm2_ = std::make_unique<SingleHermiteGenerator>(q + 1, H2, N, n_inner);
}

PathPair IndependentPairGenerator::generate(std::uint64_t seed) const {
    PathPair pair;
    pair.coupling = Coupling::independent_drivers;
    const std::uint64_t s1 = rng::derive_stream(seed, 1);
    const std::uint64_t s2 = rng::derive_stream(seed, 2);
    pair.component1 = fbm1_ ? fbm1_->generate(s1) : herm1_->generate(s1);
    if (component1_only_) {
        // component 2 identically zero on the shared grid
        pair.component2.times = pair.component1.times;
        pair.component2.values.assign(pair.component1.values.size(), 0.0);
        pair.component2.meta = {q_ + 1, 0.75, "zero"};
    } else {
        pair.component2 = herm2_->generate(s2);
    }
    return pair;
}

// ---------------------------------------------------------------------------
// One-shot wrappers
// ---------------------------------------------------------------------------

PathPair simulate_pair_subordinated(int q, double H1, std::int64_t N, std::int64_t n_inner,
                                    std::uint64_t seed) {
    return SubordinatedPairGenerator(q, H1, N, n_inner).generate(seed);
}

SamplePath simulate_fbm(double H, std::int64_t N, double gamma, std::uint64_t seed) {
    return FbmGenerator(H, N, gamma).generate(seed);
}

PathPair simulate_pair_kernel(double H1, double H2, std::int64_t N, const GridSpec& grid,
                              std::uint64_t seed) {
    return KernelPairGenerator(H1, H2, N, grid).generate(seed);
}

PathPair simulate_pair_independent(int q, double H1, double H2, std::int64_t N, double gamma,
                                   std::uint64_t seed, std::int64_t n_inner) {
    auto pair = IndependentPairGenerator(q, H1, H2, N, n_inner).generate(seed);
    return rescale_selfsimilar(std::move(pair), gamma, H1, H2);
}

PathPair rescale_selfsimilar(PathPair pair, double gamma, double H1, double H2) {
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
    if (gamma == 1.0) return pair;
    const double f1 = std::pow(gamma, H1);
    const double f2 = std::pow(gamma, H2);
    for (auto& t : pair.component1.times) t *= gamma;
    for (auto& v : pair.component1.values) v *= f1;
    pair.component2.times = pair.component1.times;
    for (auto& v : pair.component2.values) v *= f2;
    return pair;
}

} // namespace hermqv::hermpath
