#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hermqv::analytic {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Parameters of the order-q Hermite kernel (u-y)_+^a with
/// a = -(1/2 + (1-H)/q). Valid inputs give a in (-1,-1/2) and
/// 2a+1 = -2(1-H)/q in (-1,0).
struct KernelParams {
    int q;
    double H;
    double a;

    static KernelParams make(int q, double H);
};

enum class Dependence { dependent, independent };
enum class Coupling { subordinated, kernel_grid, independent_drivers };

/// The model under study: a pair of Hermite processes of orders (q, q+1)
/// with indices (H1, H2), either driven by one Wiener process (dependent)
/// or by independent copies.
struct PairSpec {
    int q = 1;
    double H1 = 0.7;
    double H2 = 0.7;
    Dependence dependence = Dependence::dependent;
    Coupling coupling = Coupling::subordinated;

    /// Throws std::domain_error naming the violated constraint.
    void validate() const;
};

/// Interspacing rule gamma_N = c * N^rho (rho = 0 for the fixed kind).
struct ScaleSchedule {
    enum class Kind { fixed, power };
    Kind kind = Kind::fixed;
    double c = 1.0;
    double rho = 0.0;

    static ScaleSchedule fixed(double c);
    static ScaleSchedule power(double c, double rho);
    void validate() const;
};

enum class Dominant { V1, V3, V2, boundary };
enum class Statistic { V, V1, V2, V3 };

struct LimitLaw {
    enum class Family { Gaussian, Rosenblatt, indeterminate };
    Family family = Family::indeterminate;
    double index = 0.0; // Rosenblatt self-similarity index, if applicable

    static LimitLaw gaussian() { return {Family::Gaussian, 0.0}; }
    static LimitLaw rosenblatt(double index) { return {Family::Rosenblatt, index}; }
    static LimitLaw indeterminate() { return {Family::indeterminate, 0.0}; }
};

/// sd growth sigma_N ~ const * N^exponent_N * gamma_N^exponent_gamma
/// * (log N)^{log_half_power/2}.
struct RateExponents {
    double exponent_N = 0.0;
    double exponent_gamma = 0.0;
    int log_half_power = 0;
};

struct RegimeReport {
    double nu1 = 0.0;
    double nu2 = 0.0;
    int delta = 0;
    double h1 = 0.0;
    Dominant dominant = Dominant::boundary;
    LimitLaw limit_law;
    RateExponents rate;
};

struct ExponentSet {
    double h1;
    int delta;
    double nu1;
    double nu2;
    double H1_star;
};

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Euler beta via log-gamma. Domain error unless x, y > 0.
double beta(double x, double y);

/// beta_tilde_{a,b}(u,v): beta(a+1, -1-a-b) for u < v, beta(b+1, -1-a-b) for
/// v < u. Requires a, b > -1, a+b < -1; u == v is a singular input.
double beta_tilde(double a, double b, double u, double v);

/// sup over (u,v) of beta_tilde, i.e. max of the two branch values.
double beta_tilde_sup(double a, double b);

/// Normalizing constant c(H,q) = (q! ||L_1||_2^2)^{-1/2} via the closed
/// reduction ||L_1||_2^2 = beta(a+1, -1-2a)^q / (H(2H-1)).
double norm_constant(int q, double H);

/// Stable |s+1|^p + |s-1|^p - 2|s|^p for s >= 0 (series for large s).
double power_second_diff(double p, double s);

// ---------------------------------------------------------------------------
// Exponent arithmetic and covariances
// ---------------------------------------------------------------------------

ExponentSet exponents(int q, double H1, double H2);

/// alpha(k) = 2(q-k)(1-H1)/q + 2(q+1-k)(1-H2)/(q+1); strictly decreasing in k.
double alpha_k(int q, int k, double H1, double H2);

/// Covariance of increments of any Hermite process with index H on the grid
/// t_k = k*gamma: gamma_{i,j} = (gamma^{2H}/2)(|s+1|^{2H}+|s-1|^{2H}-2|s|^{2H}),
/// s = i-j.
double increment_cov(double H, double gamma, std::int64_t i, std::int64_t j);
double increment_cov_lag(double H, double gamma, std::int64_t lag);

/// E[(V~(3)_N)^2] for independent components: sum_{i,j<N} of the product of
/// the two increment covariances. O(N) via stationarity; supported N <= 1e6.
double cross_variance_independent(double H1, double H2, double gamma, std::int64_t N);

/// Var(V_N) for fractional Brownian motion: 2 sum_{i,j} gamma_{i,j}(H)^2.
double fbm_qv_variance(double H, double gamma, std::int64_t N);

// ---------------------------------------------------------------------------
// Riemann-sum limits and the Delta(l) quadrature
// ---------------------------------------------------------------------------

/// 1 if alpha == 1, else 0.
int epsilon_flag(double alpha);

/// Limit of N^{alpha1+alpha2-2} sum_{i,j<N} Delta(i-j):
/// 2 gammaF^2 / ((1-a)(2-a)) with a = alpha1+alpha2 < 1 (domain error
/// otherwise; that regime is only bounded by N log^eps N).
double riemann_limit(double alpha1, double alpha2, double gammaF);

/// F(U,V) = b_upper |U-V|^{-kappa} on {U<V}, b_lower |U-V|^{-kappa} on {U>V}.
/// This is the integrand family appearing in the chaos-term variance; kappa
/// in [0,1).
struct PowerKernelF {
    double b_upper = 1.0;
    double b_lower = 1.0;
    double kappa = 0.0;

    static PowerKernelF constant(double b) { return {b, b, 0.0}; }
    /// integral over the unit square, (b_upper+b_lower)/((1-kappa)(2-kappa))
    double integral() const;
    /// moment mu_{j,k} = int U^j V^k F dU dV, in closed form
    double moment(int j, int k) const;
};

/// Delta(l) = int_{[0,1]^4} |U-U'+l|^{-a1} |V-V'+l|^{-a2} F(U,V) F(U',V').
/// |l| >= 2 uses an exact binomial-moment series; |l| <= 1 uses nested
/// singularity-split quadrature. Values sanity-checked against the
/// gammaF^2 (|l|+-1)^{-a1-a2} envelope for |l| >= 2.
double delta_ell(std::int64_t ell, double alpha1, double alpha2, const PowerKernelF& F);

/// sum_{i,j=0}^{N-1} Delta(i-j) = N [Delta(0) + 2 sum_{l<N} (1-l/N) Delta(l)].
double delta_sum(std::int64_t N, double alpha1, double alpha2, const PowerKernelF& F);

/// Precomputed Delta(l) values for l = 0..max_ell; immutable after
/// construction, so lookups are safe from any number of threads.
class DeltaTable {
public:
    DeltaTable(double alpha1, double alpha2, PowerKernelF F, std::int64_t max_ell);
    double operator()(std::int64_t ell) const;
    double gammaF() const { return gammaF_; }
    /// N [Delta(0) + 2 sum (1-l/N) Delta(l)] for N-1 <= max_ell
    double sum(std::int64_t N) const;

private:
    std::vector<double> values_;
    double gammaF_;
};

// ---------------------------------------------------------------------------
// Regime classification
// ---------------------------------------------------------------------------

/// Rate exponents of sigma of a given decomposition term (V uses the
/// dominant's rate, so call classify_regime for it instead).
RateExponents statistic_rate(int q, double H1, double H2, Statistic stat);

/// Limit law of a given decomposition term.
LimitLaw statistic_law(int q, double H1, double H2, Statistic stat);

RegimeReport classify_regime(const PairSpec& spec, const ScaleSchedule& schedule);

/// Zero-crossing curve of nu1 (dependent) or nu1+nu2 (independent) as a
/// function of H1; nullopt when the H2 solution leaves (1/2, 1).
std::optional<double> boundary_curve(int q, Dependence mode, double H1);

const char* to_string(Dominant d);
const char* to_string(LimitLaw::Family f);
const char* to_string(Dependence d);
const char* to_string(Coupling c);
const char* to_string(Statistic s);

} // namespace hermqv::analytic
