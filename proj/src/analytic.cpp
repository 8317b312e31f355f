#include "hermqv/analytic.hpp"

#include "hermqv/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hermqv::analytic {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

void require_order(int q) {
    require(q >= 1, "order q must be >= 1");
}

void require_index(double H, const char* name) {
    if (!(H > 0.5 && H < 1.0)) {
        std::ostringstream os;
        os << name << " = " << H << " outside (1/2, 1)";
        throw std::domain_error(os.str());
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

KernelParams KernelParams::make(int q, double H) {
    require_order(q);
    require_index(H, "H");
    KernelParams kp{q, H, -(0.5 + (1.0 - H) / q)};
    // follows from the ranges above; cheap to assert
    require(kp.a > -1.0 && kp.a < -0.5, "kernel exponent a outside (-1,-1/2)");
    const double two_a_plus_1 = 2.0 * kp.a + 1.0;
    require(two_a_plus_1 > -1.0 && two_a_plus_1 < 0.0, "2a+1 outside (-1,0)");
    return kp;
}

void PairSpec::validate() const {
    require_order(q);
    require_index(H1, "H1");
    require_index(H2, "H2");
    switch (coupling) {
        case Coupling::subordinated: {
            require(dependence == Dependence::dependent,
                    "subordinated coupling requires dependence = dependent");
            const double target = 1.0 - (q + 1) * (1.0 - H1) / q;
            require(std::abs(H2 - target) <= 1e-12,
                    "subordinated coupling requires H2 = 1-(q+1)(1-H1)/q");
            require(H2 > 0.5, "subordinated coupling requires H2 > 1/2");
            break;
        }
        case Coupling::kernel_grid:
            require(dependence == Dependence::dependent,
                    "kernel-grid coupling requires dependence = dependent");
            require(q == 1, "kernel-grid coupling is supported for q = 1 only");
            break;
        case Coupling::independent_drivers:
            require(dependence == Dependence::independent,
                    "independent-drivers coupling requires dependence = independent");
            break;
    }
}

ScaleSchedule ScaleSchedule::fixed(double c) {
    ScaleSchedule s{Kind::fixed, c, 0.0};
    s.validate();
    return s;
}

ScaleSchedule ScaleSchedule::power(double c, double rho) {
    ScaleSchedule s{Kind::power, c, rho};
    s.validate();
    return s;
}

void ScaleSchedule::validate() const {
    require(c > 0.0, "schedule constant c must be > 0");
    if (kind == Kind::fixed) require(rho == 0.0, "fixed schedule has rho = 0");
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

double beta(double x, double y) {
    require(x > 0.0 && y > 0.0, "beta(x,y) requires x > 0 and y > 0");
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double beta_tilde(double a, double b, double u, double v) {
    require(a > -1.0 && b > -1.0, "beta_tilde requires a, b > -1");
    require(a + b < -1.0, "beta_tilde requires a + b < -1");
    if (u == v) throw std::invalid_argument("beta_tilde: u = v is singular");
    return u < v ? beta(a + 1.0, -1.0 - a - b) : beta(b + 1.0, -1.0 - a - b);
}

double beta_tilde_sup(double a, double b) {
    require(a > -1.0 && b > -1.0, "beta_tilde requires a, b > -1");
    require(a + b < -1.0, "beta_tilde requires a + b < -1");
    return std::max(beta(a + 1.0, -1.0 - a - b), beta(b + 1.0, -1.0 - a - b));
}

double norm_constant(int q, double H) {
    const KernelParams kp = KernelParams::make(q, H);
    const double b = beta(kp.a + 1.0, -1.0 - 2.0 * kp.a);
    const double norm2 = std::pow(b, q) / (H * (2.0 * H - 1.0));
    return 1.0 / std::sqrt(std::exp(std::lgamma(q + 1.0)) * norm2);
}

double power_second_diff(double p, double s) {
    if (s < 0.0) s = -s;
    if (s < 8.0) {
        return std::pow(std::abs(s + 1.0), p) + std::pow(std::abs(s - 1.0), p) -
               2.0 * std::pow(s, p);
    }
    // s^p [(1+x)^p + (1-x)^p - 2], x = 1/s: even binomial series, no
    // cancellation between the large terms
    const double x2 = 1.0 / (s * s);
    double coef = p * (p - 1.0) / 2.0; // binom(p,2)
    double term = coef * x2;
    double sum = term;
    double xpow = x2;
    for (int j = 2; j <= 16; ++j) {
        coef *= (p - 2.0 * j + 2.0) * (p - 2.0 * j + 1.0) / ((2.0 * j - 1.0) * (2.0 * j));
        xpow *= x2;
        term = coef * xpow;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return 2.0 * std::pow(s, p) * sum;
}

// ---------------------------------------------------------------------------
// Exponent arithmetic and covariances
// ---------------------------------------------------------------------------

ExponentSet exponents(int q, double H1, double H2) {
    require_order(q);
    require_index(H1, "H1");
    require_index(H2, "H2");
    ExponentSet e;
    e.h1 = std::max(0.5, 1.0 - 2.0 * (1.0 - H1) / q);
    e.delta = (q == 1 && H1 == 0.75) ? 1 : 0;
    e.nu2 = (1.0 - H2) / (1.0 + q);
    e.nu1 = e.nu2 - 1.0 + e.h1;
    e.H1_star = (1.0 - H1) / q + (1.0 - H2) / (q + 1);
    if (!(e.nu1 < e.nu2)) throw std::logic_error("exponents: nu1 < nu2 violated");
    return e;
}

double alpha_k(int q, int k, double H1, double H2) {
    require_order(q);
    require_index(H1, "H1");
    require_index(H2, "H2");
    require(k >= 0 && k <= q, "alpha_k requires 0 <= k <= q");
    return 2.0 * (q - k) * (1.0 - H1) / q + 2.0 * (q + 1 - k) * (1.0 - H2) / (q + 1);
}

double increment_cov_lag(double H, double gamma, std::int64_t lag) {
    require_index(H, "H");
    require(gamma > 0.0, "gamma must be > 0");
    const double s = static_cast<double>(lag < 0 ? -lag : lag);
    return 0.5 * std::pow(gamma, 2.0 * H) * power_second_diff(2.0 * H, s);
}

double increment_cov(double H, double gamma, std::int64_t i, std::int64_t j) {
    require(i >= 0 && j >= 0, "increment_cov requires i, j >= 0");
    return increment_cov_lag(H, gamma, i - j);
}

namespace {

constexpr std::int64_t kMaxDoubleSumN = 1000000;

// sum_{i,j=0}^{N-1} f(i-j) = N f(0) + 2 sum_{s=1}^{N-1} (N-s) f(s), with
// compensated accumulation (the summands span many orders of magnitude).
template <typename F>
double stationary_double_sum(std::int64_t N, F&& f) {
    double sum = static_cast<double>(N) * f(0);
    double c = 0.0;
    for (std::int64_t s = 1; s < N; ++s) {
        double y = 2.0 * static_cast<double>(N - s) * f(s) - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace

double cross_variance_independent(double H1, double H2, double gamma, std::int64_t N) {
    require(N >= 1, "N must be >= 1");
    require(N <= kMaxDoubleSumN, "N <= 1e6 supported");
    return stationary_double_sum(N, [&](std::int64_t s) {
        return increment_cov_lag(H1, gamma, s) * increment_cov_lag(H2, gamma, s);
    });
}

double fbm_qv_variance(double H, double gamma, std::int64_t N) {
    require(N >= 1, "N must be >= 1");
    require(N <= kMaxDoubleSumN, "N <= 1e6 supported");
    return 2.0 * stationary_double_sum(N, [&](std::int64_t s) {
        const double g = increment_cov_lag(H, gamma, s);
        return g * g;
    });
}

// ---------------------------------------------------------------------------
// Riemann-sum limit
// ---------------------------------------------------------------------------

int epsilon_flag(double alpha) {
    return alpha == 1.0 ? 1 : 0;
}

double riemann_limit(double alpha1, double alpha2, double gammaF) {
    require(alpha1 >= 0.0 && alpha1 < 1.0 && alpha2 >= 0.0 && alpha2 < 1.0,
            "riemann_limit requires alpha1, alpha2 in [0,1)");
    require(gammaF > 0.0, "gammaF must be > 0");
    const double a = alpha1 + alpha2;
    require(a < 1.0,
            "riemann_limit requires alpha1+alpha2 < 1 (the >= 1 regime is only "
            "O(N log^eps N) bounded; see epsilon_flag)");
    return 2.0 * gammaF * gammaF / ((1.0 - a) * (2.0 - a));
}

// ---------------------------------------------------------------------------
// Regime classification
// ---------------------------------------------------------------------------

RateExponents statistic_rate(int q, double H1, double H2, Statistic stat) {
    const ExponentSet e = exponents(q, H1, H2);
    switch (stat) {
        case Statistic::V1:
            return {e.h1, 2.0 * H1, e.delta};
        case Statistic::V2:
            return {1.0 - 2.0 * (1.0 - H2) / (q + 1), 2.0 * H2, 0};
        case Statistic::V3:
            return {1.0 - (1.0 - H2) / (q + 1), H1 + H2, 0};
        case Statistic::V:
            throw std::invalid_argument(
                "statistic_rate: V follows the dominant term; use classify_regime");
    }
    throw std::logic_error("unreachable");
}

LimitLaw statistic_law(int q, double H1, double H2, Statistic stat) {
    require_order(q);
    require_index(H1, "H1");
    require_index(H2, "H2");
    switch (stat) {
        case Statistic::V1:
            if (q == 1 && H1 <= 0.75) return LimitLaw::gaussian();
            return LimitLaw::rosenblatt(1.0 - 2.0 * (1.0 - H1) / q);
        case Statistic::V2:
            return LimitLaw::rosenblatt(1.0 - 2.0 * (1.0 - H2) / (q + 1));
        case Statistic::V3:
            return LimitLaw::gaussian();
        case Statistic::V:
            throw std::invalid_argument(
                "statistic_law: V follows the dominant term; use classify_regime");
    }
    throw std::logic_error("unreachable");
}

RegimeReport classify_regime(const PairSpec& spec, const ScaleSchedule& schedule) {
    spec.validate();
    schedule.validate();

    const ExponentSet e = exponents(spec.q, spec.H1, spec.H2);
    RegimeReport rep;
    rep.nu1 = e.nu1;
    rep.nu2 = e.nu2;
    rep.delta = e.delta;
    rep.h1 = e.h1;

    // For power-law schedules gamma_N^{H2-H1} vs N^{nu} reduces to comparing
    // exponents of N; the constant c drops out.
    const double rho = schedule.kind == ScaleSchedule::Kind::fixed ? 0.0 : schedule.rho;

    if (spec.dependence == Dependence::dependent) {
        const double x = rho * (spec.H2 - spec.H1);
        if (x < e.nu1 || (x == e.nu1 && e.delta == 1)) {
            rep.dominant = Dominant::V1;
            rep.limit_law = statistic_law(spec.q, spec.H1, spec.H2, Statistic::V1);
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V1);
        } else if (x > e.nu1 && x < e.nu2) {
            rep.dominant = Dominant::V3;
            rep.limit_law = statistic_law(spec.q, spec.H1, spec.H2, Statistic::V3);
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V3);
        } else if (x > e.nu2) {
            rep.dominant = Dominant::V2;
            rep.limit_law = statistic_law(spec.q, spec.H1, spec.H2, Statistic::V2);
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V2);
        } else {
            // exact exponent equality with no log factor to break the tie
            rep.dominant = Dominant::boundary;
            rep.limit_law = LimitLaw::indeterminate();
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V3);
        }
    } else {
        const double x = 2.0 * rho * (spec.H2 - spec.H1);
        const double threshold = e.nu1 + e.nu2;
        if (x < threshold || (x == threshold && e.delta == 1)) {
            rep.dominant = Dominant::V1;
            rep.limit_law = statistic_law(spec.q, spec.H1, spec.H2, Statistic::V1);
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V1);
        } else if (x > threshold) {
            rep.dominant = Dominant::V2;
            rep.limit_law = statistic_law(spec.q, spec.H1, spec.H2, Statistic::V2);
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V2);
        } else {
            rep.dominant = Dominant::boundary;
            rep.limit_law = LimitLaw::indeterminate();
            rep.rate = statistic_rate(spec.q, spec.H1, spec.H2, Statistic::V1);
        }
    }
    return rep;
}

std::optional<double> boundary_curve(int q, Dependence mode, double H1) {
    require_order(q);
    require_index(H1, "H1");
    const double factor = mode == Dependence::dependent ? 2.0 : 1.0;
    const double H2 = 1.0 - factor * (q + 1) * (1.0 - H1) / q;
    if (H2 <= 0.5 || H2 >= 1.0) return std::nullopt;
    return H2;
}

const char* to_string(Dominant d) {
    switch (d) {
        case Dominant::V1: return "V1";
        case Dominant::V2: return "V2";
        case Dominant::V3: return "V3";
        case Dominant::boundary: return "boundary";
    }
    return "?";
}

const char* to_string(LimitLaw::Family f) {
    switch (f) {
        case LimitLaw::Family::Gaussian: return "Gaussian";
        case LimitLaw::Family::Rosenblatt: return "Rosenblatt";
        case LimitLaw::Family::indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(Dependence d) {
    return d == Dependence::dependent ? "dependent" : "independent";
}

const char* to_string(Coupling c) {
    switch (c) {
        case Coupling::subordinated: return "subordinated";
        case Coupling::kernel_grid: return "kernel-grid";
        case Coupling::independent_drivers: return "independent-drivers";
    }
    return "?";
}

const char* to_string(Statistic s) {
    switch (s) {
        case Statistic::V: return "V";
        case Statistic::V1: return "V1";
        case Statistic::V2: return "V2";
        case Statistic::V3: return "V3";
    }
    return "?";
}

} // namespace hermqv::analytic
