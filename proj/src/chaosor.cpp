#include "hermqv/chaosor.hpp"

#include "hermqv/errors.hpp"
#include "hermqv/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hermqv::chaosor {

using analytic::beta;
using analytic::PowerKernelF;

double hermite_poly(int n, double x) {
    if (n < 0 || n > 64) throw std::domain_error("hermite_poly: n must be in [0, 64]");
    if (n == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = x * p1 - (k - 1.0) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double factorial(int n) {
    return std::exp(std::lgamma(n + 1.0));
}

// I_{a+b}(e1^{(x)a} (x) e2^{(x)b}) evaluated at (W1, W2): He_a(W1) He_b(W2).
// A rank-one kernel in span{e1,e2} expands into these products.
double multi_integral_pure(int a, int b, double w1, double w2) {
    return hermite_poly(a, w1) * hermite_poly(b, w2);
}

// I_p(e1^{(x)r} (x) h^{(x)s}) with h = rho e1 + sq e2, p = r + s.
double multi_integral_mixed(int r, int s, double rho, double sq, double w1, double w2) {
    double acc = 0.0;
    for (int j = 0; j <= s; ++j)
        acc += binom(s, j) * std::pow(rho, j) * std::pow(sq, s - j) *
               multi_integral_pure(r + j, s - j, w1, w2);
    return acc;
}

} // namespace

double product_formula_check(int m, int n, double rho, int trials, std::uint64_t seed) {
    if (m < 0 || n < 0 || m > 6 || n > 6)
        throw std::domain_error("product_formula_check: m, n must be in [0, 6]");
    if (std::abs(rho) > 1.0 - 1e-10)
        throw std::domain_error("product_formula_check: basis ill-conditioned, |rho| too close to 1");
    const double sq = std::sqrt(1.0 - rho * rho);
    rng::GaussianStream g(seed);
    double max_dev = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double w1 = g();
        const double w2 = g();
        const double lhs =
            multi_integral_pure(m, 0, w1, w2) * multi_integral_mixed(0, n, rho, sq, w1, w2);
        double rhs = 0.0;
        const int kmax = std::min(m, n);
        for (int k = 0; k <= kmax; ++k) {
            // g^{(x)m} (x)_k h^{(x)n} = <g,h>^k g^{(x)(m-k)} (x) h^{(x)(n-k)}
            rhs += factorial(k) * binom(m, k) * binom(n, k) * std::pow(rho, k) *
                   multi_integral_mixed(m - k, n - k, rho, sq, w1, w2);
        }
        max_dev = std::max(max_dev, std::abs(lhs - rhs));
    }
    return max_dev;
}

double m_coefficient(int k, int q, double H1, double H2) {
    if (q < 1) throw std::domain_error("order q must be >= 1");
    if (k < 0 || k > q) throw std::domain_error("m_coefficient: k must be in [0, q]");
    return analytic::norm_constant(q, H1) * analytic::norm_constant(q + 1, H2) * factorial(k) *
           binom(q, k) * binom(q + 1, k);
}

namespace {

struct Sigma3Parts {
    double prefactor; // M(q,...)^2 beta(a2+1, -2a2-1)
    double alpha2;    // 2(1-H2)/(q+1)
    PowerKernelF F;   // [beta_tilde |U-V|^{-H1*}]^q
};

Sigma3Parts sigma3_parts(int q, double H1, double H2) {
    const auto e = analytic::exponents(q, H1, H2);
    if (!(q * e.H1_star < 1.0))
        throw std::domain_error("sigma3_exact: q H1*(q) must be < 1");
    const double a1 = -(0.5 + (1.0 - H1) / q);
    const double a2 = -(0.5 + (1.0 - H2) / (q + 1));
    Sigma3Parts p;
    p.alpha2 = 2.0 * (1.0 - H2) / (q + 1);
    // beta_tilde branch constants: beta(a1+1, H1*) above the diagonal (U<V),
    // beta(a2+1, H1*) below; -1-a1-a2 = H1*(q)
    p.F.b_upper = std::pow(beta(a1 + 1.0, e.H1_star), q);
    p.F.b_lower = std::pow(beta(a2 + 1.0, e.H1_star), q);
    p.F.kappa = q * e.H1_star;
    const double M = m_coefficient(q, q, H1, H2);
    p.prefactor = M * M * beta(a2 + 1.0, -2.0 * a2 - 1.0);
    return p;
}

} // namespace

double b_squared_limit(int q, double H1, double H2) {
    const auto p = sigma3_parts(q, H1, H2);
    return p.prefactor * analytic::riemann_limit(0.0, p.alpha2, p.F.integral());
}

double sigma3_exact(int q, double H1, double H2, std::int64_t N, double gamma) {
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (!(gamma > 0.0)) throw std::domain_error("gamma must be > 0");
    const auto p = sigma3_parts(q, H1, H2);
    const double gpow = std::pow(gamma, 2.0 * (H1 + H2));
    if (N > 512) {
        // Riemann-limit asymptote past the exact-summation cap
        return b_squared_limit(q, H1, H2) *
               std::pow(static_cast<double>(N), 2.0 - p.alpha2) * gpow;
    }
    const double sum = analytic::delta_sum(N, 0.0, p.alpha2, p.F);
    return p.prefactor * gpow * sum;
}

std::vector<RateBound> chaos_rate_bounds(int q, double H1, double H2) {
    std::vector<RateBound> rows;
    rows.reserve(q + 1);
    for (int k = 0; k <= q; ++k) {
        RateBound r;
        r.k = k;
        r.alpha = analytic::alpha_k(q, k, H1, H2);
        r.exponent = 2.0 - std::min(r.alpha, 1.0);
        r.log_flag = analytic::epsilon_flag(r.alpha);
        rows.push_back(r);
    }
    // the k = q term must strictly dominate every k < q term
    for (int k = 0; k < q; ++k) {
        if (!(rows[q].exponent > rows[k].exponent))
            throw std::logic_error("chaos_rate_bounds: k = q row fails to dominate");
    }
    return rows;
}

} // namespace hermqv::chaosor
