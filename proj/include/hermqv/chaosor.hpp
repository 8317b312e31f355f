#pragma once

#include "hermqv/analytic.hpp"

#include <cstdint>
#include <vector>

namespace hermqv::chaosor {

/// Probabilists' Hermite polynomial He_n(x); n <= 64.
double hermite_poly(int n, double x);

/// Exact-identity check of the product formula
///   I_m(g^{(x)m}) I_n(h^{(x)n}) =
///       sum_k k! C(m,k) C(n,k) I_{m+n-2k}(g^{(x)(m-k)} (x) h^{(x)(n-k)})
/// on the two-function family g = e1, h = rho e1 + sqrt(1-rho^2) e2 (unit
/// vectors after Gram-Schmidt), where every multiple integral of such a
/// tensor kernel evaluates exactly to products of Hermite polynomials in the
/// two coordinates. Returns the max absolute deviation over `trials` joint
/// Gaussian draws; it should sit at rounding level.
double product_formula_check(int m, int n, double rho, int trials, std::uint64_t seed);

/// M(k,q,H1,H2) = c(H1,q) c(H2,q+1) k! C(q,k) C(q+1,k).
double m_coefficient(int k, int q, double H1, double H2);

/// E[(V^{(3,q)}_N)^2], the exact second moment of the leading (first-chaos)
/// term of the cross sum, via the closed kernel reduction and the Delta(l)
/// quadrature. Exact for N <= 512; beyond that the Riemann-limit asymptote
/// b^2 N^{2-2(1-H2)/(q+1)} gamma^{2(H1+H2)} is substituted.
double sigma3_exact(int q, double H1, double H2, std::int64_t N, double gamma);

/// The limit constant b^2 = lim N^{-2+2(1-H2)/(q+1)} gamma^{-2(H1+H2)}
/// E[(V^{(3,q)}_N)^2], from the Riemann-sum limit.
double b_squared_limit(int q, double H1, double H2);

/// Per-contraction-order L2 growth bounds of the cross-sum chaos expansion:
/// ||V^{(3,k)}||^2 = O(N^{exponent} (log N)^{log_flag}); the k = q row is the
/// strict leader.
struct RateBound {
    int k;
    double alpha;
    double exponent; // 2 - min(alpha, 1)
    int log_flag;    // 1 iff alpha == 1
};
std::vector<RateBound> chaos_rate_bounds(int q, double H1, double H2);

} // namespace hermqv::chaosor
