#pragma once

#include <functional>
#include <vector>

namespace hermqv::quadrature {

using Fn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) on [a,b] to relative tolerance rel_tol.
/// Throws quadrature_error if the interval stack is exhausted.
double adaptive_gk(const Fn& f, double a, double b, double rel_tol = 1e-10,
                   double abs_tol = 1e-300);

/// A point where the integrand has an algebraic singularity |x-s|^{-exponent}
/// (exponent in [0,1); 0 marks a mere kink worth splitting at).
struct SingularPoint {
    double x;
    double exponent;
};

/// Integrand callback for integrate_singular. sing_index identifies which
/// singular point the current panel half is being regularized against (-1:
/// none), and dist is the exact |x - sing[sing_index].x| produced by the
/// substitution — use it instead of recomputing the difference, which would
/// cancel catastrophically near the singularity. Distances to all other
/// singular points are safe to compute naively (panels are split at every
/// singular point, so those are never approached).
using SingularIntegrand = std::function<double(double x, int sing_index, double dist)>;

/// Integrates f over [a,b], splitting at every singular point and applying
/// the power substitution dist = t^{1/(1-exponent)} toward each singular
/// panel endpoint.
double integrate_singular(const SingularIntegrand& f, double a, double b,
                          const std::vector<SingularPoint>& sing, double rel_tol = 1e-9);

/// Gauss-Legendre nodes/weights on [-1,1].
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

/// Gauss-Jacobi rule: sum w_i f(x_i) ~ int_{-1}^{1} (1-x)^a (1+x)^b f(x) dx,
/// a, b > -1. Cached per (n, a, b).
const GaussRule& gauss_jacobi(int n, double a, double b);

/// Gauss-Hermite rule for the probabilists' weight exp(-x^2/2)/sqrt(2 pi),
/// i.e. sum w_i f(x_i) ~ E[f(Z)] for Z standard normal.
const GaussRule& gauss_hermite_prob(int n);

} // namespace hermqv::quadrature
