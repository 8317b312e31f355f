#include "hermqv/analytic.hpp"
#include "hermqv/errors.hpp"
#include "hermqv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

// Delta(l) = int_{[0,1]^4} |U-U'+l|^{-a1} |V-V'+l|^{-a2} F(U,V) F(U',V').
//
// Two evaluation routes:
//  * |l| >= 2: the shifted factors are analytic on the cube, so expanding
//    (l+w)^{-a} binomially in w = U-U' reduces Delta(l) to the correlation
//    moments C_{m,n} = int (U-U')^m (V-V')^n F F', which in turn reduce to
//    closed-form monomial moments of F. The series converges geometrically
//    with ratio 1/l.
//  * |l| <= 1: dimension reduction through the autocorrelation
//    Phi(w,z) = int F(U,V) F(U-w,V-z) dU dV, which for the power-kernel
//    family collapses to a 1-d integral; Delta is then a 2-d integral of
//    A(w) B(z) Phi(w,z) with all singular points known explicitly.

namespace hermqv::analytic {

double PowerKernelF::integral() const {
    return (b_upper + b_lower) / ((1.0 - kappa) * (2.0 - kappa));
}

double PowerKernelF::moment(int j, int k) const {
    // int_0^V (V-x)^j x^{-kappa} dx = V^{j+1-kappa} B(1-kappa, j+1)
    const double bj = beta(1.0 - kappa, j + 1.0);
    const double bk = beta(1.0 - kappa, k + 1.0);
    return (b_upper * bj + b_lower * bk) / (j + k + 2.0 - kappa);
}

namespace {

struct SeriesCtx {
    double alpha1, alpha2;
    PowerKernelF F;
    int max_order;                      // per-variable cap on m, n
    std::vector<std::vector<double>> C; // correlation moments C[m][n]
    std::vector<double> am, bn;         // binom(-alpha1, m), binom(-alpha2, n)

    SeriesCtx(double a1, double a2, const PowerKernelF& f, int cap = 72)
        : alpha1(a1), alpha2(a2), F(f), max_order(cap) {
        const int M = max_order;
        std::vector<std::vector<double>> mu(M + 1, std::vector<double>(M + 1));
        for (int j = 0; j <= M; ++j)
            for (int k = 0; k <= M; ++k) mu[j][k] = F.moment(j, k);
        // Pascal triangle in doubles
        std::vector<std::vector<double>> ch(M + 1, std::vector<double>(M + 1, 0.0));
        for (int m = 0; m <= M; ++m) {
            ch[m][0] = 1.0;
            for (int j = 1; j <= m; ++j)
                ch[m][j] = (j == m) ? 1.0 : ch[m - 1][j - 1] + ch[m - 1][j];
        }
        C.assign(M + 1, std::vector<double>(M + 1, 0.0));
        for (int m = 0; m <= M; ++m) {
            for (int n = 0; n <= M; ++n) {
                double s = 0.0;
                for (int j = 0; j <= m; ++j) {
                    const double sj = ((m - j) % 2 == 0) ? 1.0 : -1.0;
                    for (int k = 0; k <= n; ++k) {
                        const double sk = ((n - k) % 2 == 0) ? 1.0 : -1.0;
                        s += sj * sk * ch[m][j] * ch[n][k] * mu[j][k] * mu[m - j][n - k];
                    }
                }
                C[m][n] = s;
            }
        }
        am.resize(M + 1);
        bn.resize(M + 1);
        am[0] = bn[0] = 1.0;
        for (int m = 1; m <= M; ++m) {
            am[m] = am[m - 1] * (-alpha1 - m + 1.0) / m;
            bn[m] = bn[m - 1] * (-alpha2 - m + 1.0) / m;
        }
    }

    double eval(std::int64_t ell) const {
        const double invl = 1.0 / static_cast<double>(ell);
        double total = 0.0;
        double lpow = 1.0; // invl^d
        int quiet = 0;
        for (int d = 0; d <= 2 * max_order; ++d) {
            double diag = 0.0;
            const int m_lo = std::max(0, d - max_order);
            const int m_hi = std::min(d, max_order);
            for (int m = m_lo; m <= m_hi; ++m) diag += am[m] * bn[d - m] * C[m][d - m];
            total += diag * lpow;
            lpow *= invl;
            if (std::abs(diag) < 1e-15 * std::abs(total)) {
                if (++quiet >= 3) break;
            } else {
                quiet = 0;
            }
        }
        return std::pow(static_cast<double>(ell), -alpha1 - alpha2) * total;
    }
};

// Geometric panel ladder outward from a pair of nearby singular points at
// lo_pt < hi_pt: bounds the per-panel variation of the factor anchored at
// the neighbour, so fixed-order panels converge.
void add_ladder(std::vector<quadrature::SingularPoint>& sing, double lo_pt, double hi_pt,
                double reach_lo, double reach_hi) {
    const double d = hi_pt - lo_pt;
    if (!(d > 0.0) || d > 0.25) return;
    int rungs = 0;
    for (double step = d; step <= 0.5 && rungs < 90; step *= 2.0, ++rungs) {
        const double c = hi_pt + step;
        if (c >= reach_hi) break;
        sing.push_back({c, 0.0});
    }
    rungs = 0;
    for (double step = d; step <= 0.5 && rungs < 90; step *= 2.0, ++rungs) {
        const double c = lo_pt - step;
        if (c <= reach_lo) break;
        sing.push_back({c, 0.0});
    }
}

// Autocorrelation Phi(w,z) of the power kernel over the unit square,
// reduced to one dimension along x = U - V. The separation d = w - z is
// passed in so callers near the ridge can supply it exactly. Evaluated on
// fixed Gauss-Jacobi panels (endpoint singularities absorbed into the
// weights; ladder panels bound the neighbour factor's variation), since this
// sits in the innermost loop of the 4-d quadrature.
double phi_autocorr_at(double w, double z, double d, const PowerKernelF& F) {
    const double x_lo = std::max(0.0, w) - std::min(1.0, 1.0 + z);
    const double x_hi = std::min(1.0, 1.0 + w) - std::max(0.0, z);
    if (x_lo >= x_hi) return 0.0;
    const double kappa = F.kappa;
    if (d == 0.0 && 2.0 * kappa >= 1.0)
        throw quadrature_error("phi_autocorr: divergent at coincident singular points");

    std::vector<double> cuts{x_lo, x_hi};
    auto push = [&](double c) {
        if (c > x_lo && c < x_hi) cuts.push_back(c);
    };
    push(0.0);
    push(d);
    push(std::max(0.0, w) - std::max(0.0, z));           // kink of the overlap length
    push(std::min(1.0, 1.0 + w) - std::min(1.0, 1.0 + z)); // second kink
    // geometric ladder outward from the singular pair
    const double pr_lo = std::min(0.0, d), pr_hi = std::max(0.0, d);
    const double gap = pr_hi - pr_lo;
    if (gap > 0.0 && gap <= 0.25) {
        for (double step = gap; step <= 1.0; step *= 4.0) {
            push(pr_hi + step);
            push(pr_lo - step);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto exp_at = [&](double x) {
        double e = 0.0;
        if (x == 0.0) e += kappa;
        if (x == d) e += kappa;
        return std::min(e, 0.97);
    };
    auto bsel = [&](double t) { return t < 0.0 ? F.b_upper : F.b_lower; };

    const auto& plain = quadrature::gauss_jacobi(24, 0.0, 0.0);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double lo = cuts[c], hi = cuts[c + 1];
        const double k_lo = exp_at(lo), k_hi = exp_at(hi);
        const auto& rule = (k_lo == 0.0 && k_hi == 0.0)
                               ? plain
                               : quadrature::gauss_jacobi(24, -k_hi, -k_lo);
        const double h = 0.5 * (hi - lo);
        const double m = 0.5 * (hi + lo);
        const double scale = std::pow(h, 1.0 - k_lo - k_hi);
        const double b_pair = bsel(m) * bsel(m - d);
        const bool absorb_zero = (lo == 0.0 || hi == 0.0);
        const bool absorb_d = (lo == d || hi == d);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double x = m + h * rule.x[i];
            const double t_lo = std::max(std::max(0.0, z), std::max(0.0, w) - x);
            const double t_hi = std::min(std::min(1.0, 1.0 + z), std::min(1.0, 1.0 + w) - x);
            const double T = t_hi - t_lo;
            if (T <= 0.0) continue;
            double r = T * b_pair;
            if (kappa != 0.0) {
                if (!absorb_zero) r *= std::pow(std::abs(x), -kappa);
                if (!absorb_d) r *= std::pow(std::abs(x - d), -kappa);
            }
            acc += rule.w[i] * r;
        }
        total += scale * acc;
    }
    return total;
}

// Phi with a floor on |d|: below it, either the d -> 0 limit applies
// (2 kappa < 1, Phi continuous) or Phi follows its |d|^{1-2 kappa} blowup.
double phi_autocorr(double w, double z, double d, const PowerKernelF& F) {
    constexpr double d_floor = 1e-10;
    if (d == 0.0 || std::abs(d) >= d_floor) return phi_autocorr_at(w, z, d, F);
    const double d0 = std::copysign(d_floor, d);
    const double base = phi_autocorr_at(w, w - d0, d0, F);
    if (2.0 * F.kappa <= 1.0) return base;
    return base * std::pow(std::abs(d) / d_floor, 1.0 - 2.0 * F.kappa);
}

// Separable fast path for alpha1 = 0 (the leading-chaos-term case): the
// (U,U') integrals collapse into phi(V) = int_0^1 F(U,V) dU in closed form,
// leaving a 2-d integral with one singular line V' = V + l.
double delta_near_separable(std::int64_t ell, double a2, const PowerKernelF& F) {
    const double k = F.kappa;
    const double l = static_cast<double>(ell);
    auto phiV = [&](double v) {
        return (F.b_upper * std::pow(v, 1.0 - k) + F.b_lower * std::pow(1.0 - v, 1.0 - k)) /
               (1.0 - k);
    };
    if (a2 == 0.0) {
        const double g = F.integral();
        return g * g;
    }
    auto inner = [&](double V) {
        const double s = V + l; // singular V'
        return quadrature::integrate_singular(
            [&](double Vp, int idx, double dist) {
                const double sep = idx == 0 ? dist : std::abs(Vp - s);
                return std::pow(sep, -a2) * phiV(Vp);
            },
            0.0, 1.0, {{s, a2}}, 1e-8);
    };
    return quadrature::integrate_singular(
        [&](double V, int, double) { return phiV(V) * inner(V); }, 0.0, 1.0,
        {{std::clamp(1.0 - l, 0.0, 1.0), 0.0}}, 1e-7);
}

// Nested quadrature for |l| <= 1. Singular points: w = -l (exponent alpha1),
// z = -l (alpha2), and the ridge z = w where Phi behaves like
// |w-z|^{1-2 kappa}.
double delta_near(std::int64_t ell, double a1, double a2, const PowerKernelF& F) {
    if (a1 == 0.0) return delta_near_separable(ell, a2, F);
    const double l = static_cast<double>(ell);
    const double ridge_exp = F.kappa > 0.0
                                 ? std::min(0.95, std::max(0.3, 2.0 * F.kappa - 1.0))
                                 : 0.0;
    auto inner = [&](double w) {
        auto g = [&](double z, int idx, double dist) {
            // idx 1 regularizes the ridge: |w - z| = dist exactly
            const double d = idx == 1 ? std::copysign(dist, w - z) : w - z;
            double val = phi_autocorr(w, z, d, F);
            if (val == 0.0) return 0.0;
            if (a2 != 0.0) val *= std::pow(idx == 0 ? dist : std::abs(z + l), -a2);
            return val;
        };
        std::vector<quadrature::SingularPoint> sing{{-l, a2}, {w, ridge_exp}};
        add_ladder(sing, std::min(-l, w), std::max(-l, w), -1.0, 1.0);
        return quadrature::integrate_singular(g, -1.0, 1.0, sing, 1e-6);
    };
    auto outer = [&](double w, int idx, double dist) {
        double val = inner(w);
        if (a1 != 0.0) val *= std::pow(idx == 0 ? dist : std::abs(w + l), -a1);
        return val;
    };
    return quadrature::integrate_singular(outer, -1.0, 1.0, {{-l, a1}}, 1e-5);
}

void check_envelope(std::int64_t ell, double a1, double a2, const PowerKernelF& F, double val) {
    const double g2 = F.integral() * F.integral();
    const double a = a1 + a2;
    const double lo = g2 * std::pow(static_cast<double>(ell + 1), -a);
    const double hi = g2 * std::pow(static_cast<double>(ell - 1), -a);
    if (val < lo * (1.0 - 1e-8) || val > hi * (1.0 + 1e-8))
        throw quadrature_error("delta_ell: value escapes the (l+-1)^{-a} envelope");
}

void check_params(double a1, double a2, const PowerKernelF& F) {
    if (!(a1 >= 0.0 && a1 < 1.0 && a2 >= 0.0 && a2 < 1.0))
        throw std::domain_error("delta_ell: alpha1, alpha2 must lie in [0,1)");
    if (!(F.kappa >= 0.0 && F.kappa < 1.0))
        throw std::domain_error("delta_ell: kappa must lie in [0,1)");
    if (!(F.b_upper >= 0.0 && F.b_lower >= 0.0) || F.b_upper + F.b_lower <= 0.0)
        throw std::domain_error("delta_ell: F must be nonnegative and nontrivial");
}

} // namespace

double delta_ell(std::int64_t ell, double alpha1, double alpha2, const PowerKernelF& F) {
    check_params(alpha1, alpha2, F);
    if (ell < 0) ell = -ell; // Delta(-l) = Delta(l) by the (U,V) <-> (U',V') swap
    if (ell <= 1) return delta_near(ell, alpha1, alpha2, F);
    SeriesCtx ctx(alpha1, alpha2, F);
    const double val = ctx.eval(ell);
    check_envelope(ell, alpha1, alpha2, F, val);
    return val;
}

DeltaTable::DeltaTable(double alpha1, double alpha2, PowerKernelF F, std::int64_t max_ell) {
    check_params(alpha1, alpha2, F);
    gammaF_ = F.integral();
    values_.resize(static_cast<std::size_t>(max_ell) + 1);
    SeriesCtx ctx(alpha1, alpha2, F);
    for (std::int64_t l = 0; l <= max_ell; ++l) {
        if (l <= 1) {
            values_[l] = delta_near(l, alpha1, alpha2, F);
        } else {
            values_[l] = ctx.eval(l);
            check_envelope(l, alpha1, alpha2, F, values_[l]);
        }
    }
}

double DeltaTable::operator()(std::int64_t ell) const {
    if (ell < 0) ell = -ell;
    if (static_cast<std::size_t>(ell) >= values_.size())
        throw std::out_of_range("DeltaTable: lag beyond table");
    return values_[ell];
}

double DeltaTable::sum(std::int64_t N) const {
    if (N < 1 || static_cast<std::size_t>(N) > values_.size())
        throw std::out_of_range("DeltaTable::sum: N beyond table");
    double acc = values_[0];
    double c = 0.0;
    for (std::int64_t l = 1; l < N; ++l) {
        const double y =
            2.0 * (1.0 - static_cast<double>(l) / static_cast<double>(N)) * values_[l] - c;
        const double t = acc + y;
        c = (t - acc) - y;
        acc = t;
    }
    return static_cast<double>(N) * acc;
}

double delta_sum(std::int64_t N, double alpha1, double alpha2, const PowerKernelF& F) {
    DeltaTable table(alpha1, alpha2, F, N > 0 ? N - 1 : 0);
    return table.sum(N);
}

} // namespace hermqv::analytic
