#include "hermqv/quadrature.hpp"

#include "hermqv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace hermqv::quadrature {

namespace {

// G7/K15 nodes: {node, gauss weight, kronrod weight}
constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

double gk15(const Fn& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kGK[0][1] * y0;
    double k15 = kGK[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kGK[i][1] * yi;
        k15 += kGK[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    if (!std::isfinite(k15) || !std::isfinite(g7)) {
        err = HUGE_VAL;
        return 0.0;
    }
    // scale-invariant sharpened error estimate (quadpack-style)
    const double scale = std::max(std::abs(k15), 1e-300);
    const double ratio = std::min(200.0 * std::abs(g7 - k15) / scale, 1e6);
    err = scale * std::pow(ratio, 1.5);
    return k15;
}

} // namespace

double adaptive_gk(const Fn& f, double a, double b, double rel_tol, double abs_tol) {
    if (a == b) return 0.0;
    struct Seg {
        double a, b, val, err;
    };
    std::vector<Seg> stack;
    double err0;
    double v0 = gk15(f, a, b, err0);
    stack.push_back({a, b, v0, err0});
    double total = v0;
    double total_err = err0;
    const int max_segs = 4000;
    int n_segs = 1;
    while (!(total_err <= std::max(rel_tol * std::abs(total), abs_tol))) {
        auto worst = std::max_element(stack.begin(), stack.end(),
                                      [](const Seg& x, const Seg& y) { return x.err < y.err; });
        if (worst == stack.end() || n_segs >= max_segs)
            throw quadrature_error("adaptive_gk: refinement did not stabilize");
        Seg s = *worst;
        stack.erase(worst);
        double m = 0.5 * (s.a + s.b);
        if (m <= s.a || m >= s.b) {
            if (!std::isfinite(s.val))
                throw quadrature_error("adaptive_gk: integrand not finite at rounding limit");
            stack.push_back({s.a, s.b, s.val, 0.0});
            total_err -= s.err;
            continue;
        }
        double e1, e2;
        double v1 = gk15(f, s.a, m, e1);
        double v2 = gk15(f, m, s.b, e2);
        stack.push_back({s.a, m, v1, e1});
        stack.push_back({m, s.b, v2, e2});
        total += v1 + v2 - s.val;
        total_err += e1 + e2 - s.err;
        ++n_segs;
    }
    // re-sum in interval order for reproducibility
    std::sort(stack.begin(), stack.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    double sum = 0.0, c = 0.0;
    for (const auto& s : stack) {
        double y = s.val - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

namespace {

// One panel [lo, hi] whose endpoints may carry singular points (identified
// by index into the caller's list, -1 when clean). Each half is regularized
// toward its own end.
double panel_singular(const SingularIntegrand& f, double lo, double hi, int i_lo, double k_lo,
                      int i_hi, double k_hi, double rel_tol) {
    const double mid = 0.5 * (lo + hi);
    double left, right;
    if (i_lo >= 0 && k_lo > 0.0) {
        const double p = 1.0 / (1.0 - k_lo);
        const double tmax = std::pow(mid - lo, 1.0 - k_lo);
        left = adaptive_gk(
            [&](double t) {
                const double dist = std::pow(t, p);
                return f(lo + dist, i_lo, dist) * p * std::pow(t, p - 1.0);
            },
            0.0, tmax, rel_tol);
    } else {
        left = adaptive_gk([&](double x) { return f(x, i_lo, x - lo); }, lo, mid, rel_tol);
    }
    if (i_hi >= 0 && k_hi > 0.0) {
        const double p = 1.0 / (1.0 - k_hi);
        const double tmax = std::pow(hi - mid, 1.0 - k_hi);
        right = adaptive_gk(
            [&](double t) {
                const double dist = std::pow(t, p);
                return f(hi - dist, i_hi, dist) * p * std::pow(t, p - 1.0);
            },
            0.0, tmax, rel_tol);
    } else {
        right = adaptive_gk([&](double x) { return f(x, i_hi, hi - x); }, mid, hi, rel_tol);
    }
    return left + right;
}

} // namespace

double integrate_singular(const SingularIntegrand& f, double a, double b,
                          const std::vector<SingularPoint>& sing, double rel_tol) {
    if (a >= b) return 0.0;
    for (const auto& s : sing)
        if (s.exponent < 0.0 || s.exponent >= 1.0)
            throw std::domain_error("integrate_singular: exponent must be in [0,1)");

    // panel boundaries: a, b, and every singular point strictly inside;
    // coincident cuts keep the strongest exponent
    struct Cut {
        double x;
        int index;
        double exponent;
    };
    std::vector<Cut> cuts;
    for (std::size_t i = 0; i < sing.size(); ++i)
        if (sing[i].x > a && sing[i].x < b)
            cuts.push_back({sing[i].x, static_cast<int>(i), sing[i].exponent});
    std::sort(cuts.begin(), cuts.end(), [](const Cut& u, const Cut& v) {
        return u.x < v.x || (u.x == v.x && u.exponent > v.exponent);
    });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const Cut& u, const Cut& v) { return u.x == v.x; }),
               cuts.end());

    auto index_at = [&](double x) {
        int best = -1;
        for (std::size_t i = 0; i < sing.size(); ++i)
            if (sing[i].x == x && (best < 0 || sing[i].exponent > sing[best].exponent))
                best = static_cast<int>(i);
        return best;
    };

    double lo = a;
    int i_lo = index_at(a);
    double total = 0.0;
    for (const auto& cut : cuts) {
        const double k_lo = i_lo >= 0 ? sing[i_lo].exponent : 0.0;
        total += panel_singular(f, lo, cut.x, i_lo, k_lo, cut.index, cut.exponent, rel_tol);
        lo = cut.x;
        i_lo = cut.index;
    }
    const int i_hi = index_at(b);
    const double k_lo = i_lo >= 0 ? sing[i_lo].exponent : 0.0;
    const double k_hi = i_hi >= 0 ? sing[i_hi].exponent : 0.0;
    total += panel_singular(f, lo, b, i_lo, k_lo, i_hi, k_hi, rel_tol);
    return total;
}

namespace {

GaussRule make_legendre(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Roots of He_n by sign-change bracketing plus Newton polish; weights
// w_i = n!/He'_n(x_i)^2 sum to 1 for the unit-mass Gaussian measure.
GaussRule make_hermite_prob(int n) {
    auto he = [](int m, double x, double& val, double& deriv) {
        if (m == 0) {
            val = 1.0;
            deriv = 0.0;
            return;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= m; ++k) {
            double p2 = x * p1 - (k - 1.0) * p0;
            p0 = p1;
            p1 = p2;
        }
        val = p1;
        deriv = m * p0; // He'_m = m He_{m-1}
    };
    const double span = 2.0 * std::sqrt(n + 1.0) + 2.0;
    const int grid = 4096 * std::max(1, n / 8);
    GaussRule r;
    double val_prev, d_unused;
    he(n, -span, val_prev, d_unused);
    double x_prev = -span;
    for (int g = 1; g <= grid && static_cast<int>(r.x.size()) < n; ++g) {
        double x = -span + 2.0 * span * g / grid;
        double val;
        he(n, x, val, d_unused);
        if ((val_prev < 0.0) != (val < 0.0)) {
            double root = 0.5 * (x_prev + x);
            for (int it = 0; it < 100; ++it) {
                double v, d;
                he(n, root, v, d);
                double dx = v / d;
                root -= dx;
                if (std::abs(dx) < 1e-15 * (1.0 + std::abs(root))) break;
            }
            r.x.push_back(root);
        }
        val_prev = val;
        x_prev = x;
    }
    if (static_cast<int>(r.x.size()) != n)
        throw quadrature_error("gauss_hermite_prob: failed to bracket all roots");
    const double lognfact = std::lgamma(n + 1.0);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double v, d;
        he(n, r.x[i], v, d);
        r.w[i] = std::exp(lognfact - 2.0 * std::log(std::abs(d)));
    }
    return r;
}

// Newton iteration on P_n^{(a,b)} from interlacing initial guesses; weights
// from the derivative formula. Roots come out in descending order.
GaussRule make_jacobi(int n, double alf, double bet) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    constexpr int MAXIT = 60;
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            const double an = alf / n, bn = bet / n;
            const double r1 = (1.0 + alf) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
            const double r2 =
                1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
            z = 1.0 - r1 / r2;
        } else if (i == 1) {
            const double r1 = (4.1 + alf) / ((1.0 + alf) * (1.0 + 0.156 * alf));
            const double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * alf) / n;
            const double r3 = 1.0 + 0.012 * bet * (1.0 + 0.25 * std::abs(alf)) / n;
            z -= (1.0 - z) * r1 * r2 * r3;
        } else if (i == 2) {
            const double r1 = (1.67 + 0.28 * alf) / (1.0 + 0.37 * alf);
            const double r2 = 1.0 + 0.22 * (n - 8.0) / n;
            const double r3 = 1.0 + 8.0 * bet / ((6.28 + bet) * n * n);
            z -= (r.x[0] - z) * r1 * r2 * r3;
        } else if (i == n - 2) {
            const double r1 = (1.0 + 0.235 * bet) / (0.766 + 0.119 * bet);
            const double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
            const double r3 = 1.0 / (1.0 + 20.0 * alf / ((7.5 + alf) * n * n));
            z += (z - r.x[n - 4]) * r1 * r2 * r3;
        } else if (i == n - 1) {
            const double r1 = (1.0 + 0.37 * bet) / (1.67 + 0.28 * bet);
            const double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
            const double r3 = 1.0 / (1.0 + 8.0 * alf / ((6.28 + alf) * n * n));
            z += (z - r.x[n - 3]) * r1 * r2 * r3;
        } else {
            z = 3.0 * r.x[i - 1] - 3.0 * r.x[i - 2] + r.x[i - 3];
        }
        double p1 = 0.0, p2 = 0.0, pp = 0.0, temp = 0.0;
        bool done = false;
        for (int its = 0; its < MAXIT; ++its) {
            temp = 2.0 + alf + bet;
            p1 = (alf - bet + temp * z) / 2.0;
            p2 = 1.0;
            for (int j = 2; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                temp = 2.0 * j + alf + bet;
                const double a2 = 2.0 * j * (j + alf + bet) * (temp - 2.0);
                const double b2 =
                    (temp - 1.0) * (alf * alf - bet * bet + temp * (temp - 2.0) * z);
                const double c2 = 2.0 * (j - 1.0 + alf) * (j - 1.0 + bet) * temp;
                p1 = (b2 * p2 - c2 * p3) / a2;
            }
            pp = (n * (alf - bet - temp * z) * p1 + 2.0 * (n + alf) * (n + bet) * p2) /
                 (temp * (1.0 - z * z));
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) {
                done = true;
                break;
            }
        }
        if (!done && !(std::abs(p1 / pp) < 1e-12))
            throw quadrature_error("gauss_jacobi: root iteration failed");
        r.x[i] = z;
        r.w[i] = std::exp(std::lgamma(alf + n) + std::lgamma(bet + n) - std::lgamma(n + 1.0) -
                          std::lgamma(n + alf + bet + 1.0)) *
                 temp * std::pow(2.0, alf + bet) / (pp * p2);
    }
    return r;
}

} // namespace

const GaussRule& gauss_jacobi(int n, double a, double b) {
    struct Key {
        int n;
        double a, b;
        bool operator<(const Key& o) const {
            if (n != o.n) return n < o.n;
            if (a != o.a) return a < o.a;
            return b < o.b;
        }
    };
    static std::mutex mu;
    static std::map<Key, GaussRule> cache;
    std::lock_guard<std::mutex> lk(mu);
    const Key key{n, a, b};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_jacobi(n, a, b)).first;
    return it->second;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
    return it->second;
}

const GaussRule& gauss_hermite_prob(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_hermite_prob(n)).first;
    return it->second;
}

} // namespace hermqv::quadrature
