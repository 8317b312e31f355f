#include "hermqv/quadvar.hpp"

#include "hermqv/errors.hpp"

#include <cmath>
#include <sstream>

namespace hermqv::quadvar {

namespace {

double infer_gamma(const hermpath::SamplePath& path) {
    const auto& t = path.times;
    if (t.size() < 2) throw grid_mismatch_error("path needs at least two time points");
    if (t[0] != 0.0) throw grid_mismatch_error("path grid must start at 0");
    const double gamma = t[1];
    if (!(gamma > 0.0)) throw grid_mismatch_error("path grid must be increasing");
    for (std::size_t i = 2; i < t.size(); ++i) {
        const double expect = gamma * static_cast<double>(i);
        if (std::abs(t[i] - expect) > 1e-9 * std::max(1.0, expect)) {
            std::ostringstream os;
            os << "path grid is not arithmetic: t[" << i << "] = " << t[i] << ", expected "
               << expect;
            throw grid_mismatch_error(os.str());
        }
    }
    return gamma;
}

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double y) {
        y -= c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

void check_shared_grid(const hermpath::PathPair& pair) {
    const auto& a = pair.component1.times;
    const auto& b = pair.component2.times;
    if (a.size() != b.size()) throw grid_mismatch_error("components have different grid sizes");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) throw grid_mismatch_error("components have different time grids");
}

} // namespace

double gamma_of(const analytic::ScaleSchedule& schedule, std::int64_t N) {
    schedule.validate();
    if (N < 1) throw std::domain_error("N must be >= 1");
    if (schedule.kind == analytic::ScaleSchedule::Kind::fixed) return schedule.c;
    return schedule.c * std::pow(static_cast<double>(N), schedule.rho);
}

double qv_centered(const hermpath::SamplePath& path, double H) {
    const double gamma = infer_gamma(path);
    const double mean_sq = std::pow(gamma, 2.0 * H);
    Kahan acc;
    for (std::size_t i = 0; i + 1 < path.values.size(); ++i) {
        const double d = path.values[i + 1] - path.values[i];
        acc.add(d * d - mean_sq);
    }
    return acc.sum;
}

double qv_cross(const hermpath::PathPair& pair) {
    check_shared_grid(pair);
    Kahan acc;
    const auto& v1 = pair.component1.values;
    const auto& v2 = pair.component2.values;
    for (std::size_t i = 0; i + 1 < v1.size(); ++i)
        acc.add((v1[i + 1] - v1[i]) * (v2[i + 1] - v2[i]));
    return acc.sum;
}

QVDecomposition qv_decompose(const hermpath::PathPair& pair) {
    check_shared_grid(pair);
    const double gamma = infer_gamma(pair.component1);
    const double H1 = pair.component1.meta.hurst;
    const double H2 = pair.component2.meta.hurst;
    QVDecomposition d;
    d.N = static_cast<std::int64_t>(pair.component1.values.size()) - 1;
    d.gamma = gamma;
    d.V1 = qv_centered(pair.component1, H1);
    d.V2 = qv_centered(pair.component2, H2);
    d.V3 = qv_cross(pair);

    // direct evaluation on the summed path; must agree with the identity
    const double center = std::pow(gamma, 2.0 * H1) + std::pow(gamma, 2.0 * H2);
    Kahan acc;
    double max_inc2 = 0.0;
    const auto& v1 = pair.component1.values;
    const auto& v2 = pair.component2.values;
    for (std::size_t i = 0; i + 1 < v1.size(); ++i) {
        const double inc = (v1[i + 1] - v1[i]) + (v2[i + 1] - v2[i]);
        max_inc2 = std::max(max_inc2, inc * inc);
        acc.add(inc * inc - center);
    }
    d.V = acc.sum;
    const double tol = 1e-10 * static_cast<double>(d.N) * std::max(max_inc2, center);
    if (std::abs(d.V - (d.V1 + d.V2 + 2.0 * d.V3)) > tol)
        throw std::logic_error("qv_decompose: V != V1 + V2 + 2 V3 beyond tolerance");
    return d;
}

} // namespace hermqv::quadvar
