#pragma once

#include "hermqv/analytic.hpp"
#include "hermqv/hermpath.hpp"

#include <cstdint>

namespace hermqv::quadvar {

/// Centered quadratic variation and its three-way split; V = V1 + V2 + 2 V3
/// holds per replication up to accumulated floating tolerance.
struct QVDecomposition {
    std::int64_t N = 0;
    double gamma = 1.0;
    double V = 0.0;
    double V1 = 0.0;
    double V2 = 0.0;
    double V3 = 0.0;
};

/// gamma_N = c * N^rho.
double gamma_of(const analytic::ScaleSchedule& schedule, std::int64_t N);

/// sum_i of (increment^2 - gamma^{2H}) over the path's grid, compensated.
/// The grid must be an arithmetic progression from 0.
double qv_centered(const hermpath::SamplePath& path, double H);

/// sum_i of products of the two components' increments (no centering; the
/// cross term has zero mean by chaos orthogonality).
double qv_cross(const hermpath::PathPair& pair);

QVDecomposition qv_decompose(const hermpath::PathPair& pair);

} // namespace hermqv::quadvar
