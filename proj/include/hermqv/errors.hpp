#pragma once

#include <stdexcept>
#include <string>

namespace hermqv {

/// Quadrature refinement failed to stabilize to the requested tolerance.
class quadrature_error : public std::runtime_error {
public:
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

/// Circulant embedding produced an eigenvalue below tolerance.
class embedding_error : public std::runtime_error {
public:
    embedding_error(const std::string& what, double min_eigenvalue)
        : std::runtime_error(what), min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

/// Spatial grid too coarse for the requested kernel simulation.
class grid_error : public std::runtime_error {
public:
    explicit grid_error(const std::string& what) : std::runtime_error(what) {}
};

/// Empirical calibration of a generator failed or is unstable.
class calibration_error : public std::runtime_error {
public:
    explicit calibration_error(const std::string& what) : std::runtime_error(what) {}
};

/// Path time grid is not the arithmetic progression the operation requires.
class grid_mismatch_error : public std::invalid_argument {
public:
    explicit grid_mismatch_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace hermqv
