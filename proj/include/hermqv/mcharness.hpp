#pragma once

#include "hermqv/analytic.hpp"
#include "hermqv/hermpath.hpp"
#include "hermqv/quadvar.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hermqv::mcharness {

struct ExperimentConfig {
    analytic::PairSpec spec;
    analytic::ScaleSchedule schedule;
    std::vector<std::int64_t> N_grid;
    int R = 100;
    std::uint64_t seed = 0;
    analytic::Statistic statistic = analytic::Statistic::V;
    std::int64_t n_inner = 256;
    hermpath::GridSpec grid; // kernel-grid coupling only
    unsigned workers = 0;    // 0: one per processing unit

    void validate() const;
};

struct Moments {
    std::int64_t n = 0;
    double mean = 0.0, sd = 0.0, skewness = 0.0, excess_kurtosis = 0.0;
    double m2 = 0.0, m4 = 0.0; // central moments
};
Moments sample_moments(const std::vector<double>& xs);

struct ShapeVerdict {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    bool gaussian_compatible = false;
    std::int64_t n = 0;
    double skew_band = 0.0, kurt_band = 0.0;
};

/// Moment-based Gaussianity verdict: compatible iff |skew| < 4 sqrt(6/R) and
/// |excess kurtosis| < 4 sqrt(24/R). Requires at least 500 samples.
ShapeVerdict shape_test(const std::vector<double>& samples);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double se = 0.0;
};

/// Weighted least squares of log(sd) against log(N).
SlopeFit fit_loglog(const std::vector<double>& N, const std::vector<double>& sd,
                    const std::vector<double>& weight);

struct PerN {
    std::int64_t N = 0;
    double gamma = 1.0;
    Moments moments;
    double rms_V1 = 0.0, rms_V2 = 0.0, rms_V3 = 0.0;
    analytic::Statistic dominant_rms = analytic::Statistic::V3;
};

struct MCReport {
    ExperimentConfig config;
    analytic::RegimeReport regime;
    std::vector<PerN> per_N;
    SlopeFit fit;
    double predicted_slope = 0.0;
    ShapeVerdict shape; // at the largest N
    analytic::LimitLaw predicted_law;
};

struct CompareVerdict {
    bool slope_pass = false;
    bool shape_pass = false;
    bool pass = false;
    double slope_gap = 0.0;
    double slope_tolerance = 0.0;
};

MCReport run(const ExperimentConfig& config);

/// PASS iff the fitted slope sits within 2 (SE + 0.03) of the regime's
/// prediction and the moment-shape verdict matches the predicted limit-law
/// family.
CompareVerdict compare(const MCReport& report, const analytic::RegimeReport& regime);

// JSON / CSV surfaces
nlohmann::json report_to_json(const MCReport& report);
nlohmann::json regime_to_json(const analytic::RegimeReport& regime, const analytic::PairSpec& spec,
                              const analytic::ScaleSchedule& schedule);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
void write_per_n_csv(std::ostream& os, const MCReport& report);

} // namespace hermqv::mcharness
