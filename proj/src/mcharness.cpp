#include "hermqv/mcharness.hpp"

#include "hermqv/errors.hpp"
#include "hermqv/parallel.hpp"
#include "hermqv/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace hermqv::mcharness {

using analytic::Coupling;
using analytic::Dependence;
using analytic::ScaleSchedule;
using analytic::Statistic;
using nlohmann::json;

void ExperimentConfig::validate() const {
    spec.validate();
    schedule.validate();
    if (R < 100) throw std::domain_error("R must be >= 100");
    if (N_grid.size() < 3) throw std::domain_error("N_grid needs at least 3 points");
    for (std::size_t i = 0; i < N_grid.size(); ++i) {
        if (N_grid[i] < 2) throw std::domain_error("grid N must be >= 2");
        if (i > 0 && N_grid[i] <= N_grid[i - 1])
            throw std::domain_error("N_grid must be strictly increasing");
    }
    if (n_inner < 64) throw std::domain_error("n_inner must be >= 64");
}

Moments sample_moments(const std::vector<double>& xs) {
    Moments m;
    m.n = static_cast<std::int64_t>(xs.size());
    if (m.n < 2) throw std::domain_error("sample_moments: need at least 2 samples");
    double mean = 0.0, c = 0.0;
    for (double x : xs) {
        const double y = x - c;
        const double t = mean + y;
        c = (t - mean) - y;
        mean = t;
    }
    mean /= static_cast<double>(m.n);
    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        const double d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    const double n = static_cast<double>(m.n);
    m.mean = mean;
    m.m2 = s2 / n;
    m.m4 = s4 / n;
    m.sd = std::sqrt(m.m2);
    if (m.m2 > 0.0) {
        m.skewness = (s3 / n) / std::pow(m.m2, 1.5);
        m.excess_kurtosis = m.m4 / (m.m2 * m.m2) - 3.0;
    }
    return m;
}

ShapeVerdict shape_test(const std::vector<double>& samples) {
    if (samples.size() < 500) throw std::domain_error("shape_test: need at least 500 samples");
    const Moments m = sample_moments(samples);
    ShapeVerdict v;
    v.n = m.n;
    v.skewness = m.skewness;
    v.excess_kurtosis = m.excess_kurtosis;
    const double n = static_cast<double>(m.n);
    v.skew_band = 4.0 * std::sqrt(6.0 / n);
    v.kurt_band = 4.0 * std::sqrt(24.0 / n);
    v.gaussian_compatible =
        std::abs(v.skewness) < v.skew_band && std::abs(v.excess_kurtosis) < v.kurt_band;
    return v;
}

SlopeFit fit_loglog(const std::vector<double>& N, const std::vector<double>& sd,
                    const std::vector<double>& weight) {
    if (N.size() != sd.size() || N.size() != weight.size() || N.size() < 2)
        throw std::invalid_argument("fit_loglog: need matching vectors of length >= 2");
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < N.size(); ++i) {
        if (!(sd[i] > 0.0)) throw std::domain_error("fit_loglog: degenerate sd");
        const double x = std::log(N[i]);
        const double y = std::log(sd[i]);
        const double w = weight[i];
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    const double det = sw * sxx - sx * sx;
    if (!(det > 0.0)) throw std::domain_error("fit_loglog: singular design");
    SlopeFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / sw;
    f.se = std::sqrt(sw / det);
    return f;
}

namespace {

// Per-N generator facade so the replication loop is coupling-agnostic.
struct PairSource {
    std::unique_ptr<hermpath::SubordinatedPairGenerator> sub;
    std::unique_ptr<hermpath::KernelPairGenerator> kern;
    std::unique_ptr<hermpath::IndependentPairGenerator> indep;

    hermpath::PathPair generate(std::uint64_t seed) const {
        if (sub) return sub->generate(seed);
        if (kern) return kern->generate(seed);
        return indep->generate(seed);
    }
};

PairSource make_source(const ExperimentConfig& cfg, std::int64_t N) {
    PairSource src;
    switch (cfg.spec.coupling) {
        case Coupling::subordinated:
            src.sub = std::make_unique<hermpath::SubordinatedPairGenerator>(cfg.spec.q, cfg.spec.H1,
                                                                            N, cfg.n_inner);
            break;
        case Coupling::kernel_grid:
            src.kern = std::make_unique<hermpath::KernelPairGenerator>(cfg.spec.H1, cfg.spec.H2, N,
                                                                       cfg.grid);
            break;
        case Coupling::independent_drivers: {
            // V1 depends only on component 1; skip the costly second driver
            const bool comp1_only = cfg.statistic == Statistic::V1;
            src.indep = std::make_unique<hermpath::IndependentPairGenerator>(
                cfg.spec.q, cfg.spec.H1, cfg.spec.H2, N, cfg.n_inner, comp1_only);
            break;
        }
    }
    return src;
}

double pick_statistic(const quadvar::QVDecomposition& d, Statistic s) {
    switch (s) {
        case Statistic::V: return d.V;
        case Statistic::V1: return d.V1;
        case Statistic::V2: return d.V2;
        case Statistic::V3: return d.V3;
    }
    throw std::logic_error("unreachable");
}

double rms(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x * x;
    return std::sqrt(s / static_cast<double>(xs.size()));
}

} // namespace

MCReport run(const ExperimentConfig& config) {
    config.validate();
    MCReport report;
    report.config = config;
    report.regime = analytic::classify_regime(config.spec, config.schedule);
    report.predicted_law =
        config.statistic == Statistic::V
            ? report.regime.limit_law
            : analytic::statistic_law(config.spec.q, config.spec.H1, config.spec.H2,
                                      config.statistic);

    const analytic::RateExponents rate =
        config.statistic == Statistic::V
            ? report.regime.rate
            : analytic::statistic_rate(config.spec.q, config.spec.H1, config.spec.H2,
                                       config.statistic);
    const double rho =
        config.schedule.kind == ScaleSchedule::Kind::fixed ? 0.0 : config.schedule.rho;
    report.predicted_slope = rate.exponent_N + rho * rate.exponent_gamma;

    std::vector<double> fitN, fitSd, fitW;
    std::vector<double> largest_samples;

    for (std::int64_t N : config.N_grid) {
        const PairSource src = make_source(config, N);
        const double gamma = quadvar::gamma_of(config.schedule, N);
        const int R = config.R;
        std::vector<double> stat(R), v1(R), v2(R), v3(R);
        parallel_for(static_cast<std::size_t>(R), config.workers, [&](std::size_t r) {
            const std::uint64_t seed = rng::derive_stream(
                config.seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(r));
            auto pair = src.generate(seed);
            pair = hermpath::rescale_selfsimilar(std::move(pair), gamma, config.spec.H1,
                                                 config.spec.H2);
            const auto d = quadvar::qv_decompose(pair);
            stat[r] = pick_statistic(d, config.statistic);
            v1[r] = d.V1;
            v2[r] = d.V2;
            v3[r] = d.V3;
        });

        PerN row;
        row.N = N;
        row.gamma = gamma;
        row.moments = sample_moments(stat);
        if (!(row.moments.sd > 0.0)) throw std::domain_error("run: degenerate sd at some N");
        row.rms_V1 = rms(v1);
        row.rms_V2 = rms(v2);
        row.rms_V3 = rms(v3);
        row.dominant_rms = Statistic::V1;
        if (row.rms_V2 >= row.rms_V1 && row.rms_V2 >= row.rms_V3) row.dominant_rms = Statistic::V2;
        if (row.rms_V3 >= row.rms_V1 && row.rms_V3 >= row.rms_V2) row.dominant_rms = Statistic::V3;
        report.per_N.push_back(row);

        fitN.push_back(static_cast<double>(N));
        fitSd.push_back(row.moments.sd);
        // delta-method variance of log sd from the 4th moment, floored
        const double kurt_ratio =
            std::max(row.moments.m4 / (row.moments.m2 * row.moments.m2) - 1.0, 0.5);
        fitW.push_back(4.0 * config.R / kurt_ratio);
        if (N == config.N_grid.back()) largest_samples = stat;
    }

    report.fit = fit_loglog(fitN, fitSd, fitW);
    report.shape = shape_test(largest_samples);
    return report;
}

CompareVerdict compare(const MCReport& report, const analytic::RegimeReport& regime) {
    CompareVerdict v;
    const analytic::RateExponents rate =
        report.config.statistic == Statistic::V
            ? regime.rate
            : analytic::statistic_rate(report.config.spec.q, report.config.spec.H1,
                                       report.config.spec.H2, report.config.statistic);
    const double rho = report.config.schedule.kind == ScaleSchedule::Kind::fixed
                           ? 0.0
                           : report.config.schedule.rho;
    const double predicted = rate.exponent_N + rho * rate.exponent_gamma;
    v.slope_gap = std::abs(report.fit.slope - predicted);
    v.slope_tolerance = 2.0 * (report.fit.se + 0.03);
    v.slope_pass = v.slope_gap < v.slope_tolerance;

    const analytic::LimitLaw law =
        report.config.statistic == Statistic::V
            ? regime.limit_law
            : analytic::statistic_law(report.config.spec.q, report.config.spec.H1,
                                      report.config.spec.H2, report.config.statistic);
    switch (law.family) {
        case analytic::LimitLaw::Family::Gaussian:
            v.shape_pass = report.shape.gaussian_compatible;
            break;
        case analytic::LimitLaw::Family::Rosenblatt:
            v.shape_pass = !report.shape.gaussian_compatible && report.shape.skewness > 0.0;
            break;
        case analytic::LimitLaw::Family::indeterminate:
            v.shape_pass = true; // no prediction to violate
            break;
    }
    v.pass = v.slope_pass && v.shape_pass;
    return v;
}

// ---------------------------------------------------------------------------
// JSON / CSV
// ---------------------------------------------------------------------------

namespace {

Dependence dependence_from_string(const std::string& s) {
    if (s == "dependent") return Dependence::dependent;
    if (s == "independent") return Dependence::independent;
    throw std::domain_error("unknown dependence: " + s);
}

Coupling coupling_from_string(const std::string& s) {
    if (s == "subordinated") return Coupling::subordinated;
    if (s == "kernel-grid") return Coupling::kernel_grid;
    if (s == "independent-drivers") return Coupling::independent_drivers;
    throw std::domain_error("unknown coupling: " + s);
}

Statistic statistic_from_string(const std::string& s) {
    if (s == "V") return Statistic::V;
    if (s == "V1") return Statistic::V1;
    if (s == "V2") return Statistic::V2;
    if (s == "V3") return Statistic::V3;
    throw std::domain_error("unknown statistic: " + s);
}

json law_to_json(const analytic::LimitLaw& law) {
    json j;
    j["family"] = analytic::to_string(law.family);
    if (law.family == analytic::LimitLaw::Family::Rosenblatt) j["index"] = law.index;
    return j;
}

} // namespace

json regime_to_json(const analytic::RegimeReport& r, const analytic::PairSpec& spec,
                    const ScaleSchedule& schedule) {
    json j;
    j["q"] = spec.q;
    j["h1_index"] = spec.H1;
    j["h2_index"] = spec.H2;
    j["dependence"] = analytic::to_string(spec.dependence);
    j["rho"] = schedule.kind == ScaleSchedule::Kind::fixed ? 0.0 : schedule.rho;
    j["nu1"] = r.nu1;
    j["nu2"] = r.nu2;
    j["delta"] = r.delta;
    j["h1"] = r.h1;
    j["dominant"] = analytic::to_string(r.dominant);
    j["limit_law"] = law_to_json(r.limit_law);
    j["rate"] = {{"exponent_N", r.rate.exponent_N},
                 {"exponent_gamma", r.rate.exponent_gamma},
                 {"log_half_power", r.rate.log_half_power}};
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    const auto& s = j.at("spec");
    cfg.spec.q = s.at("q").get<int>();
    cfg.spec.H1 = s.at("h1").get<double>();
    cfg.spec.H2 = s.at("h2").get<double>();
    cfg.spec.dependence = dependence_from_string(s.at("dependence").get<std::string>());
    cfg.spec.coupling = coupling_from_string(s.at("coupling").get<std::string>());
    const auto& sch = j.at("schedule");
    const std::string kind = sch.at("kind").get<std::string>();
    if (kind == "fixed") {
        cfg.schedule = ScaleSchedule::fixed(sch.value("c", 1.0));
    } else if (kind == "power") {
        cfg.schedule = ScaleSchedule::power(sch.value("c", 1.0), sch.at("rho").get<double>());
    } else {
        throw std::domain_error("unknown schedule kind: " + kind);
    }
    cfg.N_grid = j.at("N_grid").get<std::vector<std::int64_t>>();
    cfg.R = j.at("R").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.statistic = statistic_from_string(j.at("statistic").get<std::string>());
    cfg.n_inner = j.value("n_inner", std::int64_t{256});
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.delta = g.value("delta", 1.0 / 64.0);
        cfg.grid.M = g.value("M", 32.0);
        cfg.grid.m = g.value("m", std::int64_t{0});
    }
    cfg.workers = j.value("workers", 0u);
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["spec"] = {{"q", cfg.spec.q},
                 {"h1", cfg.spec.H1},
                 {"h2", cfg.spec.H2},
                 {"dependence", analytic::to_string(cfg.spec.dependence)},
                 {"coupling", analytic::to_string(cfg.spec.coupling)}};
    json sched;
    sched["kind"] = cfg.schedule.kind == ScaleSchedule::Kind::fixed ? "fixed" : "power";
    sched["c"] = cfg.schedule.c;
    if (cfg.schedule.kind == ScaleSchedule::Kind::power) sched["rho"] = cfg.schedule.rho;
    j["schedule"] = sched;
    j["N_grid"] = cfg.N_grid;
    j["R"] = cfg.R;
    j["seed"] = cfg.seed;
    j["statistic"] = analytic::to_string(cfg.statistic);
    j["n_inner"] = cfg.n_inner;
    if (cfg.spec.coupling == Coupling::kernel_grid)
        j["grid"] = {{"delta", cfg.grid.delta}, {"M", cfg.grid.M}, {"m", cfg.grid.m}};
    return j;
}

json report_to_json(const MCReport& r) {
    json j;
    j["config"] = config_to_json(r.config);
    j["regime"] = regime_to_json(r.regime, r.config.spec, r.config.schedule);
    json rows = json::array();
    for (const auto& p : r.per_N) {
        rows.push_back({{"N", p.N},
                        {"gamma", p.gamma},
                        {"mean", p.moments.mean},
                        {"sd", p.moments.sd},
                        {"skew", p.moments.skewness},
                        {"exkurt", p.moments.excess_kurtosis},
                        {"rms_V1", p.rms_V1},
                        {"rms_V2", p.rms_V2},
                        {"rms_V3", p.rms_V3},
                        {"dominant_rms", analytic::to_string(p.dominant_rms)}});
    }
    j["per_N"] = rows;
    j["slope"] = {{"fitted", r.fit.slope},
                  {"se", r.fit.se},
                  {"intercept", r.fit.intercept},
                  {"predicted", r.predicted_slope}};
    j["shape"] = {{"skewness", r.shape.skewness},
                  {"excess_kurtosis", r.shape.excess_kurtosis},
                  {"gaussian_compatible", r.shape.gaussian_compatible},
                  {"skew_band", r.shape.skew_band},
                  {"kurt_band", r.shape.kurt_band}};
    j["predicted_law"] = law_to_json(r.predicted_law);
    const auto verdict = compare(r, r.regime);
    j["verdict"] = {{"slope_pass", verdict.slope_pass},
                    {"shape_pass", verdict.shape_pass},
                    {"pass", verdict.pass}};
    return j;
}

void write_per_n_csv(std::ostream& os, const MCReport& r) {
    os << "N,mean,sd,skew,exkurt,slope_running\n";
    std::vector<double> ns, sds, ws;
    char buf[512];
    for (const auto& p : r.per_N) {
        ns.push_back(static_cast<double>(p.N));
        sds.push_back(p.moments.sd);
        ws.push_back(1.0);
        double running = std::nan("");
        if (ns.size() >= 2) running = fit_loglog(ns, sds, ws).slope;
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<long long>(p.N), p.moments.mean, p.moments.sd,
                      p.moments.skewness, p.moments.excess_kurtosis, running);
        os << buf;
    }
}

} // namespace hermqv::mcharness
