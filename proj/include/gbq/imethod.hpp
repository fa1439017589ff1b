#ifndef GBQ_IMETHOD_HPP
#define GBQ_IMETHOD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbq/types.hpp"

namespace gbq::imethod {

enum class Blend { SmoothstepLog, PiecewiseC1 };

// Symbol of the smoothing operator I_N:
//   m(xi) = 1                 for |xi| <= N
//   m(xi) = (N/|xi|)^{1-s}    for |xi| >= 2N
// blended across (N, 2N) in log-frequency (quintic smoothstep by default,
// C2 junctions; the cubic PiecewiseC1 variant is kept as a cross-check).
struct MultiplierSpec {
    double N = 0.0;
    double s = 0.0;
    Blend blend = Blend::SmoothstepLog;
    FourierGrid grid;
    std::vector<double> table;

    std::string series_key() const; // observer/series naming, "EIu_N<value>"
};

double m_value(double xi, double N, double s, Blend blend);

// Errors out for N >= Nyquist (decay region unresolved) or s outside (0,1).
MultiplierSpec build_m(double N, double s, const FourierGrid& g,
                       Blend blend = Blend::SmoothstepLog);

Spectrum apply_I(const Spectrum& F, const MultiplierSpec& m);

// Empirical check of the two-sided smoothing bound
//   ||u||_{H^{s0}} <= c ||Iu||_{H^{s0+1-s}} <= c N^{1-s} ||u||_{H^{s0}}.
struct SmoothingReport {
    struct Row {
        double N;
        double r1_max; // ||u||_{H^{s0}} / ||Iu||_{H^{s0+1-s}}
        double r2_max; // ||Iu||_{H^{s0+1-s}} / (N^{1-s} ||u||_{H^{s0}})
    };
    std::vector<Row> rows;
    bool pass = false; // maxima over the sweep within 2x of the smallest-N max
};

SmoothingReport smoothing_bounds_check(std::span<const Spectrum> ensemble,
                                       double s0, double s,
                                       std::span<const double> N_list);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0; // natural log
    double r2 = 0.0;
    int n_used = 0;
    std::vector<double> dropped_N; // nonpositive drifts, flagged
};

// Least squares of log(drift) against log(N); needs >= 4 usable points.
ScalingFit scaling_fit(std::span<const std::pair<double, double>> points);

} // namespace gbq::imethod

#endif
