#include "gbq/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gbq/kernels.hpp"
#include "gbq/spectral.hpp"

namespace gbq::imethod {

namespace {

double smoothstep5(double y) { return ((6.0 * y - 15.0) * y + 10.0) * y * y * y; }
double smoothstep3(double y) { return (3.0 - 2.0 * y) * y * y; }

} // namespace

double m_value(double xi, double N, double s, Blend blend) {
    const double a = std::abs(xi);
    if (a <= N) return 1.0;
    const double lg = std::log(a / N);
    if (a >= 2.0 * N) return std::exp(-(1.0 - s) * lg);
    const double y = lg / std::log(2.0);
    const double S = blend == Blend::SmoothstepLog ? smoothstep5(y) : smoothstep3(y);
    return std::exp(-(1.0 - s) * lg * S);
}

std::string MultiplierSpec::series_key() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "EIu_N%g", N);
    return buf;
}

MultiplierSpec build_m(double N, double s, const FourierGrid& g, Blend blend) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("build_m: s must lie in (0,1)");
    if (!(N > 0.0)) throw std::invalid_argument("build_m: N must be positive");
    if (N >= g.nyquist())
        throw std::invalid_argument("build_m: N >= Nyquist, decay region unresolved");
    MultiplierSpec m;
    m.N = N;
    m.s = s;
    m.blend = blend;
    m.grid = g;
    m.table.resize(g.M);
    for (int j = 0; j < g.M; ++j) m.table[j] = m_value(g.xi[j], N, s, blend);
    return m;
}

Spectrum apply_I(const Spectrum& F, const MultiplierSpec& m) {
    require_same_grid(F.grid, m.grid, "apply_I");
    Spectrum out = F;
    kern::mul_inplace(std::span<cplx>(out.c), std::span<const double>(m.table));
    return out;
}

SmoothingReport smoothing_bounds_check(std::span<const Spectrum> ensemble,
                                       double s0, double s,
                                       std::span<const double> N_list) {
    if (ensemble.empty())
        throw std::invalid_argument("smoothing_bounds_check: empty ensemble");
    SmoothingReport rep;
    for (double N : N_list) {
        MultiplierSpec m = build_m(N, s, ensemble[0].grid); // rejects N >= Nyquist
        SmoothingReport::Row row{N, 0.0, 0.0};
        for (const Spectrum& u : ensemble) {
            const double lhs = spectral::sobolev_norm(u, s0);
            const Spectrum Iu = apply_I(u, m);
            const double mid = spectral::sobolev_norm(Iu, s0 + 1.0 - s);
            const double rhs = std::pow(N, 1.0 - s) * lhs;
            row.r1_max = std::max(row.r1_max, lhs / mid);
            row.r2_max = std::max(row.r2_max, mid / rhs);
        }
        rep.rows.push_back(row);
    }
    const double r1_0 = rep.rows.front().r1_max;
    const double r2_0 = rep.rows.front().r2_max;
    rep.pass = true;
    for (const auto& row : rep.rows) {
        if (row.r1_max > 2.0 * r1_0 || row.r2_max > 2.0 * r2_0) rep.pass = false;
    }
    return rep;
}

ScalingFit scaling_fit(std::span<const std::pair<double, double>> points) {
    ScalingFit fit;
    std::vector<double> x, y;
    for (const auto& [N, drift] : points) {
        if (drift > 0.0) {
            x.push_back(std::log(N));
            y.push_back(std::log(drift));
        } else {
            fit.dropped_N.push_back(N);
        }
    }
    fit.n_used = static_cast<int>(x.size());
    if (fit.n_used < 4)
        throw std::invalid_argument("scaling_fit: fewer than 4 usable points");
    const int n = fit.n_used;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (int i = 0; i < n; ++i) {
        const double yh = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - yh) * (y[i] - yh);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace gbq::imethod
