#include "gbq/functionals.hpp"

#include <cmath>
#include <cstdio>

#include "gbq/kernels.hpp"
#include "gbq/spectral.hpp"

namespace gbq::fun {

namespace {

EnergyReport energy_impl(const dyn::SimState& st, const double* m_table) {
    const FourierGrid& g = st.u_hat.grid;
    const int M = g.M;

    Spectrum u = st.u_hat;
    Spectrum ut = st.ut_hat;
    if (m_table) {
        for (int j = 0; j < M; ++j) {
            u.c[j] *= m_table[j];
            ut.c[j] *= m_table[j];
        }
    }

    std::vector<double> w(M), wp(M), winv(M);
    for (int j = 0; j < M; ++j) {
        const double xi = g.xi[j];
        w[j] = 1.0 + xi * xi;
        const double b = 1.0 + std::abs(xi);
        wp[j] = b * b;
        winv[j] = xi == 0.0 ? 0.0 : 1.0 / (xi * xi);
    }

    EnergyReport rep;
    rep.t = st.t;
    rep.h1 = 0.5 * kern::weighted_abs2_sum(u.c, w) / g.L;
    rep.h1_linear_bracket = 0.5 * kern::weighted_abs2_sum(u.c, wp) / g.L;
    rep.kinetic = 0.5 * kern::weighted_abs2_sum(ut.c, winv) / g.L;
    const int p = 2 * st.k + 2;
    rep.potential = spectral::dealiased_power_integral(u, p) / p;
    rep.total = rep.h1 + rep.kinetic + rep.potential;
    return rep;
}

} // namespace

EnergyReport energy(const dyn::SimState& st) { return energy_impl(st, nullptr); }

EnergyReport modified_energy(const dyn::SimState& st,
                             const imethod::MultiplierSpec& m) {
    require_same_grid(st.u_hat.grid, m.grid, "modified_energy");
    return energy_impl(st, m.table.data());
}

double commutator_pairing(const dyn::SimState& st,
                          const imethod::MultiplierSpec& m) {
    require_same_grid(st.u_hat.grid, m.grid, "commutator_pairing");
    const int M = st.u_hat.grid.M;
    const int p = 2 * st.k + 1;

    Spectrum Iu = st.u_hat;
    Spectrum Iut = st.ut_hat;
    for (int j = 0; j < M; ++j) {
        Iu.c[j] *= m.table[j];
        Iut.c[j] *= m.table[j];
    }
    const Spectrum a = spectral::dealias_power(Iu, p);   // (Iu)^{2k+1}
    Spectrum b = spectral::dealias_power(st.u_hat, p);   // I(u^{2k+1})
    for (int j = 0; j < M; ++j) b.c[j] *= m.table[j];

    std::vector<cplx> diff(M);
    for (int j = 0; j < M; ++j) diff[j] = a.c[j] - b.c[j];
    return kern::dot_re(diff, Iut.c) / st.u_hat.grid.L;
}

dyn::Observer energy_observer() {
    return {"E", [](const dyn::SimState& s) { return energy(s).total; }};
}

dyn::Observer energy_drift_observer(double E0) {
    return {"E_rel_drift", [E0](const dyn::SimState& s) {
                return std::abs(energy(s).total - E0) /
                       std::max(std::abs(E0), 1e-300);
            }};
}

dyn::Observer modified_energy_observer(imethod::MultiplierSpec m) {
    std::string key = m.series_key();
    return {std::move(key), [m = std::move(m)](const dyn::SimState& s) {
                return modified_energy(s, m).total;
            }};
}

dyn::Observer pairing_observer(imethod::MultiplierSpec m) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "ACL_N%g", m.N);
    return {buf, [m = std::move(m)](const dyn::SimState& s) {
                return commutator_pairing(s, m);
            }};
}

dyn::Observer sobolev_observer(double s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "Hs%g", s);
    return {buf, [s](const dyn::SimState& st) {
                return spectral::sobolev_norm(st.u_hat, s);
            }};
}

dyn::Observer kinetic_sobolev_observer(double s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "Kin_Hs%g", s);
    // ||(-Dx^2)^{-1/2} u_t||_{H^{s-1}}: weight <xi>^{s-1} / |xi|, zero mode 0
    return {buf, [s](const dyn::SimState& st) {
                const FourierGrid& g = st.u_hat.grid;
                std::vector<double> w(g.M);
                for (int j = 0; j < g.M; ++j) {
                    const double xi = g.xi[j];
                    if (xi == 0.0) {
                        w[j] = 0.0;
                    } else {
                        const double br = std::sqrt(1.0 + xi * xi);
                        w[j] = std::pow(br, 2.0 * (s - 1.0)) / (xi * xi);
                    }
                }
                return std::sqrt(kern::weighted_abs2_sum(st.ut_hat.c, w) / g.L);
            }};
}

dyn::Observer lp_observer(int p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "Lp%d", p);
    return {buf, [p](const dyn::SimState& st) {
                const Field f = spectral::inverse(st.u_hat);
                return spectral::lp_norm(f, p);
            }};
}

NormSeries norm_series(const dyn::Trajectory& traj,
                       std::span<const std::string> columns) {
    NormSeries out;
    out.columns.assign(columns.begin(), columns.end());
    if (columns.empty()) return out;
    const auto& first = traj.series_of(out.columns[0]);
    out.t.reserve(first.size());
    for (const auto& [t, v] : first) out.t.push_back(t);
    out.rows.assign(first.size(), std::vector<double>(columns.size()));
    for (std::size_t c = 0; c < out.columns.size(); ++c) {
        const auto& s = traj.series_of(out.columns[c]);
        if (s.size() != first.size())
            throw std::runtime_error("norm_series: ragged series " + out.columns[c]);
        for (std::size_t i = 0; i < s.size(); ++i) out.rows[i][c] = s[i].second;
    }
    return out;
}

NormSeries norm_series(const dyn::Trajectory& traj,
                       std::span<const double> s_list,
                       const imethod::MultiplierSpec* m) {
    std::vector<dyn::Observer> obs;
    for (double s : s_list) {
        obs.push_back(sobolev_observer(s));
        obs.push_back(kinetic_sobolev_observer(s));
    }
    obs.push_back(energy_observer());
    if (m) obs.push_back(modified_energy_observer(*m));

    NormSeries out;
    for (const auto& ob : obs) out.columns.push_back(ob.name);
    for (const dyn::SimState& st : traj.samples) {
        out.t.push_back(st.t);
        std::vector<double> row;
        row.reserve(obs.size());
        for (const auto& ob : obs) row.push_back(ob.eval(st));
        out.rows.push_back(std::move(row));
    }
    return out;
}

double drift(const dyn::Trajectory& traj, const imethod::MultiplierSpec& m) {
    const auto& s = traj.series_of(m.series_key());
    const double e0 = s.front().second;
    double sup = 0.0;
    for (const auto& [t, e] : s) sup = std::max(sup, std::abs(e - e0));
    return sup;
}

} // namespace gbq::fun
