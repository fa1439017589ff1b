#include "gbq/propagators.hpp"

#include <cmath>

namespace gbq::prop {

double gamma_of(double xi) {
    const double x2 = xi * xi;
    return std::sqrt(x2 + x2 * x2);
}

SymbolTable gamma(const FourierGrid& g) {
    SymbolTable t(g);
    for (int j = 0; j < g.M; ++j) t.v[j] = gamma_of(g.xi[j]);
    return t;
}

double sinc_gamma(double t, double gamma) {
    const double z = t * gamma;
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
    }
    return std::sin(z) / gamma;
}

PropagatorCache PropagatorCache::make(const FourierGrid& g, double t) {
    PropagatorCache P;
    P.grid = g;
    P.t = t;
    const int M = g.M;
    P.gam.resize(M);
    P.gam2.resize(M);
    P.cos_t.resize(M);
    P.sinc_t.resize(M);
    for (int j = 0; j < M; ++j) {
        const double gm = gamma_of(g.xi[j]);
        P.gam[j] = gm;
        P.gam2[j] = gm * gm;
        P.cos_t[j] = std::cos(t * gm);
        P.sinc_t[j] = sinc_gamma(t, gm);
    }
    return P;
}

Spectrum apply_Vc(double t, const Spectrum& F) {
    Spectrum out = F;
    for (int j = 0; j < F.grid.M; ++j)
        out.c[j] *= std::cos(t * gamma_of(F.grid.xi[j]));
    return out;
}

Spectrum apply_Vs(double t, const Spectrum& F) {
    Spectrum out = F;
    for (int j = 0; j < F.grid.M; ++j)
        out.c[j] *= sinc_gamma(t, gamma_of(F.grid.xi[j]));
    return out;
}

std::pair<Spectrum, Spectrum> free_evolution(double t, const Spectrum& phi_hat,
                                             const Spectrum& psix_hat) {
    require_same_grid(phi_hat.grid, psix_hat.grid, "free_evolution");
    const PropagatorCache P = PropagatorCache::make(phi_hat.grid, t);
    Spectrum u(phi_hat.grid), ut(phi_hat.grid);
    advance(P, phi_hat.c, psix_hat.c, u.c, ut.c);
    return {std::move(u), std::move(ut)};
}

void advance(const PropagatorCache& P, std::span<const cplx> u,
             std::span<const cplx> ut, std::span<cplx> u_out,
             std::span<cplx> ut_out) {
    const int M = P.grid.M;
    for (int j = 0; j < M; ++j) {
        const cplx a = u[j];
        const cplx b = ut[j];
        u_out[j] = P.cos_t[j] * a + P.sinc_t[j] * b;
        ut_out[j] = -P.gam2[j] * P.sinc_t[j] * a + P.cos_t[j] * b;
    }
}

} // namespace gbq::prop
