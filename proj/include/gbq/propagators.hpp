#ifndef GBQ_PROPAGATORS_HPP
#define GBQ_PROPAGATORS_HPP

#include <span>
#include <utility>

#include "gbq/types.hpp"

namespace gbq::prop {

// gamma(xi) = sqrt(xi^2 + xi^4)
SymbolTable gamma(const FourierGrid& g);
double gamma_of(double xi);

// sin(t*gamma)/gamma with the removable singularity handled by a series
// for |t*gamma| < 1e-4.
double sinc_gamma(double t, double gamma);

// Per-(grid, t) trig tables for the exact linear flow
//   u_hat(t)  =  cos(t g) u0 + sinc_g(t) v0
//   ut_hat(t) = -g sin(t g) u0 + cos(t g) v0.
struct PropagatorCache {
    FourierGrid grid;
    double t = 0.0;
    std::vector<double> gam;
    std::vector<double> gam2;
    std::vector<double> cos_t;
    std::vector<double> sinc_t; // sin(t g)/g, value t at xi = 0

    static PropagatorCache make(const FourierGrid& g, double t);
};

Spectrum apply_Vc(double t, const Spectrum& F);
Spectrum apply_Vs(double t, const Spectrum& F);

// Homogeneous solution of u_tt + gamma^2 u = 0 from (phi_hat, psix_hat);
// returns (u_hat(t), ut_hat(t)).
std::pair<Spectrum, Spectrum> free_evolution(double t, const Spectrum& phi_hat,
                                             const Spectrum& psix_hat);

// In-place table-driven variant used by the stepper.
void advance(const PropagatorCache& P, std::span<const cplx> u,
             std::span<const cplx> ut, std::span<cplx> u_out,
             std::span<cplx> ut_out);

} // namespace gbq::prop

#endif
