#ifndef GBQ_FUNCTIONALS_HPP
#define GBQ_FUNCTIONALS_HPP

#include <span>

#include "gbq/dynamics.hpp"
#include "gbq/imethod.hpp"
#include "gbq/types.hpp"

namespace gbq::fun {

// Conserved energy of the defocusing flow,
//   E = 1/2 ||u||_{H^1}^2 + 1/2 ||(-Dx^2)^{-1/2} u_t||_{L^2}^2
//       + 1/(2k+2) ||u||_{L^{2k+2}}^{2k+2},
// with the 1+xi^2 bracket in the H^1 part (exactly conserved by the
// semi-discrete flow) and the zero mode of |xi|^{-1} u_t set to zero.
struct EnergyReport {
    double t = 0.0;
    double total = 0.0;
    double h1 = 0.0;        // 1/2 ||u||_{H^1}^2, weight 1 + xi^2
    double kinetic = 0.0;   // 1/2 ||u_t / |xi|||_{L^2}^2
    double potential = 0.0; // padded-grid evaluation (degree 2k+2)
    double h1_linear_bracket = 0.0;  // diagnostic: same with the (1+|xi|)^2 weight
};

EnergyReport energy(const dyn::SimState& st);

// energy() of (I u, I u_t); bit-identical to energy() when m is identically
// one on the resolved modes.
EnergyReport modified_energy(const dyn::SimState& st,
                             const imethod::MultiplierSpec& m);

// d/dt E(Iu) along the flow:
//   < (Iu)^{2k+1} - I(u^{2k+1}), I u_t >   (real L2(dx) pairing),
// every product dealiased.
double commutator_pairing(const dyn::SimState& st,
                          const imethod::MultiplierSpec& m);

// Observer factories for evolve(); series names are stable keys.
dyn::Observer energy_observer();                              // "E"
dyn::Observer energy_drift_observer(double E0);               // "E_rel_drift"
dyn::Observer modified_energy_observer(imethod::MultiplierSpec m);
dyn::Observer pairing_observer(imethod::MultiplierSpec m);    // "ACL_N<value>"
dyn::Observer sobolev_observer(double s);                     // "Hs<value>"
dyn::Observer kinetic_sobolev_observer(double s);   // "Kin_Hs<value>" (s-1 weight on u_t/|xi|)
dyn::Observer lp_observer(int p);                             // "Lp<value>"

// Table of per-sample norms/functionals assembled from a trajectory's
// stored series; columns ordered as registered.
struct NormSeries {
    std::vector<std::string> columns; // excluding leading "t"
    std::vector<double> t;
    std::vector<std::vector<double>> rows; // rows[i][col]
};

NormSeries norm_series(const dyn::Trajectory& traj,
                       std::span<const std::string> columns);

// Same table computed directly from the trajectory's stored states:
// per sample t, ||u||_{H^s} and ||(-Dx^2)^{-1/2} u_t||_{H^{s-1}} for each
// requested s, E, and E(Iu) when a multiplier is given.
NormSeries norm_series(const dyn::Trajectory& traj,
                       std::span<const double> s_list,
                       const imethod::MultiplierSpec* m = nullptr);

// sup_t |E(Iu)(t) - E(Iu)(0)| read from the trajectory's modified-energy
// series; throws if the observer was not attached for this m.
double drift(const dyn::Trajectory& traj, const imethod::MultiplierSpec& m);

} // namespace gbq::fun

#endif
