#ifndef GBQ_ESTIMATES_HPP
#define GBQ_ESTIMATES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gbq/types.hpp"

namespace gbq::est {

// Space-time samples u(x_n, t_q) on [0, Tw), q = 0..Q-1, with the C-infinity
// bump cutoff eta(t) = exp(1 - 1/(1 - tau^2)), tau = 2t/Tw - 1, applied; the
// temporal DFT of the cutoff block approximates the line transform.
struct SpaceTimeBlock {
    FourierGrid grid;
    int Q = 0;
    double Tw = 0.0;
    std::vector<double> values; // row-major: values[q * M + n]

    double t(int q) const { return Tw * q / Q; }
};

double bump_cutoff(double t, double Tw);

// Cutoff free solution from (phi_hat, psix_hat). Throws when the temporal
// sampling cannot resolve gamma over the data's spectral support
// (pi*Q/Tw < 1.25 * max gamma), i.e. too-sparse sampling.
SpaceTimeBlock free_solution_block(const Spectrum& phi_hat,
                                   const Spectrum& psix_hat, int Q, double Tw);

// Random band-limited data on [band_lo, band_hi] (positive side, mirrored),
// flat modulus `amplitude`, phases from the counter scheme; psi = 0.
Spectrum band_data(const FourierGrid& g, double band_lo, double band_hi,
                   double amplitude, std::uint64_t seed);

// ||<|tau| - gamma(xi)>^b <xi>^s u~||_{L2} under the same continuum
// normalization as the spatial transforms.
double xsb_norm(const SpaceTimeBlock& block, double s, double b);

// Mixed L^q_t L^p_x norm of the block samples (q or p may be infinity).
double lq_lp_norm(const SpaceTimeBlock& block, double q, double p);

// true if 2/q == 1/2 - 1/p or (q,p) is one of the special pairs
// (2,2) (4,4) (6,6) (inf,inf).
bool admissible_pair(double q, double p);

struct RatioStats {
    double max = 0.0;
    double median = 0.0;
    std::vector<double> ratios;
};

// ||u||_{L^q_t L^p_x} / ||u||_{X_{sigma, b}} per member; sigma = 1/2 + eps
// for the (inf, inf) case and 0 otherwise (eps = b - 1/2).
RatioStats strichartz_ratio(std::span<const SpaceTimeBlock> ensemble, double q,
                            double p, double b);

// ||(D^{1/2} psi1) psi2||_{L2} / (||psi1||_{X_{0,b}} ||psi2||_{X_{0,b}}).
RatioStats bilinear_ratio(std::span<const SpaceTimeBlock> psi1,
                          std::span<const SpaceTimeBlock> psi2, double b);

} // namespace gbq::est

#endif
