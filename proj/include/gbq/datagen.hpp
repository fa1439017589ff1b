#ifndef GBQ_DATAGEN_HPP
#define GBQ_DATAGEN_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gbq/types.hpp"

namespace gbq::datagen {

// Counter-based generator: value i of stream `seed` is
//   splitmix64(seed + i * 0x9E3779B97F4A7C15)
// finished to a double in [0,1) from the top 53 bits. Library-free and
// platform-stable, so run records reproduce anywhere.
std::uint64_t splitmix64(std::uint64_t z);
double uniform01(std::uint64_t seed, std::uint64_t counter);

// Derived stream seed for ensemble member `index`.
std::uint64_t member_seed(std::uint64_t root, std::uint64_t index);

// phi = A exp(-x^2 / (2 w^2)), psi = 0. Rejects widths whose boundary value
// exceeds 1e-10 * A (torus surrogate of the line).
std::pair<Field, Field> gaussian_data(double amplitude, double width,
                                      const FourierGrid& g);

// Random data at the H^s threshold:
//   |phi_hat(xi)| = A <xi>^{-(s+1/2)},  |psi_hat(xi)| = A <xi>^{-(s-1/2)},
// uniform phases, Hermitian symmetry, zero means, empty Nyquist bin.
// Options:
//   xi_cut > 0   smooth Gaussian taper beyond |xi| = xi_cut (compact tails)
//   traveling    phase-locks psi_hat = -<xi> phi_hat so every mode moves one
//                way (companion law unchanged)
struct RoughDataSpec {
    double s = 0.9;
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    double xi_cut = 0.0;
    bool traveling = false;
};

std::pair<Field, Field> rough_data(const RoughDataSpec& spec,
                                   const FourierGrid& g);

// Adds a one-way (traveling) spectral line at the mode nearest +-xi0 on top
// of existing data; used by the ACL identity probe.
void add_traveling_line(Field& phi, Field& psi, double xi0, double amplitude,
                        double phase);

// CSV ingestion, layout: header "x,phi,psi", M rows, decimal text.
void save_data_csv(const std::string& path, const Field& phi, const Field& psi);
std::pair<Field, Field> load_data(const std::string& path, const FourierGrid& g);

} // namespace gbq::datagen

#endif
