#ifndef GBQ_TYPES_HPP
#define GBQ_TYPES_HPP

#include <complex>
#include <vector>

#include "gbq/grid.hpp"

namespace gbq {

using cplx = std::complex<double>;

// Real samples u(x_n) on a grid.
struct Field {
    FourierGrid grid;
    std::vector<double> v;

    Field() = default;
    explicit Field(const FourierGrid& g) : grid(g), v(g.M, 0.0) {}
};

// Complex coefficients in the continuum convention
//   c[j] = dx * sum_n f(x_n) exp(-i x_n xi_j),
// stored in increasing-xi order (see FourierGrid).
struct Spectrum {
    FourierGrid grid;
    std::vector<cplx> c;

    Spectrum() = default;
    explicit Spectrum(const FourierGrid& g) : grid(g), c(g.M, cplx{}) {}
};

// Samples of a Fourier multiplier sigma(xi_j); real symbols carry zero
// imaginary parts.
struct SymbolTable {
    FourierGrid grid;
    std::vector<cplx> v;

    SymbolTable() = default;
    explicit SymbolTable(const FourierGrid& g) : grid(g), v(g.M, cplx{}) {}
};

} // namespace gbq

#endif
