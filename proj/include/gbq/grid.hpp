#ifndef GBQ_GRID_HPP
#define GBQ_GRID_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gbq {

// Periodic grid on [-L/2, L/2) with M collocation points and wavenumbers
// xi[j] = 2*pi*(j - M/2)/L, j = 0..M-1 (increasing, unpaired mode at j=0).
struct FourierGrid {
    double L = 0.0;
    int M = 0;
    double dx = 0.0;
    double x0 = 0.0;
    std::vector<double> xi;

    static FourierGrid make(int M, double L);

    double nyquist() const { return M_PI * static_cast<double>(M) / L; }
    double x(int n) const { return x0 + n * dx; }
    int zero_index() const { return M / 2; }

    // Hermitian partner of index j; j=0 is the unpaired -Nyquist mode.
    int conj_index(int j) const { return j == 0 ? 0 : M - j; }

    bool same(const FourierGrid& o) const { return M == o.M && L == o.L; }
};

inline void require_same_grid(const FourierGrid& a, const FourierGrid& b,
                              const char* where) {
    if (!a.same(b))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

} // namespace gbq

#endif
