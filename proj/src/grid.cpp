#include "gbq/grid.hpp"

namespace gbq {

FourierGrid FourierGrid::make(int M, double L) {
    if (M < 16 || M % 2 != 0)
        throw std::invalid_argument("FourierGrid: M must be even and >= 16");
    if (!(L > 0.0)) throw std::invalid_argument("FourierGrid: L must be positive");
    FourierGrid g;
    g.L = L;
    g.M = M;
    g.dx = L / M;
    g.x0 = -L / 2.0;
    g.xi.resize(M);
    const double d = 2.0 * M_PI / L;
    for (int j = 0; j < M; ++j) g.xi[j] = d * (j - M / 2);
    return g;
}

} // namespace gbq
