#ifndef GBQ_TEST_HELPERS_HPP
#define GBQ_TEST_HELPERS_HPP

#include <cmath>
#include <functional>

#include "gbq/datagen.hpp"
#include "gbq/spectral.hpp"
#include "gbq/types.hpp"

namespace gbq::test {

inline Field sampled(const FourierGrid& g, const std::function<double(double)>& f) {
    Field out(g);
    for (int n = 0; n < g.M; ++n) out.v[n] = f(g.x(n));
    return out;
}

inline Field random_field(const FourierGrid& g, std::uint64_t seed) {
    Field out(g);
    for (int n = 0; n < g.M; ++n)
        out.v[n] = datagen::uniform01(seed, n) - 0.5;
    return out;
}

inline double rel_l2_diff(const Spectrum& a, const Spectrum& b) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < a.grid.M; ++j) {
        num += std::norm(a.c[j] - b.c[j]);
        den += std::norm(b.c[j]);
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

inline double max_abs_diff(const Spectrum& a, const Spectrum& b) {
    double m = 0.0;
    for (int j = 0; j < a.grid.M; ++j)
        m = std::max(m, std::abs(a.c[j] - b.c[j]));
    return m;
}

} // namespace gbq::test

#endif
