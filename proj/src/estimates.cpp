#include "gbq/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gbq/datagen.hpp"
#include "gbq/fft.hpp"
#include "gbq/kernels.hpp"
#include "gbq/propagators.hpp"
#include "gbq/spectral.hpp"

namespace gbq::est {

double bump_cutoff(double t, double Tw) {
    const double tau = 2.0 * t / Tw - 1.0;
    const double d = 1.0 - tau * tau;
    if (d <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / d);
}

SpaceTimeBlock free_solution_block(const Spectrum& phi_hat,
                                   const Spectrum& psix_hat, int Q, double Tw) {
    require_same_grid(phi_hat.grid, psix_hat.grid, "free_solution_block");
    const FourierGrid& g = phi_hat.grid;
    const int M = g.M;

    double gmax = 0.0;
    for (int j = 0; j < M; ++j)
        if (std::abs(phi_hat.c[j]) > 0.0 || std::abs(psix_hat.c[j]) > 0.0)
            gmax = std::max(gmax, prop::gamma_of(g.xi[j]));
    if (M_PI * Q / Tw < 1.25 * gmax)
        throw std::invalid_argument(
            "free_solution_block: temporal sampling too sparse for gamma_max " +
            std::to_string(gmax));

    SpaceTimeBlock block;
    block.grid = g;
    block.Q = Q;
    block.Tw = Tw;
    block.values.resize(static_cast<std::size_t>(Q) * M);
    for (int q = 0; q < Q; ++q) {
        const double t = block.t(q);
        const double eta = bump_cutoff(t, Tw);
        if (eta == 0.0) {
            std::fill_n(block.values.begin() + static_cast<std::size_t>(q) * M, M, 0.0);
            continue;
        }
        auto [u, ut] = prop::free_evolution(t, phi_hat, psix_hat);
        const Field f = spectral::inverse(u);
        for (int n = 0; n < M; ++n)
            block.values[static_cast<std::size_t>(q) * M + n] = eta * f.v[n];
    }
    return block;
}

Spectrum band_data(const FourierGrid& g, double band_lo, double band_hi,
                   double amplitude, std::uint64_t seed) {
    if (band_hi >= g.nyquist())
        throw std::invalid_argument("band_data: band exceeds the Nyquist frequency");
    Spectrum F(g);
    const int h = g.M / 2;
    for (int r = 1; r < h; ++r) {
        const double xi = g.xi[h + r];
        if (xi < band_lo || xi > band_hi) continue;
        const double ph = 2.0 * M_PI * datagen::uniform01(seed, r);
        F.c[h + r] = amplitude * cplx(std::cos(ph), std::sin(ph));
        F.c[h - r] = std::conj(F.c[h + r]);
    }
    return F;
}

double xsb_norm(const SpaceTimeBlock& block, double s, double b) {
    const int M = block.grid.M;
    const int Q = block.Q;
    std::vector<cplx> buf(block.values.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = block.values[i];
    fft::dft2d(buf, Q, M, true);

    // FFTW bin -> signed frequency, no shifts needed for a pure L2 weight
    const double dxi_t = 2.0 * M_PI / block.Tw;
    const double dxi_x = 2.0 * M_PI / block.grid.L;
    std::vector<double> wx(M), gx(M);
    for (int n = 0; n < M; ++n) {
        const double xi = dxi_x * (n < M / 2 ? n : n - M);
        wx[n] = std::pow(1.0 + xi * xi, s); // <xi>^{2s}
        gx[n] = prop::gamma_of(xi);
    }
    double sum = 0.0;
    for (int q = 0; q < Q; ++q) {
        const double tau = dxi_t * (q < Q / 2 ? q : q - Q);
        double row = 0.0;
        const std::size_t base = static_cast<std::size_t>(q) * M;
        for (int n = 0; n < M; ++n) {
            const double d = std::abs(tau) - gx[n];
            const double wt = std::pow(1.0 + d * d, b); // <|tau|-gamma>^{2b}
            row += wt * wx[n] * std::norm(buf[base + n]);
        }
        sum += row;
    }
    const double dx = block.grid.dx;
    const double dt = block.Tw / Q;
    return std::sqrt(sum * (dx * dx * dt * dt) / (block.grid.L * block.Tw));
}

double lq_lp_norm(const SpaceTimeBlock& block, double q, double p) {
    if (!(q >= 1.0) || !(p >= 1.0))
        throw std::invalid_argument("lq_lp_norm: exponents must be >= 1");
    const int M = block.grid.M;
    const int Q = block.Q;
    const double dx = block.grid.dx;
    const double dt = block.Tw / Q;
    std::vector<double> rows(Q);
    for (int qq = 0; qq < Q; ++qq) {
        std::span<const double> row(block.values.data() +
                                        static_cast<std::size_t>(qq) * M,
                                    static_cast<std::size_t>(M));
        rows[qq] = std::isinf(p) ? kern::abs_max(row)
                                 : std::pow(kern::abs_pow_sum(row, p) * dx, 1.0 / p);
    }
    if (std::isinf(q)) {
        double m = 0.0;
        for (double r : rows) m = std::max(m, r);
        return m;
    }
    double s = 0.0;
    for (double r : rows) s += std::pow(r, q);
    return std::pow(s * dt, 1.0 / q);
}

bool admissible_pair(double q, double p) {
    if (std::isinf(q) && std::isinf(p)) return true;
    if ((q == 2.0 && p == 2.0) || (q == 4.0 && p == 4.0) || (q == 6.0 && p == 6.0))
        return true;
    if (std::isinf(q) || std::isinf(p)) return false;
    return std::abs(2.0 / q - (0.5 - 1.0 / p)) <= 1e-12;
}

RatioStats strichartz_ratio(std::span<const SpaceTimeBlock> ensemble, double q,
                            double p, double b) {
    if (!admissible_pair(q, p))
        throw std::invalid_argument("strichartz_ratio: inadmissible (q,p) pair");
    const double sigma = (std::isinf(q) && std::isinf(p)) ? b : 0.0;
    RatioStats st;
    for (const SpaceTimeBlock& u : ensemble) {
        const double num = lq_lp_norm(u, q, p);
        const double den = xsb_norm(u, sigma, b);
        st.ratios.push_back(num / std::max(den, 1e-300));
    }
    std::vector<double> sorted = st.ratios;
    std::sort(sorted.begin(), sorted.end());
    st.max = sorted.empty() ? 0.0 : sorted.back();
    st.median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    return st;
}

RatioStats bilinear_ratio(std::span<const SpaceTimeBlock> psi1,
                          std::span<const SpaceTimeBlock> psi2, double b) {
    if (psi1.size() != psi2.size())
        throw std::invalid_argument("bilinear_ratio: ensembles differ in size");
    RatioStats st;
    for (std::size_t m = 0; m < psi1.size(); ++m) {
        const SpaceTimeBlock& a = psi1[m];
        const SpaceTimeBlock& c = psi2[m];
        require_same_grid(a.grid, c.grid, "bilinear_ratio");
        if (a.Q != c.Q || a.Tw != c.Tw)
            throw std::invalid_argument("bilinear_ratio: block shapes differ");
        const int M = a.grid.M;
        const int Q = a.Q;
        // D^{1/2} psi1 row by row in space
        std::vector<cplx> row(M);
        double sum = 0.0;
        for (int qq = 0; qq < Q; ++qq) {
            const std::size_t base = static_cast<std::size_t>(qq) * M;
            for (int n = 0; n < M; ++n) row[n] = a.values[base + n];
            fft::dft(row, true);
            const double dxi = 2.0 * M_PI / a.grid.L;
            for (int n = 0; n < M; ++n) {
                const double xi = dxi * (n < M / 2 ? n : n - M);
                row[n] *= std::sqrt(std::abs(xi));
            }
            fft::dft(row, false);
            for (int n = 0; n < M; ++n) {
                const double prod = (row[n].real() / M) * c.values[base + n];
                sum += prod * prod;
            }
        }
        const double num = std::sqrt(sum * a.grid.dx * (a.Tw / Q));
        const double den = xsb_norm(a, 0.0, b) * xsb_norm(c, 0.0, b);
        st.ratios.push_back(num / std::max(den, 1e-300));
    }
    std::vector<double> sorted = st.ratios;
    std::sort(sorted.begin(), sorted.end());
    st.max = sorted.empty() ? 0.0 : sorted.back();
    st.median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    return st;
}

} // namespace gbq::est
