#include "gbq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gbq/fft.hpp"
#include "gbq/kernels.hpp"

namespace gbq::spectral {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

bool all_finite(std::span<const cplx> v) {
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace

Spectrum forward(const Field& f) {
    if (!all_finite(f.v)) throw std::invalid_argument("forward: non-finite input");
    const int M = f.grid.M;
    std::vector<cplx> buf(M);
    for (int n = 0; n < M; ++n) buf[n] = f.v[n];
    fft::dft(buf, true);
    Spectrum F(f.grid);
    // c[j] = dx * exp(-i x0 xi_j) * DFT[f][(j - M/2) mod M]; with x0 = -L/2
    // the phase is (-1)^(j - M/2).
    const int h = M / 2;
    for (int j = 0; j < M; ++j) {
        const double sign = ((j - h) % 2 == 0) ? 1.0 : -1.0;
        F.c[j] = f.grid.dx * sign * buf[(j + h) % M];
    }
    return F;
}

Field inverse(const Spectrum& F, double rel_tol) {
    if (!all_finite(F.c)) throw std::invalid_argument("inverse: non-finite input");
    const int M = F.grid.M;
    const double res = hermitian_residual(F);
    const double scale = std::sqrt(kern::abs2_sum(F.c));
    if (res > rel_tol * std::max(scale, 1e-300) && scale > 0.0)
        throw std::invalid_argument(
            "inverse: spectrum is not Hermitian symmetric (residual " +
            std::to_string(res) + ", ||c|| " + std::to_string(scale) + ")");
    const int h = M / 2;
    std::vector<cplx> buf(M);
    for (int j = 0; j < M; ++j) {
        const double sign = ((j - h) % 2 == 0) ? 1.0 : -1.0;
        buf[(j + h) % M] = sign * F.c[j];
    }
    fft::dft(buf, false);
    Field f(F.grid);
    const double inv_L = 1.0 / F.grid.L;
    for (int n = 0; n < M; ++n) f.v[n] = buf[n].real() * inv_L;
    return f;
}

double hermitian_residual(const Spectrum& F) {
    const int M = F.grid.M;
    double worst = std::abs(F.c[0].imag()); // unpaired -Nyquist mode
    for (int j = 1; j <= M / 2; ++j) {
        const cplx d = F.c[j] - std::conj(F.c[M - j]);
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

Spectrum apply_multiplier(const Spectrum& F, const SymbolTable& sigma) {
    require_same_grid(F.grid, sigma.grid, "apply_multiplier");
    Spectrum out = F;
    kern::mul_inplace(std::span<cplx>(out.c), std::span<const cplx>(sigma.v));
    return out;
}

namespace {

double weighted_l2(const Spectrum& F, double s, bool linear_bracket) {
    const int M = F.grid.M;
    std::vector<double> w(M);
    for (int j = 0; j < M; ++j) {
        const double xi = F.grid.xi[j];
        const double br = linear_bracket ? 1.0 + std::abs(xi)
                                        : std::sqrt(1.0 + xi * xi);
        w[j] = std::pow(br, 2.0 * s);
    }
    const double sum = kern::weighted_abs2_sum(F.c, w);
    return std::sqrt(sum / F.grid.L);
}

} // namespace

double sobolev_norm(const Spectrum& F, double s) { return weighted_l2(F, s, false); }

double sobolev_norm_linear_bracket(const Spectrum& F, double s) { return weighted_l2(F, s, true); }

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) return kern::abs_max(f.v);
    const double s = kern::abs_pow_sum(f.v, p);
    return std::pow(s * f.grid.dx, 1.0 / p);
}

int padded_size(int M, int degree, int max_padded) {
    // one extra mode keeps the extreme product frequency degree*M/2 from
    // wrapping exactly onto the unpaired -Nyquist bin; the padded count must
    // stay even for the symmetric mode layout
    const int need = (degree + 1) * M / 2 + 2;
    int Mp = std::max(need + (need % 2), M);
    while (fft::next_fast_size(Mp) != Mp) Mp += 2;
    if (Mp > max_padded)
        throw std::length_error("dealias: padded grid " + std::to_string(Mp) +
                                " exceeds ceiling " + std::to_string(max_padded));
    return Mp;
}

std::vector<cplx> pad_modes(const Spectrum& F, int Mp) {
    const int M = F.grid.M;
    std::vector<cplx> G(Mp, cplx{});
    if (Mp == M) {
        std::copy(F.c.begin(), F.c.end(), G.begin());
        return G;
    }
    const int off = (Mp - M) / 2;
    for (int j = 1; j < M; ++j) G[j + off] = F.c[j];
    // the unpaired -Nyquist bin splits across +-Nyquist of the big grid
    G[off] = 0.5 * F.c[0];
    G[off + M] = 0.5 * F.c[0];
    return G;
}

void truncate_modes(std::span<const cplx> big, int Mp, Spectrum& out) {
    const int M = out.grid.M;
    if (Mp == M) {
        std::copy(big.begin(), big.end(), out.c.begin());
        return;
    }
    const int off = (Mp - M) / 2;
    for (int j = 1; j < M; ++j) out.c[j] = big[j + off];
    // +-Nyquist of the small grid alias onto the same samples: fold
    out.c[0] = big[off] + big[off + M];
}

void padded_samples(const Spectrum& F, int Mp, std::vector<cplx>& work,
                    std::vector<double>& out) {
    std::vector<cplx> G = pad_modes(F, Mp);
    work.resize(Mp);
    const int h = Mp / 2;
    for (int j = 0; j < Mp; ++j) work[(j + h) % Mp] = G[j];
    fft::dft(work, false);
    out.resize(Mp);
    const double inv_L = 1.0 / F.grid.L;
    for (int n = 0; n < Mp; ++n) out[n] = work[n].real() * inv_L;
}

namespace {

// forward transform of physical samples on the padded grid, then truncate
void forward_truncate(std::span<const double> samples, int Mp,
                      std::vector<cplx>& work, Spectrum& out) {
    work.resize(Mp);
    for (int n = 0; n < Mp; ++n) work[n] = samples[n];
    fft::dft(work, true);
    const double scale = out.grid.L / Mp; // dx of the padded grid
    std::vector<cplx> G(Mp);
    const int h = Mp / 2;
    for (int j = 0; j < Mp; ++j) G[j] = scale * work[(j + h) % Mp];
    truncate_modes(G, Mp, out);
}

} // namespace

Spectrum dealias_product(std::span<const Spectrum> factors, int degree,
                         int max_padded) {
    if (degree != static_cast<int>(factors.size()))
        throw std::invalid_argument("dealias_product: degree != #factors");
    if (factors.empty()) throw std::invalid_argument("dealias_product: no factors");
    const FourierGrid& g = factors[0].grid;
    for (const Spectrum& F : factors)
        require_same_grid(g, F.grid, "dealias_product");
    const int Mp = padded_size(g.M, degree, max_padded);
    std::vector<cplx> work;
    std::vector<double> prod, samples;
    padded_samples(factors[0], Mp, work, prod);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        padded_samples(factors[i], Mp, work, samples);
        kern::mul_inplace(std::span<double>(prod), std::span<const double>(samples));
    }
    Spectrum out(g);
    forward_truncate(prod, Mp, work, out);
    return out;
}

Spectrum dealias_power(const Spectrum& F, int p, int max_padded) {
    if (p < 1) throw std::invalid_argument("dealias_power: p >= 1 required");
    const int Mp = padded_size(F.grid.M, p, max_padded);
    std::vector<cplx> work;
    std::vector<double> samples;
    padded_samples(F, Mp, work, samples);
    kern::pow_int(samples, samples, p);
    Spectrum out(F.grid);
    forward_truncate(samples, Mp, work, out);
    return out;
}

double dealiased_power_integral(const Spectrum& F, int p, int max_padded) {
    const int Mp = padded_size(F.grid.M, p, max_padded);
    std::vector<cplx> work;
    std::vector<double> samples;
    padded_samples(F, Mp, work, samples);
    const double s = kern::pow_sum(samples, p);
    return s * (F.grid.L / Mp);
}

} // namespace gbq::spectral
