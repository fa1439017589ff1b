#include "gbq/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace gbq::ref {

Spectrum brute_forward(const Field& f) {
    const int M = f.grid.M;
    Spectrum F(f.grid);
    for (int j = 0; j < M; ++j) {
        cplx acc{};
        for (int n = 0; n < M; ++n) {
            const double ph = -f.grid.x(n) * f.grid.xi[j];
            acc += f.v[n] * cplx(std::cos(ph), std::sin(ph));
        }
        F.c[j] = f.grid.dx * acc;
    }
    return F;
}

Field brute_inverse(const Spectrum& F) {
    const int M = F.grid.M;
    Field f(F.grid);
    for (int n = 0; n < M; ++n) {
        cplx acc{};
        for (int j = 0; j < M; ++j) {
            const double ph = F.grid.x(n) * F.grid.xi[j];
            acc += F.c[j] * cplx(std::cos(ph), std::sin(ph));
        }
        f.v[n] = acc.real() / F.grid.L;
    }
    return f;
}

Spectrum dense_convolution(std::span<const Spectrum> factors) {
    if (factors.empty())
        throw std::invalid_argument("dense_convolution: no factors");
    const FourierGrid& g = factors[0].grid;
    const int M = g.M;
    const int h = M / 2;
    // signed integer mode indices: j - M/2 in [-h, h)
    // accumulate full convolution over an extended index range, then fold
    const int nf = static_cast<int>(factors.size());
    const int ext = nf * h + 1;
    // signed coefficient line of one factor; the unpaired bin is the real
    // interpolant's cosine, so it splits evenly across +-Nyquist
    auto signed_line = [&](const Spectrum& F) {
        std::vector<cplx> line(2 * h + 1, cplx{});
        for (int j = 1; j < M; ++j) line[(j - h) + h] = F.c[j];
        line[0] = 0.5 * F.c[0];
        line[2 * h] = 0.5 * F.c[0];
        return line;
    };
    std::vector<cplx> acc(2 * ext + 1, cplx{});
    std::vector<cplx> next(2 * ext + 1);
    {
        const auto line = signed_line(factors[0]);
        for (int b = -h; b <= h; ++b) acc[b + ext] = line[b + h];
    }
    for (int fidx = 1; fidx < nf; ++fidx) {
        std::fill(next.begin(), next.end(), cplx{});
        require_same_grid(g, factors[fidx].grid, "dense_convolution");
        const auto line = signed_line(factors[fidx]);
        for (int a = -ext; a <= ext; ++a) {
            const cplx va = acc[a + ext];
            if (va == cplx{}) continue;
            for (int b = -h; b <= h; ++b) {
                const int out = a + b;
                if (out < -ext || out > ext) continue;
                next[out + ext] += va * line[b + h];
            }
        }
        acc.swap(next);
    }
    // continuum normalization: an n-factor product carries (1/L)^{n-1}
    Spectrum out(g);
    double scale = 1.0;
    for (int i = 1; i < nf; ++i) scale /= g.L;
    for (int j = 1; j < M; ++j) out.c[j] = scale * acc[(j - h) + ext];
    out.c[0] = scale * (acc[-h + ext] + acc[h + ext]);
    return out;
}

double quadrature(double (*g)(double, const void*), const void* ctx, double a,
                  double b, int n) {
    const double h = (b - a) / n;
    double s = 0.5 * (g(a, ctx) + g(b, ctx));
    for (int i = 1; i < n; ++i) s += g(a + i * h, ctx);
    return s * h;
}

double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += w[i] * std::norm(c[i]);
    return s;
}

double pow_sum(std::span<const double> v, int p) {
    double s = 0.0;
    for (double x : v) {
        double r = x;
        for (int q = 1; q < p; ++q) r *= x;
        s += r;
    }
    return s;
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

void pow_int(std::span<double> y, std::span<const double> x, int p) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        double r = x[i];
        for (int q = 1; q < p; ++q) r *= x[i];
        y[i] = r;
    }
}

} // namespace gbq::ref
