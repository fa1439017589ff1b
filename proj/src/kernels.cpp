#include "gbq/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace gbq::kern {

namespace {

std::atomic<int> g_workers{0};

int env_workers() {
    if (const char* e = std::getenv("GBQ_WORKERS")) {
        int n = std::atoi(e);
        if (n > 0) return n;
    }
    return 0;
}

// Loops below this size are not worth forking for.
constexpr std::size_t kParallelCutoff = 16384;

} // namespace

int workers() {
    int n = g_workers.load(std::memory_order_relaxed);
    if (n > 0) return n;
    n = env_workers();
    if (n > 0) return n;
    return omp_get_max_threads();
}

void set_workers(int n) { g_workers.store(n, std::memory_order_relaxed); }

void mul_inplace(std::span<cplx> y, std::span<const cplx> a) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for num_threads(workers()) if (y.size() >= kParallelCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= a[i];
}

void mul_inplace(std::span<cplx> y, std::span<const double> a) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for num_threads(workers()) if (y.size() >= kParallelCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= a[i];
}

void mul_inplace(std::span<double> y, std::span<const double> a) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for num_threads(workers()) if (y.size() >= kParallelCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= a[i];
}

void pow_int(std::span<double> y, std::span<const double> x, int p) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for num_threads(workers()) if (y.size() >= kParallelCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double b = x[i];
        double r = b;
        for (int q = 1; q < p; ++q) r *= b;
        y[i] = r;
    }
}

namespace {

// Fixed-block reduction: partials in block index order, independent of the
// thread count, so repeated runs agree bitwise.
template <class F>
double block_reduce(std::size_t n, F&& block_sum) {
    const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    if (nblocks <= 1) return n ? block_sum(0, n) : 0.0;
    std::vector<double> partial(nblocks);
    const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for num_threads(workers()) if (n >= kParallelCutoff)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
        const std::size_t hi = std::min(lo + kReduceBlock, n);
        partial[b] = block_sum(lo, hi);
    }
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

} // namespace

double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w) {
    return block_reduce(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
        return s;
    });
}

double abs2_sum(std::span<const cplx> c) {
    return block_reduce(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += c[i].real() * c[i].real() + c[i].imag() * c[i].imag();
        return s;
    });
}

double pow_sum(std::span<const double> v, int p) {
    return block_reduce(v.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            double b = v[i];
            double r = b;
            for (int q = 1; q < p; ++q) r *= b;
            s += r;
        }
        return s;
    });
}

double abs_pow_sum(std::span<const double> v, double p) {
    return block_reduce(v.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::pow(std::abs(v[i]), p);
        return s;
    });
}

double abs_max(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot_re(std::span<const cplx> a, std::span<const cplx> b) {
    return block_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        return s;
    });
}

} // namespace gbq::kern
