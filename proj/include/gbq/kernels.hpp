#ifndef GBQ_KERNELS_HPP
#define GBQ_KERNELS_HPP

#include <complex>
#include <span>

namespace gbq::kern {

using cplx = std::complex<double>;

// Worker cap shared by the pointwise kernels and the experiment drivers.
// Resolution order: set_workers() > GBQ_WORKERS > omp_get_max_threads().
int workers();
void set_workers(int n);

// Reductions use a fixed block decomposition (block partials accumulated in
// index order), so results are bit-identical for any thread count.
inline constexpr std::size_t kReduceBlock = 1024;

// y[i] *= a[i]
void mul_inplace(std::span<cplx> y, std::span<const cplx> a);
void mul_inplace(std::span<cplx> y, std::span<const double> a);
void mul_inplace(std::span<double> y, std::span<const double> a);

// y[i] = x[i]^p (p >= 1)
void pow_int(std::span<double> y, std::span<const double> x, int p);

// sum_i w[i] * |c[i]|^2
double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w);
// sum_i |c[i]|^2
double abs2_sum(std::span<const cplx> c);
// sum_i v[i]^p
double pow_sum(std::span<const double> v, int p);
// sum_i |v[i]|^p for real p, and max_i |v[i]|
double abs_pow_sum(std::span<const double> v, double p);
double abs_max(std::span<const double> v);
// Re sum_i a[i] * conj(b[i])
double dot_re(std::span<const cplx> a, std::span<const cplx> b);

} // namespace gbq::kern

#endif
