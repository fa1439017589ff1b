#ifndef GBQ_REFERENCE_HPP
#define GBQ_REFERENCE_HPP

#include <span>

#include "gbq/types.hpp"

namespace gbq::ref {

// Serial reference implementations, independent of the FFT/kernel paths.
// They back the unit-test oracles and the serial side of gbq_bench.

// O(M^2) direct evaluation of the forward transform.
Spectrum brute_forward(const Field& f);

// O(M^2) direct evaluation of the inverse transform.
Field brute_inverse(const Spectrum& F);

// Spectrum of the product of `factors` restricted to resolved modes, by
// dense convolution of coefficient sequences (exact in exact arithmetic;
// +-Nyquist contributions fold into the unpaired bin).
Spectrum dense_convolution(std::span<const Spectrum> factors);

// Composite-trapezoid quadrature of g over [a, b] with n panels.
double quadrature(double (*g)(double, const void*), const void* ctx, double a,
                  double b, int n);

// Plain-loop reductions (textbook order) mirroring gbq::kern.
double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w);
double pow_sum(std::span<const double> v, int p);
double dot_re(std::span<const cplx> a, std::span<const cplx> b);
void pow_int(std::span<double> y, std::span<const double> x, int p);

} // namespace gbq::ref

#endif
