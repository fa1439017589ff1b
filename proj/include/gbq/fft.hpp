#ifndef GBQ_FFT_HPP
#define GBQ_FFT_HPP

#include <complex>
#include <span>

namespace gbq::fft {

// Unnormalized in-place complex DFT of length a.size().
//   forward:  a[k] <- sum_n a[n] exp(-2*pi*i*n*k/n_total)
//   backward: a[n] <- sum_k a[k] exp(+2*pi*i*n*k/n_total)
// Plans (FFTW, FFTW_ESTIMATE) are cached per thread and per length; safe to
// call concurrently from different threads.
void dft(std::span<std::complex<double>> a, bool forward);

// Row-major Q x M in-place 2-D DFT, same conventions.
void dft2d(std::span<std::complex<double>> a, int Q, int M, bool forward);

// Smallest n >= lo with no prime factor beyond 7 (efficient FFTW sizes).
int next_fast_size(int lo);

} // namespace gbq::fft

#endif
