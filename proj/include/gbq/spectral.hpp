#ifndef GBQ_SPECTRAL_HPP
#define GBQ_SPECTRAL_HPP

#include <span>
#include <vector>

#include "gbq/types.hpp"

namespace gbq::spectral {

// Discrete approximation of f_hat(xi) = integral exp(-i x xi) f(x) dx.
// Rejects non-finite input.
Spectrum forward(const Field& f);

// Exact inverse of forward. Rejects spectra whose Hermitian-symmetry residual
// exceeds rel_tol * ||coeffs||_2 (the imaginary leftovers are reported).
Field inverse(const Spectrum& F, double rel_tol = 1e-12);

// Largest deviation |c[j] - conj(c[partner(j)])| over all modes.
double hermitian_residual(const Spectrum& F);

Spectrum apply_multiplier(const Spectrum& F, const SymbolTable& sigma);

// ||<xi>^s f_hat||_{L2} with <xi> = sqrt(1 + xi^2), i.e.
// sqrt((1/L) sum_j <xi_j>^{2s} |c_j|^2).
double sobolev_norm(const Spectrum& F, double s);

// Same weight family; linear bracket (1+|xi|)^s kept as a diagnostic.
double sobolev_norm_linear_bracket(const Spectrum& F, double s);

// (sum_n |f_n|^p dx)^{1/p}; p = infinity gives max |f_n|. Requires p >= 1.
double lp_norm(const Field& f, double p);

// Exact product of `factors` on the resolved modes: zero-pad each factor to
// at least (degree+1)*M/2 modes, multiply in physical space, transform back,
// truncate. degree must equal factors.size().
Spectrum dealias_product(std::span<const Spectrum> factors, int degree,
                         int max_padded = 1 << 22);

// Spectrum of u^p for one factor (single padded round trip).
Spectrum dealias_power(const Spectrum& F, int p, int max_padded = 1 << 22);

// integral u^{p} dx evaluated on the padded grid (p even for positivity).
double dealiased_power_integral(const Spectrum& F, int p,
                                int max_padded = 1 << 22);

// Internals shared with other modules (padding keeps the continuum
// normalization; the unpaired Nyquist bin is split/folded).
std::vector<cplx> pad_modes(const Spectrum& F, int Mp);
void truncate_modes(std::span<const cplx> big, int Mp, Spectrum& out);
int padded_size(int M, int degree, int max_padded);

// Physical samples (1/L) sum_j c_j exp(i n-index phase) on the padded grid;
// offset-free convention (grid origin irrelevant for pointwise products).
void padded_samples(const Spectrum& F, int Mp, std::vector<cplx>& work,
                    std::vector<double>& out);

} // namespace gbq::spectral

#endif
