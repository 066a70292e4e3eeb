#pragma once

// Batch kernels on split real/imaginary arrays. `scalar` is the reference;
// `avx2` must agree with it to about 1e-13 relative.

#include <complex>

namespace expderham::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);
bool avx2_supported();
/// EXPDERHAM_SIMD=scalar|avx2|auto, defaulting to the best supported kernel.
Isa active_isa();

/// out = p(z) with p given by complex coefficients c[0..m).
void horner(const std::complex<double>* c, int m, const double* zr, const double* zi, double* outr, double* outi,
            int n, Isa isa);
/// out = exp(a)
void cexp(const double* ar, const double* ai, double* outr, double* outi, int n, Isa isa);
/// sum_k w[k] * f[k]
std::complex<double> weighted_sum(const double* w, const double* fr, const double* fi, int n, Isa isa);

namespace scalar {
void horner(const std::complex<double>* c, int m, const double* zr, const double* zi, double* outr, double* outi, int n);
void cexp(const double* ar, const double* ai, double* outr, double* outi, int n);
std::complex<double> weighted_sum(const double* w, const double* fr, const double* fi, int n);
}  // namespace scalar

namespace avx2 {
void horner(const std::complex<double>* c, int m, const double* zr, const double* zi, double* outr, double* outi, int n);
void cexp(const double* ar, const double* ai, double* outr, double* outi, int n);
std::complex<double> weighted_sum(const double* w, const double* fr, const double* fi, int n);
}  // namespace avx2

}  // namespace expderham::kernels
