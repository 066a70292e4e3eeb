#include "expderham/quadrature/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace expderham::kernels {

namespace scalar {

void horner(const std::complex<double>* c, int m, const double* zr, const double* zi, double* outr, double* outi,
            int n) {
  for (int k = 0; k < n; ++k) {
    double ar = 0.0, ai = 0.0;
    for (int j = m - 1; j >= 0; --j) {
      const double tr = ar * zr[k] - ai * zi[k] + c[j].real();
      const double ti = ar * zi[k] + ai * zr[k] + c[j].imag();
      ar = tr;
      ai = ti;
    }
    outr[k] = ar;
    outi[k] = ai;
  }
}

void cexp(const double* ar, const double* ai, double* outr, double* outi, int n) {
  for (int k = 0; k < n; ++k) {
    const double m = std::exp(ar[k]);
    outr[k] = m * std::cos(ai[k]);
    outi[k] = m * std::sin(ai[k]);
  }
}

std::complex<double> weighted_sum(const double* w, const double* fr, const double* fi, int n) {
  double sr = 0.0, si = 0.0;
  for (int k = 0; k < n; ++k) {
    sr += w[k] * fr[k];
    si += w[k] * fi[k];
  }
  return {sr, si};
}

}  // namespace scalar

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(EXPDERHAM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("EXPDERHAM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

void horner(const std::complex<double>* c, int m, const double* zr, const double* zi, double* outr, double* outi,
            int n, Isa isa) {
#ifdef EXPDERHAM_HAVE_AVX2
  if (isa == Isa::avx2) return avx2::horner(c, m, zr, zi, outr, outi, n);
#endif
  (void)isa;
  scalar::horner(c, m, zr, zi, outr, outi, n);
}

void cexp(const double* ar, const double* ai, double* outr, double* outi, int n, Isa isa) {
#ifdef EXPDERHAM_HAVE_AVX2
  if (isa == Isa::avx2) return avx2::cexp(ar, ai, outr, outi, n);
#endif
  (void)isa;
  scalar::cexp(ar, ai, outr, outi, n);
}

std::complex<double> weighted_sum(const double* w, const double* fr, const double* fi, int n, Isa isa) {
#ifdef EXPDERHAM_HAVE_AVX2
  if (isa == Isa::avx2) return avx2::weighted_sum(w, fr, fi, n);
#endif
  (void)isa;
  return scalar::weighted_sum(w, fr, fi, n);
}

}  // namespace expderham::kernels
