#include "expderham/quadrature/kernels.hpp"

#if defined(EXPDERHAM_HAVE_AVX2) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace expderham::kernels::avx2 {

namespace {

// exp(x) for |x| <= 700: x = n ln2 + r, degree-13 Taylor on |r| <= ln2/2.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);
  static const double c[14] = {1.0,
                               1.0,
                               1.0 / 2,
                               1.0 / 6,
                               1.0 / 24,
                               1.0 / 120,
                               1.0 / 720,
                               1.0 / 5040,
                               1.0 / 40320,
                               1.0 / 362880,
                               1.0 / 3628800,
                               1.0 / 39916800,
                               1.0 / 479001600,
                               1.0 / 6227020800.0};
  __m256d p = _mm256_set1_pd(c[13]);
  for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[k]));
  // 2^n through the exponent field, split in two factors so n near -1022 stays normal.
  const __m128i ni = _mm256_cvtpd_epi32(n);
  const __m128i half = _mm_srai_epi32(ni, 1);
  const __m128i rest = _mm_sub_epi32(ni, half);
  auto pow2 = [](__m128i e) {
    const __m256i e64 = _mm256_cvtepi32_epi64(e);
    return _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(e64, _mm256_set1_epi64x(1023)), 52));
  };
  return _mm256_mul_pd(_mm256_mul_pd(p, pow2(half)), pow2(rest));
}

// sin and cos for |y| <= 1e5 via three-part pi/2 reduction.
inline void sincos_pd(__m256d y, __m256d* s, __m256d* c) {
  const __m256d two_over_pi = _mm256_set1_pd(6.36619772367581382433e-01);
  const __m256d p1 = _mm256_set1_pd(1.57079632673412561417e+00);
  const __m256d p2 = _mm256_set1_pd(6.07710050630396597660e-11);
  const __m256d p3 = _mm256_set1_pd(2.02226624871116645580e-21);
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(y, two_over_pi), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, p1, y);
  r = _mm256_fnmadd_pd(k, p2, r);
  r = _mm256_fnmadd_pd(k, p3, r);
  const __m256d z = _mm256_mul_pd(r, r);
  __m256d ps = _mm256_set1_pd(1.58969099521155010221e-10);
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-2.50507602534068634195e-08));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(2.75573137070700676789e-06));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.98412698298579493134e-04));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(8.33333333332248946124e-03));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.66666666666666324348e-01));
  const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(ps, z), r, r);
  __m256d pc = _mm256_set1_pd(-1.13596475577881948265e-11);
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.08757232129817482790e-09));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-2.75573143513906633035e-07));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.48015872894767294178e-05));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.38888888888741095749e-03));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(4.16666666666666019037e-02));
  const __m256d z2 = _mm256_mul_pd(z, z);
  const __m256d cr = _mm256_fmadd_pd(pc, z2, _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));
  // quadrant q = k mod 4: (s, c) -> (s, c), (c, -s), (-s, -c), (-c, s)
  const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i q1 = _mm256_and_si256(q, _mm256_set1_epi64x(1));
  const __m256i q2 = _mm256_and_si256(q, _mm256_set1_epi64x(2));
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q1, _mm256_set1_epi64x(1)));
  const __m256d base_s = _mm256_blendv_pd(sr, cr, swap);
  const __m256d base_c = _mm256_blendv_pd(cr, sr, swap);
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d neg_s = _mm256_castsi256_pd(_mm256_cmpeq_epi64(q2, _mm256_set1_epi64x(2)));
  // cos flips sign in quadrants 1 and 2: q1 xor (q2 >> 1)
  const __m256i q2s = _mm256_srli_epi64(q2, 1);
  const __m256d neg_c = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_xor_si256(q1, q2s), _mm256_set1_epi64x(1)));
  *s = _mm256_xor_pd(base_s, _mm256_and_pd(neg_s, sign_bit));
  *c = _mm256_xor_pd(base_c, _mm256_and_pd(neg_c, sign_bit));
}

}  // namespace

void horner(const std::complex<double>* c, int m, const double* zr, const double* zi, double* outr, double* outi,
            int n) {
  int k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xr = _mm256_loadu_pd(zr + k), xi = _mm256_loadu_pd(zi + k);
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    for (int j = m - 1; j >= 0; --j) {
      const __m256d cr = _mm256_set1_pd(c[j].real()), ci = _mm256_set1_pd(c[j].imag());
      const __m256d tr = _mm256_fmsub_pd(ar, xr, _mm256_fmsub_pd(ai, xi, cr));
      const __m256d ti = _mm256_fmadd_pd(ar, xi, _mm256_fmadd_pd(ai, xr, ci));
      ar = tr;
      ai = ti;
    }
    _mm256_storeu_pd(outr + k, ar);
    _mm256_storeu_pd(outi + k, ai);
  }
  if (k < n) scalar::horner(c, m, zr + k, zi + k, outr + k, outi + k, n - k);
}

void cexp(const double* ar, const double* ai, double* outr, double* outi, int n) {
  int k = 0;
  const __m256d lim_r = _mm256_set1_pd(700.0), lim_i = _mm256_set1_pd(1e5);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(ar + k), y = _mm256_loadu_pd(ai + k);
    const __m256d bad = _mm256_or_pd(_mm256_cmp_pd(_mm256_and_pd(x, abs_mask), lim_r, _CMP_NLE_UQ),
                                     _mm256_cmp_pd(_mm256_and_pd(y, abs_mask), lim_i, _CMP_NLE_UQ));
    if (_mm256_movemask_pd(bad) != 0) {
      scalar::cexp(ar + k, ai + k, outr + k, outi + k, 4);
      continue;
    }
    const __m256d m = exp_pd(x);
    __m256d s, c;
    sincos_pd(y, &s, &c);
    _mm256_storeu_pd(outr + k, _mm256_mul_pd(m, c));
    _mm256_storeu_pd(outi + k, _mm256_mul_pd(m, s));
  }
  if (k < n) scalar::cexp(ar + k, ai + k, outr + k, outi + k, n - k);
}

std::complex<double> weighted_sum(const double* w, const double* fr, const double* fi, int n) {
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  int k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d wk = _mm256_loadu_pd(w + k);
    sr = _mm256_fmadd_pd(wk, _mm256_loadu_pd(fr + k), sr);
    si = _mm256_fmadd_pd(wk, _mm256_loadu_pd(fi + k), si);
  }
  alignas(32) double br[4], bi[4];
  _mm256_store_pd(br, sr);
  _mm256_store_pd(bi, si);
  double rr = (br[0] + br[1]) + (br[2] + br[3]);
  double ii = (bi[0] + bi[1]) + (bi[2] + bi[3]);
  for (; k < n; ++k) {
    rr += w[k] * fr[k];
    ii += w[k] * fi[k];
  }
  return {rr, ii};
}

}  // namespace expderham::kernels::avx2

#endif
