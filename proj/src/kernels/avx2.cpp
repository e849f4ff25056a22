#include "semnet/kernels/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define SEMNET_KERNELS_AVX2 1
#include <immintrin.h>
#endif

namespace semnet::kernels {

#ifdef SEMNET_KERNELS_AVX2

// Everything below carries a target attribute so the translation unit itself
// stays baseline; only the attributed functions may emit AVX2/FMA and they
// are only reachable after the cpuid check in avx2().
#define SEMNET_AVX2_FN __attribute__((target("avx2,fma")))

namespace {

// log2 for positive normal doubles. The mantissa is renormalised into
// [sqrt(1/2), sqrt(2)) and log(m) evaluated with the atanh series
//   log(m) = 2z * sum_{k>=0} z^(2k)/(2k+1),  z = (m-1)/(m+1), |z| <= 0.1716.
// Truncating after k = 10 leaves a relative tail below 1e-18. Error against
// std::log2 is a few ulp of the result; test_kernels.cpp pins the bound.
SEMNET_AVX2_FN inline __m256d vlog2_pd(__m256d x) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d two_log2e = _mm256_set1_pd(2.8853900817779268);  // 2/ln(2)

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52

  const __m256i bits = _mm256_castpd_si256(x);
  // biased exponent, converted to double with the 2^52 trick (sign bit clear)
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic)),
                            _mm256_set1_pd(4503599627370496.0 + 1023.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));  // [1, 2)

  const __m256d gt = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, half), gt);
  e = _mm256_add_pd(e, _mm256_and_pd(gt, one));

  const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d w = _mm256_mul_pd(z, z);

  __m256d p = _mm256_set1_pd(1.0 / 21.0);
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, w, _mm256_set1_pd(1.0 / 3.0));
  p = _mm256_fmadd_pd(p, w, one);

  return _mm256_fmadd_pd(_mm256_mul_pd(z, p), two_log2e, e);
}

SEMNET_AVX2_FN inline void npmi_block(const double* pair_w, const double* x_w,
                                      const double* y_w, __m256d vt, double* pmi,
                                      double* h, double* npmi) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d pxy = _mm256_div_pd(_mm256_loadu_pd(pair_w), vt);
  const __m256d px = _mm256_div_pd(_mm256_loadu_pd(x_w), vt);
  const __m256d py = _mm256_div_pd(_mm256_loadu_pd(y_w), vt);
  const __m256d vpmi = vlog2_pd(_mm256_div_pd(pxy, _mm256_mul_pd(px, py)));
  const __m256d vh = _mm256_sub_pd(zero, vlog2_pd(pxy));
  const __m256d raw = _mm256_div_pd(vpmi, vh);
  const __m256d hpos = _mm256_cmp_pd(vh, zero, _CMP_GT_OQ);
  _mm256_storeu_pd(pmi, vpmi);
  _mm256_storeu_pd(h, vh);
  _mm256_storeu_pd(npmi, _mm256_and_pd(raw, hpos));
}

SEMNET_AVX2_FN void npmi_batch_avx2(const double* pair_w, const double* x_w,
                                    const double* y_w, double total, double* pmi,
                                    double* h, double* npmi, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(total);
  const std::size_t full = n / 4 * 4;
  for (std::size_t i = 0; i < full; i += 4) {
    npmi_block(pair_w + i, x_w + i, y_w + i, vt, pmi + i, h + i, npmi + i);
  }
  if (const std::size_t rest = n - full; rest > 0) {
    // Pad the tail so every element goes through the identical vector math.
    double tp[4] = {1, 1, 1, 1}, tx[4] = {1, 1, 1, 1}, ty[4] = {1, 1, 1, 1};
    double op[4], oh[4], on[4];
    for (std::size_t k = 0; k < rest; ++k) {
      tp[k] = pair_w[full + k];
      tx[k] = x_w[full + k];
      ty[k] = y_w[full + k];
    }
    npmi_block(tp, tx, ty, vt, op, oh, on);
    for (std::size_t k = 0; k < rest; ++k) {
      pmi[full + k] = op[k];
      h[full + k] = oh[k];
      npmi[full + k] = on[k];
    }
  }
}

SEMNET_AVX2_FN inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

SEMNET_AVX2_FN void matvec_avx2(const double* a, const double* x, double* y,
                                std::size_t n) {
  const std::size_t full = n / 4 * 4;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = a + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < full; j += 4) {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), acc);
    }
    double s = hsum(acc);
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

SEMNET_AVX2_FN void add_in_place_avx2(double* y, const double* x, std::size_t n) {
  const std::size_t full = n / 4 * 4;
  std::size_t i = 0;
  for (; i < full; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] += x[i];
}

SEMNET_AVX2_FN double l2_norm_avx2(const double* x, std::size_t n) {
  const std::size_t full = n / 4 * 4;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < full; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return __builtin_sqrt(s);
}

SEMNET_AVX2_FN double max_abs_diff_avx2(const double* a, const double* b,
                                        std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const std::size_t full = n / 4 * 4;
  __m256d vmax = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < full; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, d));
  }
  double m = 0.0;
  {
    __m128d lo = _mm256_castpd256_pd128(vmax);
    const __m128d hi = _mm256_extractf128_pd(vmax, 1);
    lo = _mm_max_pd(lo, hi);
    m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  }
  for (; i < n; ++i) {
    const double d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    if (d > m) m = d;
  }
  return m;
}

SEMNET_AVX2_FN void scale_in_place_avx2(double* x, double s, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  const std::size_t full = n / 4 * 4;
  std::size_t i = 0;
  for (; i < full; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), vs));
  }
  for (; i < n; ++i) x[i] *= s;
}

const KernelTable avx2_table{
    "avx2",           npmi_batch_avx2,  matvec_avx2,
    add_in_place_avx2, l2_norm_avx2,    max_abs_diff_avx2,
    scale_in_place_avx2,
};

}  // namespace

const KernelTable* avx2() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table : nullptr;
}

#else

const KernelTable* avx2() { return nullptr; }

#endif  // SEMNET_KERNELS_AVX2

}  // namespace semnet::kernels
