// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "sosgap/kernels/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sosgap/numerics/interval.hpp"

namespace sosgap::kernels {
namespace {

inline __m256d nudge_down(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d is_neg = _mm256_cmp_pd(x, zero, _CMP_LT_OQ);
  const __m256d is_zero = _mm256_cmp_pd(x, zero, _CMP_EQ_OQ);
  const __m256d keep = _mm256_or_pd(_mm256_cmp_pd(x, x, _CMP_UNORD_Q),
                                    _mm256_cmp_pd(x, _mm256_set1_pd(-INFINITY), _CMP_EQ_OQ));
  // Magnitude grows for negatives (+1 on the bit pattern), shrinks otherwise.
  const __m256i step = _mm256_or_si256(_mm256_castpd_si256(is_neg), _mm256_set1_epi64x(1));
  // is_neg lanes are all-ones (-1) | 1 = -1; others 1. Subtracting gives +1 / -1.
  __m256d r = _mm256_castsi256_pd(_mm256_sub_epi64(bits, step));
  r = _mm256_blendv_pd(r, _mm256_castsi256_pd(_mm256_set1_epi64x(INT64_C(0x8000000000000001))),
                       is_zero);
  return _mm256_blendv_pd(r, x, keep);
}

inline __m256d negate(__m256d x) { return _mm256_xor_pd(x, _mm256_set1_pd(-0.0)); }

inline __m256d nudge_up(__m256d x) { return negate(nudge_down(negate(x))); }

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpby_avx2(double alpha, const double* x, double beta, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) y[i] = alpha * x[i] + beta * y[i];
}

double norm_inf_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

void clamp_nonneg_avx2(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    // Keep v where v > 0 (NaN and -0 map to +0 as in the scalar loop).
    _mm256_storeu_pd(x + i, _mm256_and_pd(v, _mm256_cmp_pd(v, zero, _CMP_GT_OQ)));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void next_down_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, nudge_down(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = sosgap::next_down(x[i]);
}

void next_up_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, nudge_up(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = sosgap::next_up(x[i]);
}

IntervalSum interval_dot_avx2(const double* alo, const double* ahi, const double* blo,
                              const double* bhi, std::size_t n) {
  __m256d lo = _mm256_setzero_pd();
  __m256d hi = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d al = _mm256_loadu_pd(alo + i);
    const __m256d ah = _mm256_loadu_pd(ahi + i);
    const __m256d bl = _mm256_loadu_pd(blo + i);
    const __m256d bh = _mm256_loadu_pd(bhi + i);
    const __m256d p1 = _mm256_mul_pd(al, bl);
    const __m256d p2 = _mm256_mul_pd(al, bh);
    const __m256d p3 = _mm256_mul_pd(ah, bl);
    const __m256d p4 = _mm256_mul_pd(ah, bh);
    const __m256d pmin = _mm256_min_pd(_mm256_min_pd(p1, p2), _mm256_min_pd(p3, p4));
    const __m256d pmax = _mm256_max_pd(_mm256_max_pd(p1, p2), _mm256_max_pd(p3, p4));
    lo = nudge_down(_mm256_add_pd(lo, nudge_down(pmin)));
    hi = nudge_up(_mm256_add_pd(hi, nudge_up(pmax)));
  }
  alignas(32) double llo[4];
  alignas(32) double lhi[4];
  _mm256_store_pd(llo, lo);
  _mm256_store_pd(lhi, hi);
  double slo = llo[0];
  double shi = lhi[0];
  for (int k = 1; k < 4; ++k) {
    slo = sosgap::next_down(slo + llo[k]);
    shi = sosgap::next_up(shi + lhi[k]);
  }
  if (i < n) {
    double tlo = 0.0;
    double thi = 0.0;
    for (; i < n; ++i) {
      const double p1 = alo[i] * blo[i];
      const double p2 = alo[i] * bhi[i];
      const double p3 = ahi[i] * blo[i];
      const double p4 = ahi[i] * bhi[i];
      tlo = sosgap::next_down(tlo + sosgap::next_down(std::min(std::min(p1, p2), std::min(p3, p4))));
      thi = sosgap::next_up(thi + sosgap::next_up(std::max(std::max(p1, p2), std::max(p3, p4))));
    }
    slo = sosgap::next_down(slo + tlo);
    shi = sosgap::next_up(shi + thi);
  }
  return {slo, shi};
}

constexpr KernelTable kAvx2{
    "avx2",           dot_avx2,       axpy_avx2,      axpby_avx2,        norm_inf_avx2,
    clamp_nonneg_avx2, next_down_avx2, next_up_avx2, interval_dot_avx2,
};

}  // namespace

const KernelTable* avx2_table() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
}

}  // namespace sosgap::kernels

#else

namespace sosgap::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace sosgap::kernels

#endif
