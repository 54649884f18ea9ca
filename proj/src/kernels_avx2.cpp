// AVX2+FMA variants of the kernel table. This translation unit is built
// with -mavx2 -mfma on x86-64; callers must gate on avx2_available().

#include "netprobe/kernels.hpp"

#if defined(__x86_64__)
#include <immintrin.h>

namespace netprobe::kernels {
namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void axpby_avx2(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d x0 = _mm256_loadu_pd(x + i);
    __m256d x1 = _mm256_loadu_pd(x + i + 4);
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, x0, _mm256_mul_pd(vb, y0)));
    _mm256_storeu_pd(out + i + 4,
                     _mm256_fmadd_pd(va, x1, _mm256_mul_pd(vb, y1)));
  }
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(x + i);
    __m256d y0 = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, x0, _mm256_mul_pd(vb, y0)));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double squared_norm_avx2(const double* x, std::size_t n) {
  return dot_avx2(x, x, n);
}

double indexed_sum_avx2(const double* v, const std::uint32_t* idx,
                        std::size_t k) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= k; i += 4) {
    __m128i vi =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    acc = _mm256_add_pd(acc, _mm256_i32gather_pd(v, vi, 8));
  }
  double total = hsum(acc);
  for (; i < k; ++i) total += v[idx[i]];
  return total;
}

void accumulate_columns_avx2(const double* mat, std::size_t rows,
                             const std::uint32_t* idx, std::size_t k,
                             double* out) {
  std::size_t i = 0;
  for (; i + 2 <= k; i += 2) {
    const double* c0 = mat + static_cast<std::size_t>(idx[i]) * rows;
    const double* c1 = mat + static_cast<std::size_t>(idx[i + 1]) * rows;
    std::size_t r = 0;
    for (; r + 4 <= rows; r += 4) {
      __m256d acc = _mm256_loadu_pd(out + r);
      acc = _mm256_add_pd(acc, _mm256_loadu_pd(c0 + r));
      acc = _mm256_add_pd(acc, _mm256_loadu_pd(c1 + r));
      _mm256_storeu_pd(out + r, acc);
    }
    for (; r < rows; ++r) out[r] += c0[r] + c1[r];
  }
  if (i < k) {
    const double* c0 = mat + static_cast<std::size_t>(idx[i]) * rows;
    std::size_t r = 0;
    for (; r + 4 <= rows; r += 4) {
      _mm256_storeu_pd(
          out + r, _mm256_add_pd(_mm256_loadu_pd(out + r),
                                 _mm256_loadu_pd(c0 + r)));
    }
    for (; r < rows; ++r) out[r] += c0[r];
  }
}

}  // namespace

namespace detail {

const Ops* avx2_table() {
  static const Ops table = {axpby_avx2, dot_avx2, squared_norm_avx2,
                            indexed_sum_avx2, accumulate_columns_avx2};
  return &table;
}

}  // namespace detail
}  // namespace netprobe::kernels

#else  // !__x86_64__

namespace netprobe::kernels::detail {

const Ops* avx2_table() { return nullptr; }

}  // namespace netprobe::kernels::detail

#endif
