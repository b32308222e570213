#include "impl.hpp"

#if defined(PFOPT_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <vector>

#define PFOPT_AVX2 __attribute__((target("avx2")))

namespace pfopt::kernels::avx2 {

namespace {

PFOPT_AVX2 inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Same operation sequence as scalar::sturm_count_one, four shifts per lane.
PFOPT_AVX2 __m256d sturm_count4(std::span<const double> diag, std::span<const double> offdiag_sq,
                                __m256d shift, __m256d pivmin) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d neg_pivmin = _mm256_sub_pd(zero, pivmin);
  __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), shift);
  q = _mm256_blendv_pd(q, neg_pivmin, _mm256_cmp_pd(abs_pd(q), pivmin, _CMP_LT_OQ));
  __m256d count = _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one);
  for (std::size_t i = 1; i < diag.size(); ++i) {
    const __m256d d = _mm256_sub_pd(_mm256_set1_pd(diag[i]), shift);
    q = _mm256_sub_pd(d, _mm256_div_pd(_mm256_set1_pd(offdiag_sq[i - 1]), q));
    q = _mm256_blendv_pd(q, neg_pivmin, _mm256_cmp_pd(abs_pd(q), pivmin, _CMP_LT_OQ));
    count = _mm256_add_pd(count, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
  }
  return count;
}

}  // namespace

PFOPT_AVX2 void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                             std::span<const double> shifts, std::span<std::int32_t> counts,
                             double pivmin) {
  const __m256d piv = _mm256_set1_pd(pivmin);
  std::size_t s = 0;
  for (; s + 4 <= shifts.size(); s += 4) {
    const __m256d c = sturm_count4(diag, offdiag_sq, _mm256_loadu_pd(shifts.data() + s), piv);
    const __m128i ci = _mm256_cvtpd_epi32(c);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(counts.data() + s), ci);
  }
  for (; s < shifts.size(); ++s) counts[s] = scalar::sturm_count_one(diag, offdiag_sq, shifts[s], pivmin);
}

PFOPT_AVX2 void eval_batch(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                           std::span<double> out) {
  const std::size_t stride = program.max_degree + 1;
  // Four lanes per power, kept as plain doubles.
  std::vector<double> powers(4 * program.n * stride);
  std::vector<double> scalar_powers(program.n * stride);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    for (std::size_t i = 0; i < program.n; ++i) {
      double* pw = powers.data() + 4 * i * stride;
      const __m256d x = _mm256_loadu_pd(coords.data() + i * count + j);
      __m256d p = _mm256_set1_pd(1.0);
      _mm256_storeu_pd(pw, p);
      for (std::size_t e = 1; e < stride; ++e) {
        p = _mm256_mul_pd(p, x);
        _mm256_storeu_pd(pw + 4 * e, p);
      }
    }
    __m256d acc = _mm256_setzero_pd();
    const std::uint32_t* exps = program.exponents.data();
    for (std::size_t t = 0; t < program.coefficients.size(); ++t, exps += program.n) {
      __m256d term = _mm256_set1_pd(program.coefficients[t]);
      for (std::size_t i = 0; i < program.n; ++i) {
        if (exps[i] != 0) {
          term = _mm256_mul_pd(term, _mm256_loadu_pd(powers.data() + 4 * (i * stride + exps[i])));
        }
      }
      acc = _mm256_add_pd(acc, term);
    }
    _mm256_storeu_pd(out.data() + j, acc);
  }
  for (; j < count; ++j) out[j] = scalar::eval_one(program, coords, count, j, scalar_powers.data());
}

}  // namespace pfopt::kernels::avx2

#endif
