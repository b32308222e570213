#include "impl.hpp"

#if defined(PFOPT_HAVE_NEON_KERNELS)

#include <arm_neon.h>

#include <vector>

namespace pfopt::kernels::neon {

namespace {

// Same operation sequence as scalar::sturm_count_one, two shifts per lane.
float64x2_t sturm_count2(std::span<const double> diag, std::span<const double> offdiag_sq,
                         float64x2_t shift, float64x2_t pivmin) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t neg_pivmin = vnegq_f64(pivmin);
  float64x2_t q = vsubq_f64(vdupq_n_f64(diag[0]), shift);
  q = vbslq_f64(vcltq_f64(vabsq_f64(q), pivmin), neg_pivmin, q);
  float64x2_t count = vbslq_f64(vcltq_f64(q, zero), one, zero);
  for (std::size_t i = 1; i < diag.size(); ++i) {
    const float64x2_t d = vsubq_f64(vdupq_n_f64(diag[i]), shift);
    q = vsubq_f64(d, vdivq_f64(vdupq_n_f64(offdiag_sq[i - 1]), q));
    q = vbslq_f64(vcltq_f64(vabsq_f64(q), pivmin), neg_pivmin, q);
    count = vaddq_f64(count, vbslq_f64(vcltq_f64(q, zero), one, zero));
  }
  return count;
}

}  // namespace

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<std::int32_t> counts, double pivmin) {
  const float64x2_t piv = vdupq_n_f64(pivmin);
  std::size_t s = 0;
  for (; s + 2 <= shifts.size(); s += 2) {
    const float64x2_t c = sturm_count2(diag, offdiag_sq, vld1q_f64(shifts.data() + s), piv);
    counts[s] = static_cast<std::int32_t>(vgetq_lane_f64(c, 0));
    counts[s + 1] = static_cast<std::int32_t>(vgetq_lane_f64(c, 1));
  }
  for (; s < shifts.size(); ++s) counts[s] = scalar::sturm_count_one(diag, offdiag_sq, shifts[s], pivmin);
}

void eval_batch(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                std::span<double> out) {
  const std::size_t stride = program.max_degree + 1;
  std::vector<float64x2_t> powers(program.n * stride);
  std::vector<double> scalar_powers(program.n * stride);
  std::size_t j = 0;
  for (; j + 2 <= count; j += 2) {
    for (std::size_t i = 0; i < program.n; ++i) {
      float64x2_t* pw = powers.data() + i * stride;
      const float64x2_t x = vld1q_f64(coords.data() + i * count + j);
      pw[0] = vdupq_n_f64(1.0);
      for (std::size_t e = 1; e < stride; ++e) pw[e] = vmulq_f64(pw[e - 1], x);
    }
    float64x2_t acc = vdupq_n_f64(0.0);
    const std::uint32_t* exps = program.exponents.data();
    for (std::size_t t = 0; t < program.coefficients.size(); ++t, exps += program.n) {
      float64x2_t term = vdupq_n_f64(program.coefficients[t]);
      for (std::size_t i = 0; i < program.n; ++i) {
        if (exps[i] != 0) term = vmulq_f64(term, powers[i * stride + exps[i]]);
      }
      acc = vaddq_f64(acc, term);
    }
    vst1q_f64(out.data() + j, acc);
  }
  for (; j < count; ++j) out[j] = scalar::eval_one(program, coords, count, j, scalar_powers.data());
}

}  // namespace pfopt::kernels::neon

#endif
