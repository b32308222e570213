#include <cmath>
#include <vector>

#include "impl.hpp"

namespace pfopt::kernels::scalar {

std::int32_t sturm_count_one(std::span<const double> diag, std::span<const double> offdiag_sq,
                             double shift, double pivmin) {
  std::int32_t count = 0;
  double q = diag[0] - shift;
  if (std::fabs(q) < pivmin) q = -pivmin;
  count += q < 0.0;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = (diag[i] - shift) - offdiag_sq[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    count += q < 0.0;
  }
  return count;
}

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<std::int32_t> counts, double pivmin) {
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    counts[s] = sturm_count_one(diag, offdiag_sq, shifts[s], pivmin);
  }
}

double eval_one(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                std::size_t j, double* powers) {
  const std::size_t stride = program.max_degree + 1;
  for (std::size_t i = 0; i < program.n; ++i) {
    double* pw = powers + i * stride;
    const double x = coords[i * count + j];
    pw[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) pw[e] = pw[e - 1] * x;
  }
  double acc = 0.0;
  const std::uint32_t* exps = program.exponents.data();
  for (std::size_t t = 0; t < program.coefficients.size(); ++t, exps += program.n) {
    double term = program.coefficients[t];
    for (std::size_t i = 0; i < program.n; ++i) {
      if (exps[i] != 0) term = term * powers[i * stride + exps[i]];
    }
    acc = acc + term;
  }
  return acc;
}

void eval_batch(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                std::span<double> out) {
  std::vector<double> powers(program.n * (program.max_degree + 1));
  for (std::size_t j = 0; j < count; ++j) out[j] = eval_one(program, coords, count, j, powers.data());
}

}  // namespace pfopt::kernels::scalar
