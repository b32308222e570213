#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "pfopt/kernels/kernels.hpp"

namespace pfopt::kernels {

#define PFOPT_KERNEL_DECLS                                                                      \
  void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,          \
                    std::span<const double> shifts, std::span<std::int32_t> counts,            \
                    double pivmin);                                                            \
  void eval_batch(const PolyProgram& program, std::span<const double> coords, std::size_t count, \
                  std::span<double> out);

namespace scalar {
PFOPT_KERNEL_DECLS
// Single-point reference used for the tails of the vector loops.
std::int32_t sturm_count_one(std::span<const double> diag, std::span<const double> offdiag_sq,
                             double shift, double pivmin);
double eval_one(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                std::size_t j, double* powers);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
#define PFOPT_HAVE_AVX2_KERNELS 1
namespace avx2 {
PFOPT_KERNEL_DECLS
}
#endif

#if defined(__aarch64__)
#define PFOPT_HAVE_NEON_KERNELS 1
namespace neon {
PFOPT_KERNEL_DECLS
}
#endif

#undef PFOPT_KERNEL_DECLS

}  // namespace pfopt::kernels
