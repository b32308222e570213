#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// SIMD variants chosen at runtime. Every variant performs the same IEEE
// operations in the same order, so results are bit-identical across ISAs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pfopt {
class Poly;
}

namespace pfopt::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Widest ISA the running CPU supports. PFOPT_ISA=scalar|avx2|neon in the
/// environment overrides the choice if the CPU supports it.
Isa detected_isa();
Isa active_isa();
/// Throws std::invalid_argument if the CPU lacks the ISA.
void set_active_isa(Isa isa);

/// Restores the previous ISA on scope exit.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_active_isa(isa); }
  ~ScopedIsa() { set_active_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

/// For each shift x, the number of eigenvalues of the symmetric tridiagonal
/// matrix (diag, offdiag) strictly below x, from the signs of the pivots of
/// the LDL^T factorization of J - xI. `offdiag_sq` holds squared
/// off-diagonals (length diag.size() - 1). Pivots smaller than `pivmin` in
/// magnitude are replaced by -pivmin.
void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<std::int32_t> counts, double pivmin);

/// Double-precision image of a polynomial for bulk evaluation.
struct PolyProgram {
  std::size_t n = 0;
  std::uint32_t max_degree = 0;
  std::vector<double> coefficients;     // one per term
  std::vector<std::uint32_t> exponents; // n per term, term-major
};

PolyProgram compile(const Poly& p);

/// out[j] = p(point j). Coordinates are structure-of-arrays:
/// coords[i * count + j] is coordinate i of point j.
void eval_batch(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                std::span<double> out);

}  // namespace pfopt::kernels
