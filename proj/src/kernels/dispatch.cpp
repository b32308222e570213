#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "impl.hpp"
#include "pfopt/error.hpp"
#include "pfopt/poly.hpp"
#include "pfopt/rational.hpp"

namespace pfopt::kernels {

namespace {

Isa widest_supported() {
#if defined(PFOPT_HAVE_AVX2_KERNELS)
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
#if defined(PFOPT_HAVE_NEON_KERNELS)
  return Isa::kNeon;
#endif
  return Isa::kScalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("PFOPT_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return widest_supported();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(PFOPT_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(PFOPT_HAVE_NEON_KERNELS)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() { return initial_isa(); }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("ISA " + std::string(isa_name(isa)) + " not supported on this CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<std::int32_t> counts, double pivmin) {
  if (diag.empty() || offdiag_sq.size() + 1 != diag.size() || counts.size() < shifts.size()) {
    throw DimensionMismatch("sturm_counts: inconsistent array lengths");
  }
  switch (active_isa()) {
#if defined(PFOPT_HAVE_AVX2_KERNELS)
    case Isa::kAvx2:
      return avx2::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
#endif
#if defined(PFOPT_HAVE_NEON_KERNELS)
    case Isa::kNeon:
      return neon::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
#endif
    default:
      return scalar::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
  }
}

PolyProgram compile(const Poly& p) {
  PolyProgram prog;
  prog.n = p.n();
  for (const auto& [m, c] : p.terms()) {
    prog.coefficients.push_back(to_double(c));
    for (std::size_t i = 0; i < p.n(); ++i) {
      prog.exponents.push_back(m[i]);
      prog.max_degree = std::max(prog.max_degree, m[i]);
    }
  }
  return prog;
}

void eval_batch(const PolyProgram& program, std::span<const double> coords, std::size_t count,
                std::span<double> out) {
  if (coords.size() < program.n * count || out.size() < count) {
    throw DimensionMismatch("eval_batch: buffers too small");
  }
  switch (active_isa()) {
#if defined(PFOPT_HAVE_AVX2_KERNELS)
    case Isa::kAvx2:
      return avx2::eval_batch(program, coords, count, out);
#endif
#if defined(PFOPT_HAVE_NEON_KERNELS)
    case Isa::kNeon:
      return neon::eval_batch(program, coords, count, out);
#endif
    default:
      return scalar::eval_batch(program, coords, count, out);
  }
}

}  // namespace pfopt::kernels
