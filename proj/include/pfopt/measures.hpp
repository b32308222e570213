#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfopt/poly.hpp"
#include "pfopt/rational.hpp"

namespace pfopt {

/// Reference sets with their normalized (probability) reference measures.
enum class MeasureKind {
  kBox,          // [-1,1]^n, Lebesgue
  kBall,         // unit Euclidean ball, Lebesgue
  kSphere,       // unit sphere S^{n-1}, rotation invariant
  kSimplex,      // {x >= 0, sum x <= 1}, Lebesgue
  kCube01,       // {0,1}^n, counting
  kCubePM1,      // {-1,1}^n, counting
  kGaussian,     // R^n, standard normal
  kExponential,  // R_+^n, product of Exp(1)
};

struct MeasureSpec {
  MeasureKind kind = MeasureKind::kBox;
  std::size_t n = 1;

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// Schema names: "box", "ball", "sphere", "simplex", "cube01", "cubepm1",
/// "gaussian", "exponential".
std::string_view kind_name(MeasureKind kind);
std::optional<MeasureKind> parse_kind(std::string_view name);
std::string describe(const MeasureSpec& spec);

bool is_discrete(const MeasureSpec& spec);
bool is_compact(const MeasureSpec& spec);
/// Relation that holds on the support and lets powers of f stay small.
ExponentReduction support_reduction(const MeasureSpec& spec);

/// Closed-form monomial moments. Keeps factorial tables between calls, so
/// an instance must not be shared across threads.
class MomentFunctional {
 public:
  explicit MomentFunctional(MeasureSpec spec);

  const MeasureSpec& spec() const noexcept { return spec_; }

  /// Integral of x^alpha against the normalized measure.
  Rational operator()(std::span<const std::uint32_t> alpha) const;
  Rational operator()(const Monomial& alpha) const { return (*this)(alpha.exponents()); }

  /// Integral of p against the measure.
  Rational integrate(const Poly& p) const;

 private:
  const Integer& factorial(std::uint64_t k) const;
  // (k-1)!! for even k, with (-1)!! = 1.
  const Integer& odd_double_factorial(std::uint64_t k) const;

  MeasureSpec spec_;
  mutable std::vector<Integer> factorials_;
  mutable std::vector<Integer> double_factorials_;
};

Rational monomial_moment(const MeasureSpec& spec, std::span<const std::uint32_t> alpha);
Rational monomial_moment(const MeasureSpec& spec, const Monomial& alpha);

/// Moments of the pushforward of the reference measure under f.
struct MomentSequence {
  std::vector<Rational> values;
  std::string source;

  std::size_t size() const noexcept { return values.size(); }
  const Rational& operator[](std::size_t k) const { return values.at(k); }
  /// Largest k available.
  std::size_t max_index() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

/// values[k] = integral of f^k, k = 0..max_k, exact.
MomentSequence pushforward_moments(const Poly& f, const MeasureSpec& spec, unsigned max_k,
                                   const PolyLimits& limits = {});

}  // namespace pfopt
