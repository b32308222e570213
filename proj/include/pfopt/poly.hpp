#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pfopt/rational.hpp"

namespace pfopt {

/// Multi-index alpha of a monomial x^alpha.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  /// Total degree |alpha|.
  std::uint64_t degree() const noexcept;

  friend Monomial operator+(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order: lower total degree first, then larger
/// exponent vectors first, so 1 < x1 < x2 < x1^2 < x1 x2 < x2^2.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Size guard for products and powers.
struct PolyLimits {
  std::size_t max_terms = 5'000'000;
};

/// Sparse polynomial in n variables with exact rational coefficients.
/// Canonical: no zero coefficient is ever stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  explicit Poly(std::size_t n) : n_(n) {}
  /// Drops zero coefficients. Throws DimensionMismatch on a bad monomial.
  Poly(std::size_t n, Terms terms);
  Poly(std::size_t n, std::initializer_list<std::pair<Monomial, Rational>> terms);

  static Poly constant(std::size_t n, const Rational& c);
  /// The coordinate function x_i (0-based).
  static Poly variable(std::size_t n, std::size_t i);

  std::size_t n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Zero polynomial has degree 0.
  std::uint64_t degree() const noexcept;
  /// Largest exponent of variable i over all terms.
  std::uint32_t degree_in(std::size_t i) const;
  Rational coefficient(const Monomial& m) const;

  /// Adds c * m in place, removing the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  std::size_t n_;
  Terms terms_;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, const Rational& c);
Poly poly_mul(const Poly& p, const Poly& q, const PolyLimits& limits = {});
Poly poly_pow(const Poly& p, unsigned k, const PolyLimits& limits = {});

Rational poly_eval(const Poly& p, std::span<const Rational> point);
double poly_eval(const Poly& p, std::span<const double> point);

/// q(x) = p(A x + b). `a` is row-major n x n.
Poly poly_compose_affine(const Poly& p, std::span<const Rational> a, std::span<const Rational> b);

inline Poly operator+(const Poly& p, const Poly& q) { return poly_add(p, q); }
inline Poly operator-(const Poly& p, const Poly& q) { return poly_sub(p, q); }
inline Poly operator*(const Poly& p, const Poly& q) { return poly_mul(p, q); }

std::string to_string(const Poly& p);

/// Algebraic relation used to keep powers small on finite point sets where
/// it holds identically.
enum class ExponentReduction {
  kNone,
  kIdempotent,  // x_i^2 = x_i on {0,1}
  kInvolutive,  // x_i^2 = 1 on {-1,1}
};

/// Iterates f^0, f^1, ..., f^max_power with exact integer arithmetic.
///
/// f is written as F / d with F integer-coefficient and d the lcm of the
/// coefficient denominators, so f^k = F^k / d^k and the hot loop never
/// touches a gcd. Monomials are addressed by a mixed-radix index, which
/// makes monomial products index sums.
class PowerSequence {
 public:
  PowerSequence(const Poly& f, unsigned max_power,
                ExponentReduction reduction = ExponentReduction::kNone,
                const PolyLimits& limits = {});
  ~PowerSequence();
  PowerSequence(PowerSequence&&) noexcept;
  PowerSequence& operator=(PowerSequence&&) noexcept;

  /// k such that the current state holds f^k.
  unsigned power() const noexcept;
  /// Multiplies by f. Throws LimitExceeded past max_power or the term cap.
  void advance();
  /// d^k.
  const Integer& denominator() const noexcept;
  std::size_t term_count() const noexcept;

  /// Calls visit(exponents, numerator) for every nonzero term of d^k f^k.
  void for_each_term(const std::function<void(std::span<const std::uint32_t>, const Integer&)>& visit) const;

  /// The current power as an exact Poly.
  Poly current() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pfopt
