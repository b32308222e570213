#pragma once

#include <cstddef>
#include <vector>

#include "pfopt/measures.hpp"
#include "pfopt/pencil.hpp"
#include "pfopt/poly.hpp"
#include "pfopt/sym_matrix.hpp"

namespace pfopt {

/// All multi-indices of total degree <= t in graded order (same order as
/// Poly's term map), so the basis for t is a prefix of the basis for t+1.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t n, std::size_t t);

  std::size_t n() const noexcept { return n_; }
  std::size_t degree() const noexcept { return t_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Monomial& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Monomial>& elements() const noexcept { return elements_; }

  /// C(n + t, n).
  static std::size_t count(std::size_t n, std::size_t t);

 private:
  std::size_t n_;
  std::size_t t_;
  std::vector<Monomial> elements_;
};

struct MvOptions {
  /// Largest accepted basis size s(r).
  std::size_t max_basis = 2000;
  PencilOptions pencil{};
};

/// Entry (a, b) = moment of x^(a+b).
SymMatrix<Rational> mv_moment_matrix(const MeasureSpec& spec, std::size_t r, const MvOptions& options = {});

/// Entry (a, b) = sum_g f_g * moment of x^(g+a+b).
SymMatrix<Rational> mv_localizing_matrix(const Poly& f, const MeasureSpec& spec, std::size_t r,
                                         const MvOptions& options = {});

/// theta_lower = lambda_min(localizing, moment), an upper bound on min f;
/// theta_upper = lambda_max, a lower bound on max f.
TauBounds theta_bounds(const Poly& f, const MeasureSpec& spec, std::size_t r, const MvOptions& options = {});

}  // namespace pfopt
