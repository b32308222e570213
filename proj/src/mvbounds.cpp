#include "pfopt/mvbounds.hpp"

#include <map>
#include <string>

#include "pfopt/error.hpp"

namespace pfopt {

namespace {

// Appends every exponent vector of exact total degree `remaining` over
// variables i..n-1 in decreasing lexicographic order.
void enumerate_degree(std::size_t i, std::size_t remaining, Monomial& cur, std::vector<Monomial>& out) {
  const std::size_t n = cur.size();
  if (i + 1 == n) {
    cur[i] = static_cast<std::uint32_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (std::size_t e = remaining + 1; e-- > 0;) {
    cur[i] = static_cast<std::uint32_t>(e);
    enumerate_degree(i + 1, remaining - e, cur, out);
  }
}

void check_basis(std::size_t n, std::size_t r, const MvOptions& options) {
  const std::size_t size = MonomialBasis::count(n, r);
  if (size > options.max_basis) {
    throw LimitExceeded("monomial basis of size " + std::to_string(size) + " exceeds cap " +
                        std::to_string(options.max_basis));
  }
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t n, std::size_t t) : n_(n), t_(t) {
  if (n == 0) throw ValidationError("basis dimension must be positive");
  elements_.reserve(count(n, t));
  Monomial cur(n);
  for (std::size_t d = 0; d <= t; ++d) enumerate_degree(0, d, cur, elements_);
}

std::size_t MonomialBasis::count(std::size_t n, std::size_t t) {
  // C(n+t, n) computed incrementally; exact at every step.
  std::size_t c = 1;
  for (std::size_t k = 1; k <= n; ++k) c = c * (t + k) / k;
  return c;
}

SymMatrix<Rational> mv_moment_matrix(const MeasureSpec& spec, std::size_t r, const MvOptions& options) {
  return mv_localizing_matrix(Poly::constant(spec.n, Rational(1)), spec, r, options);
}

SymMatrix<Rational> mv_localizing_matrix(const Poly& f, const MeasureSpec& spec, std::size_t r,
                                         const MvOptions& options) {
  if (f.n() != spec.n) throw DimensionMismatch("polynomial and measure dimensions differ");
  check_basis(spec.n, r, options);
  const MonomialBasis basis(spec.n, r);
  MomentFunctional moment(spec);

  // Entries depend only on a+b; evaluate each distinct sum once.
  std::map<Monomial, Rational, GradedLex> cache;
  auto entry = [&](const Monomial& sum) -> const Rational& {
    auto it = cache.find(sum);
    if (it != cache.end()) return it->second;
    Rational v(0);
    for (const auto& [g, c] : f.terms()) v += c * moment(g + sum);
    return cache.emplace(sum, std::move(v)).first->second;
  };

  SymMatrix<Rational> h(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = a; b < basis.size(); ++b) h.set(a, b, entry(basis[a] + basis[b]));
  }
  return h;
}

TauBounds theta_bounds(const Poly& f, const MeasureSpec& spec, std::size_t r, const MvOptions& options) {
  const PencilResult res =
      pencil_extremes(mv_localizing_matrix(f, spec, r, options), mv_moment_matrix(spec, r, options), options.pencil);
  return {res.lambda_min, res.lambda_max};
}

}  // namespace pfopt
