#include "pfopt/pencil.hpp"

#include <string>
#include <vector>

#include "pfopt/error.hpp"
#include "pfopt/symmetric_eigen.hpp"

namespace pfopt {

namespace {

void require_length(const MomentSequence& seq, std::size_t needed_index) {
  if (seq.size() <= needed_index) {
    throw SequenceTooShort("moment sequence has " + std::to_string(seq.size()) + " entries, index " +
                           std::to_string(needed_index) + " required");
  }
}

SymMatrix<Rational> hankel_shifted(const MomentSequence& seq, std::size_t r, std::size_t shift) {
  require_length(seq, 2 * r + shift);
  SymMatrix<Rational> h(r + 1);
  for (std::size_t i = 0; i <= r; ++i) {
    for (std::size_t j = i; j <= r; ++j) h.set(i, j, seq[i + j + shift]);
  }
  return h;
}

}  // namespace

SymMatrix<Rational> hankel_moment(const MomentSequence& seq, std::size_t r) { return hankel_shifted(seq, r, 0); }

SymMatrix<Rational> hankel_localizing(const MomentSequence& seq, std::size_t r) {
  return hankel_shifted(seq, r, 1);
}

SymMatrix<Extended> to_extended(const SymMatrix<Rational>& m) {
  return m.map<Extended>([](const Rational& q) { return to_real<Extended>(q); });
}

PencilResult pencil_extremes(const SymMatrix<Extended>& a, const SymMatrix<Extended>& c,
                             const PencilOptions& options) {
  using std::sqrt;
  const std::size_t n = c.order();
  if (a.order() != n) throw DimensionMismatch("pencil matrices have different orders");
  if (n == 0) throw DimensionMismatch("empty pencil");

  // Equilibrate: scaled C has unit diagonal, so trace / order = 1.
  std::vector<Extended> scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c(i, i) > 0)) {
      throw NotPositiveDefinite("right-hand matrix has a non-positive diagonal entry at " + std::to_string(i),
                                static_cast<int>(i));
    }
    scale[i] = Extended(1) / sqrt(c(i, i));
  }
  std::vector<Extended> as(n * n), cs(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      as[i * n + j] = a(i, j) * scale[i] * scale[j];
      cs[i * n + j] = c(i, j) * scale[i] * scale[j];
    }
  }

  // Cholesky C = L L^T, lower triangle of `l`.
  const Extended threshold = Extended(options.pd_tol);
  std::vector<Extended> l(n * n, Extended(0));
  for (std::size_t j = 0; j < n; ++j) {
    Extended pivot = cs[j * n + j];
    for (std::size_t k = 0; k < j; ++k) pivot -= l[j * n + k] * l[j * n + k];
    if (!(pivot > threshold)) {
      throw NotPositiveDefinite("moment matrix is not positive definite at order " + std::to_string(j + 1) +
                                    " (pivot " + pivot.str(6) + ")",
                                static_cast<int>(j));
    }
    const Extended ljj = sqrt(pivot);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Extended v = cs[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = v / ljj;
    }
  }

  // Forward solve L Y = B in place, column by column.
  auto forward = [&](std::vector<Extended>& b) {
    for (std::size_t col = 0; col < n; ++col) {
      for (std::size_t i = 0; i < n; ++i) {
        Extended v = b[i * n + col];
        for (std::size_t k = 0; k < i; ++k) v -= l[i * n + k] * b[k * n + col];
        b[i * n + col] = v / l[i * n + i];
      }
    }
  };
  // M = L^{-1} (L^{-1} A)^T, then symmetrized.
  std::vector<Extended> x = as;
  forward(x);
  std::vector<Extended> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = x[j * n + i];
  }
  forward(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Extended avg = (m[i * n + j] + m[j * n + i]) / 2;
      m[i * n + j] = avg;
      m[j * n + i] = avg;
    }
  }

  const SymmetricEigen<Extended> eig = symmetric_eigen(std::move(m), n);

  // Back-transform y -> x = L^{-T} y and measure the pencil residual.
  auto residual_for = [&](std::size_t col) {
    std::vector<Extended> v(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Extended s = eig.vector_entry(ii, col);
      for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * v[k];
      v[ii] = s / l[ii * n + ii];
    }
    const Extended lambda = eig.values[col];
    Extended num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Extended r = 0;
      for (std::size_t j = 0; j < n; ++j) r += (as[i * n + j] - lambda * cs[i * n + j]) * v[j];
      num += r * r;
      den += v[i] * v[i];
    }
    return static_cast<double>(sqrt(num / den));
  };

  PencilResult result;
  result.lambda_min = static_cast<double>(eig.values.front());
  result.lambda_max = static_cast<double>(eig.values.back());
  result.residual = std::max(residual_for(0), residual_for(n - 1));
  if (!(result.residual <= options.residual_tol)) {
    throw NumericalError("pencil residual " + std::to_string(result.residual) + " above tolerance");
  }
  return result;
}

PencilResult pencil_extremes(const SymMatrix<Rational>& a, const SymMatrix<Rational>& c,
                             const PencilOptions& options) {
  return pencil_extremes(to_extended(a), to_extended(c), options);
}

TauBounds tau_bounds_pencil(const MomentSequence& seq, std::size_t r, const PencilOptions& options) {
  const PencilResult res = pencil_extremes(hankel_localizing(seq, r), hankel_moment(seq, r), options);
  return {res.lambda_min, res.lambda_max};
}

}  // namespace pfopt
