#pragma once

#include <cstddef>

#include "pfopt/measures.hpp"
#include "pfopt/rational.hpp"
#include "pfopt/sym_matrix.hpp"

namespace pfopt {

/// (r+1) x (r+1) Hankel matrix with entries seq[i+j].
SymMatrix<Rational> hankel_moment(const MomentSequence& seq, std::size_t r);

/// (r+1) x (r+1) localizing matrix for g(x) = x: entries seq[i+j+1].
SymMatrix<Rational> hankel_localizing(const MomentSequence& seq, std::size_t r);

SymMatrix<Extended> to_extended(const SymMatrix<Rational>& m);

struct PencilResult {
  double lambda_min = 0;
  double lambda_max = 0;
  /// Max over both extreme pairs of ||A x - lambda C x|| / ||x||, measured
  /// on the diagonally equilibrated pencil.
  double residual = 0;
};

struct PencilOptions {
  /// C counts as positive definite when every Cholesky pivot of the
  /// equilibrated matrix exceeds pd_tol * trace / order.
  double pd_tol = 1e-10;
  /// Results with a larger residual are rejected with NumericalError.
  double residual_tol = 1e-8;
};

/// Extreme generalized eigenvalues of the symmetric-definite pencil (A, C):
/// both matrices are equilibrated by diag(C)^{-1/2}, C = L L^T, and the
/// standard problem L^{-1} A L^{-T} is solved in binary128.
/// Throws NotPositiveDefinite, DimensionMismatch.
PencilResult pencil_extremes(const SymMatrix<Extended>& a, const SymMatrix<Extended>& c,
                             const PencilOptions& options = {});
PencilResult pencil_extremes(const SymMatrix<Rational>& a, const SymMatrix<Rational>& c,
                             const PencilOptions& options = {});

/// Upper bound on the minimum / lower bound on the maximum of the support.
struct TauBounds {
  double lower = 0;
  double upper = 0;
};

/// Extreme eigenvalues of the pencil (localizing, moment) at order r.
TauBounds tau_bounds_pencil(const MomentSequence& seq, std::size_t r, const PencilOptions& options = {});

}  // namespace pfopt
