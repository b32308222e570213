#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "pfopt/measures.hpp"
#include "pfopt/pencil.hpp"
#include "pfopt/rational.hpp"

namespace pfopt {

/// Three-term recurrence of the monic orthogonal polynomials of a moment
/// functional: p_{j+1}(x) = (x - alpha[j]) p_j(x) - beta[j] p_{j-1}(x).
///
/// beta[0] holds the total mass seq[0], so that ||p_j||^2 = beta[0]...beta[j].
/// alpha has max_valid_r + 1 entries, beta has max_valid_r + 1 entries.
struct MonicRecurrence {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  /// Largest r with the (r+1) x (r+1) Hankel matrix strictly positive definite.
  std::size_t max_valid_r = 0;
  /// True if a zero pivot stopped the factorization before the requested r.
  bool rank_deficient = false;
};

/// Exact LDL^T of the Hankel matrix, rows 0..r+1 and columns 0..r; needs
/// seq up to index 2r+1. Throws SequenceTooShort, InvalidMomentSequence.
MonicRecurrence monic_recurrence_from_moments(const MomentSequence& seq, std::size_t r);

/// Symmetric tridiagonal matrix; offdiag.size() + 1 == diag.size().
struct TriDiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t order() const noexcept { return diag.size(); }
};

/// J_r: diag alpha[0..r], offdiag sqrt(beta[1..r]). Throws RankDeficient if
/// r > rec.max_valid_r.
TriDiag jacobi_truncation(const MonicRecurrence& rec, std::size_t r);

struct EigenRange {
  double lambda_min = 0;
  double lambda_max = 0;
};

/// Gershgorin interval of J.
EigenRange gershgorin_bounds(const TriDiag& j);

/// Eigenvalues of J strictly below x (Sturm sign count).
int sturm_count(const TriDiag& j, double x);

/// Extreme eigenvalues by multisection on Sturm counts (four shifts per
/// sweep, vectorized) followed by guarded Newton polish on the
/// characteristic recurrence. Absolute accuracy tol * max(1, rho), rho the
/// Gershgorin radius bound.
EigenRange tridiag_extreme_eigs(const TriDiag& j, double tol = 1e-13);

/// Orthonormal T_j(x) with respect to the moment functional.
/// Throws IndexOutOfRange if j > rec.max_valid_r.
double orthonormal_eval(const MonicRecurrence& rec, std::size_t j, double x);

/// Extreme eigenvalues of J_r. Throws RankDeficient past max_valid_r.
TauBounds tau_bounds_jacobi(const MomentSequence& seq, std::size_t r);

/// CSV rows j,alpha_num,alpha_den,beta_num,beta_den.
void write_recurrence_csv(std::ostream& os, const MonicRecurrence& rec);

}  // namespace pfopt
