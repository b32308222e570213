#include "pfopt/jacobi.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <string>

#include "pfopt/error.hpp"
#include "pfopt/kernels/kernels.hpp"

namespace pfopt {

MonicRecurrence monic_recurrence_from_moments(const MomentSequence& seq, std::size_t r) {
  if (seq.size() < 2 * r + 2) {
    throw SequenceTooShort("recurrence to order " + std::to_string(r) + " needs moments up to index " +
                           std::to_string(2 * r + 1));
  }
  const std::size_t rows = r + 2;
  std::vector<std::vector<Rational>> lower(rows);
  std::vector<Rational> pivots;
  pivots.reserve(r + 1);

  MonicRecurrence rec;
  for (std::size_t k = 0; k <= r; ++k) {
    Rational d = seq[2 * k];
    for (std::size_t m = 0; m < k; ++m) d -= lower[k][m] * lower[k][m] * pivots[m];
    if (sgn(d) < 0) {
      throw InvalidMomentSequence("Hankel pivot " + std::to_string(k) + " is negative: not a moment sequence");
    }
    if (sgn(d) == 0) {
      if (k == 0) throw InvalidMomentSequence("zero total mass");
      rec.rank_deficient = true;
      break;
    }
    pivots.push_back(d);
    for (std::size_t i = k + 1; i < rows; ++i) {
      Rational v = seq[i + k];
      for (std::size_t m = 0; m < k; ++m) v -= lower[i][m] * lower[k][m] * pivots[m];
      lower[i].push_back(v / d);
    }
  }

  const std::size_t valid = pivots.size();  // >= 1
  rec.max_valid_r = valid - 1;
  rec.alpha.reserve(valid);
  rec.beta.reserve(valid);
  for (std::size_t j = 0; j < valid; ++j) {
    Rational a = lower[j + 1][j];
    if (j > 0) a -= lower[j][j - 1];
    rec.alpha.push_back(a);
    rec.beta.push_back(j == 0 ? pivots[0] : Rational(pivots[j] / pivots[j - 1]));
  }
  return rec;
}

TriDiag jacobi_truncation(const MonicRecurrence& rec, std::size_t r) {
  if (r > rec.max_valid_r) {
    throw RankDeficient("order " + std::to_string(r) + " exceeds the rank limit " +
                            std::to_string(rec.max_valid_r) + " of the moment sequence",
                        static_cast<int>(rec.max_valid_r));
  }
  TriDiag j;
  j.diag.reserve(r + 1);
  j.offdiag.reserve(r);
  for (std::size_t i = 0; i <= r; ++i) j.diag.push_back(to_double(rec.alpha[i]));
  for (std::size_t i = 1; i <= r; ++i) {
    using std::sqrt;
    j.offdiag.push_back(static_cast<double>(sqrt(to_real<Extended>(rec.beta[i]))));
  }
  return j;
}

EigenRange gershgorin_bounds(const TriDiag& j) {
  const std::size_t n = j.order();
  if (n == 0) throw DimensionMismatch("empty tridiagonal matrix");
  EigenRange g{j.diag[0], j.diag[0]};
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0;
    if (i > 0) radius += std::fabs(j.offdiag[i - 1]);
    if (i + 1 < n) radius += std::fabs(j.offdiag[i]);
    g.lambda_min = std::min(g.lambda_min, j.diag[i] - radius);
    g.lambda_max = std::max(g.lambda_max, j.diag[i] + radius);
  }
  return g;
}

namespace {

std::vector<double> squared(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * v[i];
  return out;
}

double pivot_floor(const std::vector<double>& offdiag_sq) {
  double m = 1.0;
  for (double e : offdiag_sq) m = std::max(m, e);
  return DBL_MIN * m;
}

// Newton step on det(J - xI) using the pivot recurrence and its derivative.
double newton_step(const TriDiag& j, const std::vector<double>& offdiag_sq, double x, double pivmin) {
  double q = j.diag[0] - x;
  if (std::fabs(q) < pivmin) q = -pivmin;
  double dq = -1.0;
  double log_derivative = dq / q;
  for (std::size_t i = 1; i < j.order(); ++i) {
    const double prev = q;
    q = (j.diag[i] - x) - offdiag_sq[i - 1] / prev;
    if (std::fabs(q) < pivmin) q = -pivmin;
    dq = -1.0 + offdiag_sq[i - 1] * dq / (prev * prev);
    log_derivative += dq / q;
  }
  return x - 1.0 / log_derivative;
}

}  // namespace

int sturm_count(const TriDiag& j, double x) {
  const auto esq = squared(j.offdiag);
  std::array<std::int32_t, 1> count{};
  const std::array<double, 1> shift{x};
  kernels::sturm_counts(j.diag, esq, shift, count, pivot_floor(esq));
  return count[0];
}

EigenRange tridiag_extreme_eigs(const TriDiag& j, double tol) {
  const std::size_t n = j.order();
  if (n == 0 || j.offdiag.size() + 1 != n) throw DimensionMismatch("malformed tridiagonal matrix");
  if (n == 1) return {j.diag[0], j.diag[0]};

  const auto esq = squared(j.offdiag);
  const double pivmin = pivot_floor(esq);
  const EigenRange g = gershgorin_bounds(j);
  const double rho = std::max(std::fabs(g.lambda_min), std::fabs(g.lambda_max));
  const double abs_tol = tol * std::max(1.0, rho);
  const double pad = 4 * DBL_EPSILON * std::max(1.0, rho) + pivmin;
  const auto count_n = static_cast<std::int32_t>(n);

  std::array<double, 4> shifts{};
  std::array<std::int32_t, 4> counts{};
  auto sweep = [&](double lo, double hi) {
    const double width = hi - lo;
    for (int k = 0; k < 4; ++k) shifts[k] = lo + width * (k + 1) / 5.0;
    kernels::sturm_counts(j.diag, esq, shifts, counts, pivmin);
  };

  // Smallest: count(lo) == 0, count(hi) >= 1.
  double lo = g.lambda_min - pad, hi = g.lambda_max + pad;
  while (hi - lo > abs_tol) {
    sweep(lo, hi);
    double new_lo = shifts[3], new_hi = hi;
    for (int k = 0; k < 4; ++k) {
      if (counts[k] >= 1) {
        new_hi = shifts[k];
        new_lo = k == 0 ? lo : shifts[k - 1];
        break;
      }
    }
    if (new_lo <= lo && new_hi >= hi) break;
    lo = new_lo;
    hi = new_hi;
  }
  double min_lo = lo, min_hi = hi;

  // Largest: count(lo) < n, count(hi) == n.
  lo = g.lambda_min - pad;
  hi = g.lambda_max + pad;
  while (hi - lo > abs_tol) {
    sweep(lo, hi);
    double new_lo = lo, new_hi = shifts[0];
    for (int k = 3; k >= 0; --k) {
      if (counts[k] < count_n) {
        new_lo = shifts[k];
        new_hi = k == 3 ? hi : shifts[k + 1];
        break;
      }
    }
    if (new_lo <= lo && new_hi >= hi) break;
    lo = new_lo;
    hi = new_hi;
  }
  double max_lo = lo, max_hi = hi;

  auto polish = [&](double bracket_lo, double bracket_hi) {
    double x = 0.5 * (bracket_lo + bracket_hi);
    for (int step = 0; step < 2; ++step) {
      const double next = newton_step(j, esq, x, pivmin);
      if (!(next >= bracket_lo && next <= bracket_hi)) break;
      x = next;
    }
    return x;
  };
  // The padded brackets may poke past the Gershgorin disc; the eigenvalues cannot.
  return {std::clamp(polish(min_lo, min_hi), g.lambda_min, g.lambda_max),
          std::clamp(polish(max_lo, max_hi), g.lambda_min, g.lambda_max)};
}

double orthonormal_eval(const MonicRecurrence& rec, std::size_t j, double x) {
  if (j > rec.max_valid_r) {
    throw IndexOutOfRange("orthonormal polynomial index " + std::to_string(j) + " beyond max_valid_r " +
                          std::to_string(rec.max_valid_r));
  }
  double prev = 0.0, cur = 1.0;
  for (std::size_t k = 0; k < j; ++k) {
    const double next = (x - to_double(rec.alpha[k])) * cur - (k == 0 ? 0.0 : to_double(rec.beta[k]) * prev);
    prev = cur;
    cur = next;
  }
  Rational norm_sq = rec.beta[0];
  for (std::size_t k = 1; k <= j; ++k) norm_sq *= rec.beta[k];
  using std::sqrt;
  return cur / static_cast<double>(sqrt(to_real<Extended>(norm_sq)));
}

TauBounds tau_bounds_jacobi(const MomentSequence& seq, std::size_t r) {
  const MonicRecurrence rec = monic_recurrence_from_moments(seq, r);
  const EigenRange e = tridiag_extreme_eigs(jacobi_truncation(rec, r));
  return {e.lambda_min, e.lambda_max};
}

void write_recurrence_csv(std::ostream& os, const MonicRecurrence& rec) {
  os << "j,alpha_num,alpha_den,beta_num,beta_den\n";
  for (std::size_t j = 0; j <= rec.max_valid_r; ++j) {
    os << j << ',' << rec.alpha[j].get_num().get_str() << ',' << rec.alpha[j].get_den().get_str() << ','
       << rec.beta[j].get_num().get_str() << ',' << rec.beta[j].get_den().get_str() << '\n';
  }
}

}  // namespace pfopt
