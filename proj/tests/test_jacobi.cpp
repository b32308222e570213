#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pfopt/error.hpp"
#include "pfopt/jacobi.hpp"
#include "pfopt/symmetric_eigen.hpp"
#include "support/oracles.hpp"

using namespace pfopt;

namespace {

MomentSequence box_x(std::size_t max_k) {
  return pushforward_moments(Poly::variable(1, 0), {MeasureKind::kBox, 1}, static_cast<unsigned>(max_k));
}

std::vector<double> all_eigs(const TriDiag& j) {
  const std::size_t n = j.order();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = j.diag[i];
    if (i + 1 < n) a[i * n + i + 1] = a[(i + 1) * n + i] = j.offdiag[i];
  }
  return symmetric_eigen(a, n).values;
}

}  // namespace

TEST_CASE("Legendre recurrence coefficients") {
  const auto rec = monic_recurrence_from_moments(box_x(21), 10);
  CHECK(rec.max_valid_r == 10);
  CHECK_FALSE(rec.rank_deficient);
  CHECK(rec.beta[0] == 1);
  for (std::size_t j = 0; j <= 10; ++j) {
    CHECK(rec.alpha[j] == 0);
    if (j > 0) CHECK(rec.beta[j] == Rational(static_cast<long>(j * j), static_cast<long>(4 * j * j - 1)));
  }
}

TEST_CASE("extreme eigenvalues agree with a dense solver") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 1 + t % 3;
    const Poly f = oracle::random_poly(rng, n, 3);
    const auto seq = pushforward_moments(f, {MeasureKind::kBall, n}, 15);
    const auto rec = monic_recurrence_from_moments(seq, 7);
    for (std::size_t r = 0; r <= 7; ++r) {
      const TriDiag j = jacobi_truncation(rec, r);
      const EigenRange e = tridiag_extreme_eigs(j);
      const auto ref = all_eigs(j);
      const double scale = std::max(1.0, std::max(std::fabs(ref.front()), std::fabs(ref.back())));
      CHECK(std::fabs(e.lambda_min - ref.front()) <= 1e-12 * scale);
      CHECK(std::fabs(e.lambda_max - ref.back()) <= 1e-12 * scale);
      const EigenRange g = gershgorin_bounds(j);
      CHECK(g.lambda_min <= e.lambda_min);
      CHECK(e.lambda_max <= g.lambda_max);
    }
  }
}

TEST_CASE("Sturm counts at the extremes and root characterization") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + t % 3;
    const Poly f = oracle::random_poly(rng, n, 2);
    const auto seq = pushforward_moments(f, {MeasureKind::kSimplex, n}, 17);
    const auto rec = monic_recurrence_from_moments(seq, 8);
    for (std::size_t r = 1; r <= 7; ++r) {
      const TriDiag j = jacobi_truncation(rec, r);
      const EigenRange e = tridiag_extreme_eigs(j);
      const double eps = 1e-9 * std::max(1.0, std::fabs(e.lambda_max) + std::fabs(e.lambda_min));
      CHECK(sturm_count(j, e.lambda_min - eps) == 0);
      CHECK(sturm_count(j, e.lambda_max + eps) == static_cast<int>(r + 1));
      CHECK(sturm_count(j, e.lambda_min + eps) >= 1);
      // Eigenvalues of J_r are the zeros of T_{r+1}.
      for (double x : {e.lambda_min, e.lambda_max}) {
        double scale = 0;
        for (std::size_t i = 0; i <= r + 1; ++i) scale = std::max(scale, std::fabs(orthonormal_eval(rec, i, x)));
        CHECK(std::fabs(orthonormal_eval(rec, r + 1, x)) <= 1e-8 * std::max(1.0, scale));
      }
    }
  }
}

TEST_CASE("atomic measures stop at their rank") {
  // Three atoms: Hankel rank 3, so max_valid_r = 2.
  const std::vector<Rational> atoms{Rational(-1), Rational(1, 2), Rational(3)};
  const std::vector<Rational> weights{Rational(1, 4), Rational(1, 2), Rational(1, 4)};
  const MomentSequence seq{oracle::atomic_moments(atoms, weights, 11), "atoms"};
  const auto rec = monic_recurrence_from_moments(seq, 5);
  CHECK(rec.rank_deficient);
  CHECK(rec.max_valid_r == 2);
  const TauBounds b = tau_bounds_jacobi(seq, 2);
  CHECK(b.lower == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(jacobi_truncation(rec, 3), RankDeficient);
  CHECK_THROWS_AS(tau_bounds_jacobi(seq, 3), RankDeficient);
  CHECK_THROWS_AS(orthonormal_eval(rec, 3, 0.0), IndexOutOfRange);
  try {
    tau_bounds_jacobi(seq, 4);
  } catch (const RankDeficient& e) {
    CHECK(e.max_valid_r() == 2);
  }
}

TEST_CASE("invalid and short sequences") {
  const MomentSequence bad{{Rational(1), Rational(0), Rational(-1), Rational(0), Rational(1)}, "bad"};
  CHECK_THROWS_AS(monic_recurrence_from_moments(bad, 1), InvalidMomentSequence);
  CHECK_THROWS_AS(monic_recurrence_from_moments(box_x(4), 2), SequenceTooShort);
  const MomentSequence zero_mass{{Rational(0), Rational(0), Rational(0), Rational(0)}, "zero"};
  CHECK_THROWS(monic_recurrence_from_moments(zero_mass, 1));
}

TEST_CASE("recurrence CSV is exact") {
  const auto rec = monic_recurrence_from_moments(box_x(5), 2);
  std::ostringstream os;
  write_recurrence_csv(os, rec);
  CHECK(os.str() == "j,alpha_num,alpha_den,beta_num,beta_den\n0,0,1,1,1\n1,0,1,1,3\n2,0,1,4,15\n");
}

TEST_CASE("shifted problems give shifted recurrences") {
  const Poly x = Poly::variable(1, 0);
  const auto a = monic_recurrence_from_moments(pushforward_moments(x, {MeasureKind::kBox, 1}, 9), 4);
  const auto b =
      monic_recurrence_from_moments(pushforward_moments(x + Poly::constant(1, Rational(5, 2)), {MeasureKind::kBox, 1}, 9), 4);
  for (std::size_t j = 0; j <= 4; ++j) {
    CHECK(b.alpha[j] == a.alpha[j] + Rational(5, 2));
    CHECK(b.beta[j] == a.beta[j]);
  }
}

TEST_CASE("worked examples") {
  const auto rec = monic_recurrence_from_moments(box_x(11), 5);
  const TriDiag j1 = jacobi_truncation(rec, 1);
  CHECK(j1.diag == std::vector<double>{0.0, 0.0});
  CHECK(j1.offdiag[0] == doctest::Approx(0.577350269189626).epsilon(1e-15));
  const TriDiag j2 = jacobi_truncation(rec, 2);
  CHECK(j2.offdiag[1] == doctest::Approx(std::sqrt(4.0 / 15)).epsilon(1e-15));
  CHECK(tridiag_extreme_eigs(j1).lambda_max == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(tridiag_extreme_eigs(j2).lambda_min == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
  CHECK(tau_bounds_jacobi(box_x(11), 5).lower == doctest::Approx(-0.9324695142031521).epsilon(1e-14));
  CHECK(orthonormal_eval(rec, 1, 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(orthonormal_eval(rec, 0, 0.37) == 1.0);
  CHECK(std::fabs(orthonormal_eval(rec, 2, 1 / std::sqrt(3.0))) <= 1e-10);

  const MomentSequence dirac{{Rational(1), Rational(-2), Rational(4), Rational(-8)}, "c"};
  const auto drec = monic_recurrence_from_moments(dirac, 1);
  CHECK(drec.alpha[0] == -2);
  CHECK(drec.max_valid_r == 0);
  const TriDiag d = jacobi_truncation(drec, 0);
  CHECK(d.offdiag.empty());
  CHECK(tridiag_extreme_eigs(d).lambda_min == -2.0);

  const auto cube = pushforward_moments(Poly::variable(2, 0) + Poly::variable(2, 1), {MeasureKind::kCube01, 2}, 7);
  const auto crec = monic_recurrence_from_moments(cube, 3);
  CHECK(crec.alpha[0] == 1);
  CHECK(crec.max_valid_r == 2);
  const TauBounds b = tau_bounds_jacobi(cube, 2);
  CHECK(b.lower == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("diagonal recurrence coefficients are means inside the support") {
  std::mt19937_64 rng(33);
  for (bool zero_one : {true, false}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const Poly f = oracle::random_multilinear(rng, n);
      const auto vals = oracle::values_on_vertices(f, n, zero_one);
      const auto seq = pushforward_moments(f, {zero_one ? MeasureKind::kCube01 : MeasureKind::kCubePM1, n}, 33);
      const auto rec = monic_recurrence_from_moments(seq, 16);
      CHECK(rec.max_valid_r + 1 == vals.size());
      for (std::size_t j = 0; j <= rec.max_valid_r; ++j) {
        CHECK(vals.front() <= rec.alpha[j]);
        CHECK(rec.alpha[j] <= vals.back());
        if (j > 0) CHECK(rec.beta[j] > 0);
      }
    }
  }
}
