#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pfopt/error.hpp"
#include "pfopt/jacobi.hpp"
#include "pfopt/measures.hpp"
#include "pfopt/pencil.hpp"
#include "support/oracles.hpp"

using namespace pfopt;

namespace {

const MeasureKind kAllKinds[] = {MeasureKind::kBox,    MeasureKind::kBall,     MeasureKind::kSphere,
                                 MeasureKind::kSimplex, MeasureKind::kCube01,  MeasureKind::kCubePM1,
                                 MeasureKind::kGaussian, MeasureKind::kExponential};

}  // namespace

TEST_CASE("closed-form monomial moments") {
  CHECK(monomial_moment({MeasureKind::kBox, 2}, Monomial{2, 0}) == Rational(1, 3));
  CHECK(monomial_moment({MeasureKind::kBox, 2}, Monomial{2, 1}) == 0);
  CHECK(monomial_moment({MeasureKind::kBox, 1}, Monomial{4}) == Rational(1, 5));
  CHECK(monomial_moment({MeasureKind::kSphere, 3}, Monomial{4, 0, 0}) == Rational(1, 5));
  CHECK(monomial_moment({MeasureKind::kSphere, 3}, Monomial{2, 2, 0}) == Rational(1, 15));
  CHECK(monomial_moment({MeasureKind::kSphere, 2}, Monomial{2, 0}) == Rational(1, 2));
  CHECK(monomial_moment({MeasureKind::kBall, 2}, Monomial{2, 0}) == Rational(1, 4));
  CHECK(monomial_moment({MeasureKind::kBall, 3}, Monomial{0, 0, 2}) == Rational(1, 5));
  CHECK(monomial_moment({MeasureKind::kSimplex, 2}, Monomial{1, 0}) == Rational(1, 3));
  CHECK(monomial_moment({MeasureKind::kSimplex, 2}, Monomial{1, 1}) == Rational(1, 12));
  CHECK(monomial_moment({MeasureKind::kCube01, 3}, Monomial{3, 0, 1}) == Rational(1, 4));
  CHECK(monomial_moment({MeasureKind::kCubePM1, 2}, Monomial{2, 4}) == 1);
  CHECK(monomial_moment({MeasureKind::kCubePM1, 2}, Monomial{2, 3}) == 0);
  CHECK(monomial_moment({MeasureKind::kGaussian, 1}, Monomial{6}) == 15);
  CHECK(monomial_moment({MeasureKind::kExponential, 2}, Monomial{3, 2}) == 12);
  for (MeasureKind k : kAllKinds) CHECK(monomial_moment({k, 3}, Monomial(3)) == 1);
  CHECK_THROWS_AS(monomial_moment({MeasureKind::kBox, 2}, Monomial{1}), DimensionMismatch);
}

TEST_CASE("kind names round-trip") {
  for (MeasureKind k : kAllKinds) CHECK(parse_kind(kind_name(k)) == k);
  CHECK_FALSE(parse_kind("torus"));
  CHECK(is_discrete({MeasureKind::kSphere, 1}));
  CHECK_FALSE(is_discrete({MeasureKind::kSphere, 2}));
  CHECK_FALSE(is_compact({MeasureKind::kGaussian, 1}));
}

TEST_CASE("discrete pushforward moments equal vertex averages") {
  std::mt19937_64 rng(11);
  for (bool zero_one : {true, false}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const Poly f = oracle::random_poly(rng, n, 3);
      const MeasureSpec spec{zero_one ? MeasureKind::kCube01 : MeasureKind::kCubePM1, n};
      const auto seq = pushforward_moments(f, spec, 6);
      const auto vertices = oracle::cube_vertices(n, zero_one);
      for (unsigned k = 0; k <= 6; ++k) {
        Rational sum(0);
        for (const auto& v : vertices) {
          Rational p(1);
          const Rational fv = poly_eval(f, v);
          for (unsigned i = 0; i < k; ++i) p *= fv;
          sum += p;
        }
        CHECK(seq[k] == sum / Rational(static_cast<long>(vertices.size())));
      }
    }
  }
  // The circle S^0 is the two points {-1, 1}.
  const Poly g = Poly::variable(1, 0) + Poly::constant(1, Rational(2));
  const auto seq = pushforward_moments(g, {MeasureKind::kSphere, 1}, 3);
  CHECK(seq[3] == Rational(14));  // (27 + 1) / 2
}

TEST_CASE("pushforward moments agree with Monte Carlo") {
  std::mt19937_64 rng(12);
  constexpr int kSamples = 1'000'000;
  for (MeasureKind kind : kAllKinds) {
    const std::size_t n = kind == MeasureKind::kSphere ? 3 : 1 + static_cast<std::size_t>(kind) % 3;
    const MeasureSpec spec{kind, n};
    const Poly f = oracle::random_poly(rng, n, 2);
    const auto seq = pushforward_moments(f, spec, 4);
    std::vector<double> sum(5, 0.0), sum2(5, 0.0);
    for (int s = 0; s < kSamples; ++s) {
      const double v = poly_eval(f, oracle::sample(rng, spec));
      double p = 1;
      for (int k = 0; k <= 4; ++k) {
        sum[k] += p;
        sum2[k] += p * p;
        p *= v;
      }
    }
    for (int k = 1; k <= 4; ++k) {
      const double mean = sum[k] / kSamples;
      const double se = std::sqrt(std::max(0.0, sum2[k] / kSamples - mean * mean) / kSamples);
      INFO(describe(spec), " k=", k, " f=", to_string(f));
      CHECK(std::fabs(to_double(seq[k]) - mean) <= 4 * se + 1e-12);
    }
  }
}

TEST_CASE("first moment lies inside the range of f") {
  std::mt19937_64 rng(13);
  for (MeasureKind kind : {MeasureKind::kCube01, MeasureKind::kCubePM1}) {
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 1 + t % 4;
      const Poly f = oracle::random_poly(rng, n, 3);
      const auto vals = oracle::values_on_vertices(f, n, kind == MeasureKind::kCube01);
      const auto seq = pushforward_moments(f, {kind, n}, 1);
      CHECK(vals.front() <= seq[1]);
      CHECK(seq[1] <= vals.back());
    }
  }
  // Continuous: box [-1,1]^2 for x1^2 + x2 has range [-1, 2].
  const Poly g = Poly::variable(2, 0) * Poly::variable(2, 0) + Poly::variable(2, 1);
  const auto seq = pushforward_moments(g, {MeasureKind::kBox, 2}, 1);
  CHECK(Rational(-1) <= seq[1]);
  CHECK(seq[1] <= Rational(2));
}

TEST_CASE("Hankel matrices of pushforward moments are positive semidefinite") {
  std::mt19937_64 rng(14);
  for (MeasureKind kind : kAllKinds) {
    const std::size_t n = 2;
    const Poly f = oracle::random_poly(rng, n, 2);
    const auto seq = pushforward_moments(f, {kind, n}, 13);
    // Exact symmetric elimination: every pivot is >= 0 until a zero row.
    const auto h = hankel_moment(seq, 6);
    std::vector<std::vector<Rational>> a(h.order(), std::vector<Rational>(h.order()));
    for (std::size_t i = 0; i < h.order(); ++i) {
      for (std::size_t j = 0; j < h.order(); ++j) a[i][j] = h(i, j);
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k][k] >= 0);
      if (a[k][k] == 0) break;
      for (std::size_t i = k + 1; i < a.size(); ++i) {
        const Rational m = a[i][k] / a[k][k];
        for (std::size_t j = k; j < a.size(); ++j) a[i][j] -= m * a[k][j];
      }
    }
  }
}

TEST_CASE("integrate is linear in the polynomial") {
  const MomentFunctional m({MeasureKind::kBall, 3});
  const Poly x = Poly::variable(3, 0), z = Poly::variable(3, 2);
  CHECK(m.integrate(x * x + z * z) == Rational(2, 5));
  CHECK(m.integrate(x) == 0);
}

TEST_CASE("worked examples") {
  CHECK(monomial_moment({MeasureKind::kSphere, 2}, Monomial{2, 2}) == Rational(1, 8));
  CHECK(monomial_moment({MeasureKind::kCube01, 2}, Monomial{1, 1}) == Rational(1, 4));
  CHECK(monomial_moment({MeasureKind::kBox, 1}, Monomial{3}) == 0);

  const auto legendre = pushforward_moments(Poly::variable(1, 0), {MeasureKind::kBox, 1}, 4);
  CHECK(legendre.values == std::vector<Rational>{Rational(1), Rational(0), Rational(1, 3), Rational(0), Rational(1, 5)});
  const auto cube = pushforward_moments(Poly::variable(2, 0) + Poly::variable(2, 1), {MeasureKind::kCube01, 2}, 4);
  CHECK(cube.values == std::vector<Rational>{Rational(1), Rational(1), Rational(3, 2), Rational(5, 2), Rational(9, 2)});
  for (MeasureKind k : kAllKinds) {
    const auto dirac = pushforward_moments(Poly::constant(2, Rational(-3, 2)), {k, 2}, 3);
    CHECK(dirac.values == std::vector<Rational>{Rational(1), Rational(-3, 2), Rational(9, 4), Rational(-27, 8)});
  }
}

TEST_CASE("sphere moments against angular quadrature") {
  // Average of cos^a sin^b over the circle by the trapezoid rule, which is
  // exact for trigonometric polynomials of degree < points.
  constexpr int kPoints = 64;
  for (std::uint32_t a = 0; a <= 6; ++a) {
    for (std::uint32_t b = 0; b <= 6; ++b) {
      double sum = 0;
      for (int i = 0; i < kPoints; ++i) {
        const double th = 2 * std::numbers::pi * i / kPoints;
        sum += std::pow(std::cos(th), a) * std::pow(std::sin(th), b);
      }
      CHECK(to_double(monomial_moment({MeasureKind::kSphere, 2}, Monomial{a, b})) ==
            doctest::Approx(sum / kPoints).scale(1).epsilon(1e-13));
    }
  }
}
