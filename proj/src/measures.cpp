#include "pfopt/measures.hpp"

#include <array>

#include "pfopt/error.hpp"

namespace pfopt {

namespace {

constexpr std::array<std::pair<MeasureKind, std::string_view>, 8> kKindNames{{
    {MeasureKind::kBox, "box"},
    {MeasureKind::kBall, "ball"},
    {MeasureKind::kSphere, "sphere"},
    {MeasureKind::kSimplex, "simplex"},
    {MeasureKind::kCube01, "cube01"},
    {MeasureKind::kCubePM1, "cubepm1"},
    {MeasureKind::kGaussian, "gaussian"},
    {MeasureKind::kExponential, "exponential"},
}};

// Sum of c_i * q_i with a running common denominator. Avoids a gcd per
// term when the denominators of q_i repeat, which they do heavily.
class LazyRationalSum {
 public:
  void add(const Integer& c, const Rational& q) {
    const Integer& qd = q.get_den();
    if (mpz_divisible_p(den_.get_mpz_t(), qd.get_mpz_t())) {
      Integer scale;
      mpz_divexact(scale.get_mpz_t(), den_.get_mpz_t(), qd.get_mpz_t());
      scale *= q.get_num();
      mpz_addmul(num_.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
      return;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), qd.get_mpz_t());
    Integer qd_over_g, den_over_g;
    mpz_divexact(qd_over_g.get_mpz_t(), qd.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_over_g.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    num_ *= qd_over_g;
    Integer scale = den_over_g * q.get_num();
    mpz_addmul(num_.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
    den_ *= qd_over_g;
  }

  Rational value(const Integer& extra_den) const {
    Rational out(num_, den_ * extra_den);
    out.canonicalize();
    return out;
  }

 private:
  Integer num_{0};
  Integer den_{1};
};

}  // namespace

std::string_view kind_name(MeasureKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<MeasureKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string describe(const MeasureSpec& spec) {
  return std::string(kind_name(spec.kind)) + "(n=" + std::to_string(spec.n) + ")";
}

bool is_discrete(const MeasureSpec& spec) {
  return spec.kind == MeasureKind::kCube01 || spec.kind == MeasureKind::kCubePM1 ||
         (spec.kind == MeasureKind::kSphere && spec.n == 1);
}

bool is_compact(const MeasureSpec& spec) {
  return spec.kind != MeasureKind::kGaussian && spec.kind != MeasureKind::kExponential;
}

ExponentReduction support_reduction(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::kCube01:
      return ExponentReduction::kIdempotent;
    case MeasureKind::kCubePM1:
      return ExponentReduction::kInvolutive;
    case MeasureKind::kSphere:
      // S^0 = {-1, 1}.
      return spec.n == 1 ? ExponentReduction::kInvolutive : ExponentReduction::kNone;
    default:
      return ExponentReduction::kNone;
  }
}

MomentFunctional::MomentFunctional(MeasureSpec spec) : spec_(spec), factorials_{Integer(1)} {
  if (spec_.n == 0) throw ValidationError("measure dimension must be positive");
}

const Integer& MomentFunctional::factorial(std::uint64_t k) const {
  while (factorials_.size() <= k) {
    factorials_.push_back(factorials_.back() * static_cast<unsigned long>(factorials_.size()));
  }
  return factorials_[k];
}

const Integer& MomentFunctional::odd_double_factorial(std::uint64_t k) const {
  // Indexed by k/2: entry j holds (2j-1)!!.
  const std::uint64_t j = k / 2;
  if (double_factorials_.empty()) double_factorials_.push_back(Integer(1));
  while (double_factorials_.size() <= j) {
    const auto i = static_cast<unsigned long>(double_factorials_.size());
    double_factorials_.push_back(double_factorials_.back() * (2 * i - 1));
  }
  return double_factorials_[j];
}

Rational MomentFunctional::operator()(std::span<const std::uint32_t> alpha) const {
  const std::size_t n = spec_.n;
  if (alpha.size() != n) throw DimensionMismatch("monomial length does not match measure dimension");

  bool all_even = true;
  std::uint64_t total = 0;
  std::size_t nonzero = 0;
  for (auto a : alpha) {
    all_even = all_even && (a % 2 == 0);
    total += a;
    nonzero += (a > 0);
  }

  switch (spec_.kind) {
    case MeasureKind::kBox: {
      if (!all_even) return Rational(0);
      Integer den(1);
      for (auto a : alpha) den *= static_cast<unsigned long>(a + 1);
      return Rational(Integer(1), den);
    }
    case MeasureKind::kSimplex: {
      Integer num = factorial(n);
      for (auto a : alpha) num *= factorial(a);
      Rational out(num, factorial(total + n));
      out.canonicalize();
      return out;
    }
    case MeasureKind::kSphere:
    case MeasureKind::kBall: {
      if (!all_even) return Rational(0);
      Integer num(1);
      for (auto a : alpha) num *= odd_double_factorial(a);
      Integer den(1);
      for (std::uint64_t j = 0; j < total / 2; ++j) den *= static_cast<unsigned long>(n + 2 * j);
      if (spec_.kind == MeasureKind::kBall) {
        num *= static_cast<unsigned long>(n);
        den *= static_cast<unsigned long>(n + total);
      }
      Rational out(num, den);
      out.canonicalize();
      return out;
    }
    case MeasureKind::kCube01: {
      Rational out(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(nonzero));
      return out;
    }
    case MeasureKind::kCubePM1:
      return Rational(all_even ? 1 : 0);
    case MeasureKind::kGaussian: {
      if (!all_even) return Rational(0);
      Integer num(1);
      for (auto a : alpha) num *= odd_double_factorial(a);
      return Rational(num);
    }
    case MeasureKind::kExponential: {
      Integer num(1);
      for (auto a : alpha) num *= factorial(a);
      return Rational(num);
    }
  }
  return Rational(0);
}

Rational MomentFunctional::integrate(const Poly& p) const {
  if (p.n() != spec_.n) throw DimensionMismatch("polynomial and measure dimensions differ");
  Rational acc(0);
  for (const auto& [m, c] : p.terms()) acc += c * (*this)(m);
  return acc;
}

Rational monomial_moment(const MeasureSpec& spec, std::span<const std::uint32_t> alpha) {
  return MomentFunctional(spec)(alpha);
}

Rational monomial_moment(const MeasureSpec& spec, const Monomial& alpha) {
  return MomentFunctional(spec)(alpha);
}

MomentSequence pushforward_moments(const Poly& f, const MeasureSpec& spec, unsigned max_k,
                                   const PolyLimits& limits) {
  if (f.n() != spec.n) throw DimensionMismatch("polynomial and measure dimensions differ");
  MomentFunctional moment(spec);
  PowerSequence powers(f, max_k, support_reduction(spec), limits);

  MomentSequence seq;
  seq.source = to_string(f) + " under " + describe(spec);
  seq.values.reserve(max_k + 1);
  for (unsigned k = 0;; ++k) {
    LazyRationalSum sum;
    powers.for_each_term([&](std::span<const std::uint32_t> alpha, const Integer& c) {
      Rational m = moment(alpha);
      if (sgn(m) != 0) sum.add(c, m);
    });
    seq.values.push_back(sum.value(powers.denominator()));
    if (k == max_k) break;
    powers.advance();
  }
  return seq;
}

}  // namespace pfopt
