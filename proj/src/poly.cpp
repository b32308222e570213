#include "pfopt/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pfopt/error.hpp"

namespace pfopt {

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw DimensionMismatch("monomial length mismatch");
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.exps_[i] = a.exps_[i] + b.exps_[i];
  return out;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  return a.exponents() > b.exponents();
}

Poly::Poly(std::size_t n, Terms terms) : n_(n) {
  for (auto& [m, c] : terms) {
    if (m.size() != n) throw DimensionMismatch("monomial length does not match polynomial dimension");
    c.canonicalize();
    if (sgn(c) != 0) terms_.emplace(m, std::move(c));
  }
}

Poly::Poly(std::size_t n, std::initializer_list<std::pair<Monomial, Rational>> terms) : n_(n) {
  for (const auto& [m, c] : terms) {
    if (m.size() != n) throw DimensionMismatch("monomial length does not match polynomial dimension");
    add_term(m, c);
  }
}

Poly Poly::constant(std::size_t n, const Rational& c) {
  Poly p(n);
  p.add_term(Monomial(n), c);
  return p;
}

Poly Poly::variable(std::size_t n, std::size_t i) {
  if (i >= n) throw IndexOutOfRange("variable index out of range");
  Monomial m(n);
  m[i] = 1;
  Poly p(n);
  p.add_term(m, Rational(1));
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

std::uint64_t Poly::degree() const noexcept {
  // Graded order: the last key has the largest degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

std::uint32_t Poly::degree_in(std::size_t i) const {
  if (i >= n_) throw IndexOutOfRange("variable index out of range");
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
  return d;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != n_) throw DimensionMismatch("monomial length does not match polynomial dimension");
  if (sgn(c) == 0) return;
  Rational v(c);
  v.canonicalize();  // callers may hand in p/q with a common factor
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

namespace {

void require_same_dim(const Poly& p, const Poly& q) {
  if (p.n() != q.n()) throw DimensionMismatch("polynomials live in different dimensions");
}

void check_cap(std::size_t count, const PolyLimits& limits) {
  if (count > limits.max_terms) {
    throw LimitExceeded("polynomial term count " + std::to_string(count) + " exceeds cap " +
                        std::to_string(limits.max_terms));
  }
}

}  // namespace

Poly poly_add(const Poly& p, const Poly& q) {
  require_same_dim(p, q);
  Poly out = p;
  for (const auto& [m, c] : q.terms()) out.add_term(m, c);
  return out;
}

Poly poly_sub(const Poly& p, const Poly& q) {
  require_same_dim(p, q);
  Poly out = p;
  for (const auto& [m, c] : q.terms()) out.add_term(m, -c);
  return out;
}

Poly poly_scale(const Poly& p, const Rational& c) {
  Poly out(p.n());
  if (sgn(c) == 0) return out;
  for (const auto& [m, v] : p.terms()) out.add_term(m, v * c);
  return out;
}

Poly poly_mul(const Poly& p, const Poly& q, const PolyLimits& limits) {
  require_same_dim(p, q);
  Poly out(p.n());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      out.add_term(mp + mq, cp * cq);
    }
    check_cap(out.term_count(), limits);
  }
  return out;
}

Poly poly_pow(const Poly& p, unsigned k, const PolyLimits& limits) {
  Poly out = Poly::constant(p.n(), Rational(1));
  for (unsigned i = 0; i < k; ++i) out = poly_mul(out, p, limits);
  return out;
}

namespace {

template <class T>
T eval_impl(const Poly& p, std::span<const T> point) {
  if (point.size() != p.n()) throw DimensionMismatch("evaluation point has wrong length");
  // Power tables per variable, grown on demand.
  std::vector<std::vector<T>> powers(p.n(), std::vector<T>{T(1)});
  T acc(0);
  for (const auto& [m, c] : p.terms()) {
    T term(1);
    for (std::size_t i = 0; i < p.n(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= m[i]) pw.push_back(pw.back() * point[i]);
      if (m[i] != 0) term *= pw[m[i]];
    }
    if constexpr (std::is_same_v<T, double>) {
      acc += to_double(c) * term;
    } else {
      acc += c * term;
    }
  }
  return acc;
}

}  // namespace

Rational poly_eval(const Poly& p, std::span<const Rational> point) { return eval_impl<Rational>(p, point); }

double poly_eval(const Poly& p, std::span<const double> point) { return eval_impl<double>(p, point); }

Poly poly_compose_affine(const Poly& p, std::span<const Rational> a, std::span<const Rational> b) {
  const std::size_t n = p.n();
  if (a.size() != n * n || b.size() != n) throw DimensionMismatch("affine map does not match dimension");
  std::vector<std::vector<Poly>> powers;
  powers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly row = Poly::constant(n, b[i]);
    for (std::size_t j = 0; j < n; ++j) row = row + poly_scale(Poly::variable(n, j), a[i * n + j]);
    powers.push_back({Poly::constant(n, Rational(1)), row});
  }
  Poly out(n);
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::constant(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      auto& pw = powers[i];
      while (pw.size() <= m[i]) pw.push_back(pw.back() * pw[1]);
      if (m[i] != 0) term = term * pw[m[i]];
    }
    out = out + term;
  }
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.degree() == 0) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// PowerSequence

namespace {

constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 22;

std::uint32_t reduce_exponent(std::uint32_t e, ExponentReduction r) {
  switch (r) {
    case ExponentReduction::kIdempotent:
      return e > 0 ? 1 : 0;
    case ExponentReduction::kInvolutive:
      return e % 2;
    case ExponentReduction::kNone:
      break;
  }
  return e;
}

}  // namespace

struct PowerSequence::Impl {
  std::size_t n = 0;
  unsigned max_power = 0;
  unsigned power = 0;
  ExponentReduction reduction = ExponentReduction::kNone;
  PolyLimits limits;
  Integer denom_f{1};
  Integer denom{1};

  // Dense backend: mixed-radix index per monomial.
  bool dense = false;
  std::vector<std::uint64_t> radix;
  std::vector<std::pair<std::uint64_t, Integer>> f_dense;
  std::vector<Integer> cells;
  std::vector<Integer> scratch;
  std::vector<std::uint64_t> support;
  std::vector<char> touched;

  // Sparse fallback.
  std::vector<std::pair<Monomial, Integer>> f_sparse;
  std::map<Monomial, Integer, GradedLex> sparse;

  std::uint64_t combine(std::uint64_t a, std::uint64_t b) const {
    switch (reduction) {
      case ExponentReduction::kIdempotent:
        return a | b;
      case ExponentReduction::kInvolutive:
        return a ^ b;
      case ExponentReduction::kNone:
        break;
    }
    return a + b;
  }

  std::uint64_t encode(const Monomial& m) const {
    std::uint64_t idx = 0;
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < n; ++i) {
      idx += stride * m[i];
      stride *= radix[i];
    }
    return idx;
  }

  void decode(std::uint64_t idx, std::vector<std::uint32_t>& exps) const {
    for (std::size_t i = 0; i < n; ++i) {
      exps[i] = static_cast<std::uint32_t>(idx % radix[i]);
      idx /= radix[i];
    }
  }

  Monomial reduce(const Monomial& m) const {
    Monomial out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) out[i] = reduce_exponent(m[i], reduction);
    return out;
  }

  void advance_dense() {
    std::vector<std::uint64_t> next_support;
    next_support.reserve(support.size() * 2);
    for (auto idx : support) {
      const Integer& c = cells[idx];
      for (const auto& [fi, fc] : f_dense) {
        const std::uint64_t target = combine(idx, fi);
        if (!touched[target]) {
          touched[target] = 1;
          scratch[target] = 0;
          next_support.push_back(target);
        }
        mpz_addmul(scratch[target].get_mpz_t(), c.get_mpz_t(), fc.get_mpz_t());
      }
    }
    // Cells outside the support hold stale values; only the support is read.
    std::swap(cells, scratch);
    support.clear();
    for (auto idx : next_support) {
      touched[idx] = 0;
      if (sgn(cells[idx]) != 0) support.push_back(idx);
    }
    check_cap(support.size(), limits);
  }

  void advance_sparse() {
    std::map<Monomial, Integer, GradedLex> next;
    for (const auto& [m, c] : sparse) {
      for (const auto& [fm, fc] : f_sparse) {
        Monomial target = reduce(m + fm);
        auto [it, inserted] = next.try_emplace(std::move(target), 0);
        mpz_addmul(it->second.get_mpz_t(), c.get_mpz_t(), fc.get_mpz_t());
      }
      check_cap(next.size(), limits);
    }
    std::erase_if(next, [](const auto& kv) { return sgn(kv.second) == 0; });
    sparse = std::move(next);
  }
};

PowerSequence::PowerSequence(const Poly& f, unsigned max_power, ExponentReduction reduction,
                             const PolyLimits& limits)
    : impl_(std::make_unique<Impl>()) {
  auto& s = *impl_;
  s.n = f.n();
  s.max_power = max_power;
  s.reduction = reduction;
  s.limits = limits;

  for (const auto& [m, c] : f.terms()) {
    mpz_lcm(s.denom_f.get_mpz_t(), s.denom_f.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<std::pair<Monomial, Integer>> f_int;
  {
    // Reduction is applied to f itself first, then like terms merged.
    std::map<Monomial, Integer, GradedLex> merged;
    for (const auto& [m, c] : f.terms()) {
      Integer scaled = c.get_num() * (s.denom_f / c.get_den());
      merged[s.reduce(m)] += scaled;
    }
    for (auto& [m, c] : merged) {
      if (sgn(c) != 0) f_int.emplace_back(m, c);
    }
  }

  // Mixed-radix layout if the exponent box is small enough.
  bool fits = true;
  std::uint64_t cells = 1;
  s.radix.assign(s.n, 1);
  for (std::size_t i = 0; i < s.n; ++i) {
    std::uint64_t r;
    if (reduction == ExponentReduction::kNone) {
      std::uint64_t deg = 0;
      for (const auto& [m, c] : f_int) deg = std::max<std::uint64_t>(deg, m[i]);
      r = deg * max_power + 1;
    } else {
      r = 2;
    }
    s.radix[i] = r;
    if (cells > kDenseCellLimit / r) {
      fits = false;
      break;
    }
    cells *= r;
  }
  s.dense = fits && cells <= kDenseCellLimit;

  if (s.dense) {
    s.cells.resize(cells);
    s.scratch.resize(cells);
    s.touched.assign(cells, 0);
    for (const auto& [m, c] : f_int) s.f_dense.emplace_back(s.encode(m), c);
    s.cells[0] = 1;
    s.support = {0};
  } else {
    s.f_sparse = std::move(f_int);
    s.sparse.emplace(Monomial(s.n), Integer(1));
  }
}

PowerSequence::~PowerSequence() = default;
PowerSequence::PowerSequence(PowerSequence&&) noexcept = default;
PowerSequence& PowerSequence::operator=(PowerSequence&&) noexcept = default;

unsigned PowerSequence::power() const noexcept { return impl_->power; }

const Integer& PowerSequence::denominator() const noexcept { return impl_->denom; }

std::size_t PowerSequence::term_count() const noexcept {
  return impl_->dense ? impl_->support.size() : impl_->sparse.size();
}

void PowerSequence::advance() {
  auto& s = *impl_;
  if (s.power >= s.max_power) throw LimitExceeded("power sequence advanced past its declared maximum");
  if (s.dense) {
    s.advance_dense();
  } else {
    s.advance_sparse();
  }
  s.denom *= s.denom_f;
  ++s.power;
}

void PowerSequence::for_each_term(
    const std::function<void(std::span<const std::uint32_t>, const Integer&)>& visit) const {
  const auto& s = *impl_;
  if (s.dense) {
    std::vector<std::uint32_t> exps(s.n);
    for (auto idx : s.support) {
      s.decode(idx, exps);
      visit(exps, s.cells[idx]);
    }
  } else {
    for (const auto& [m, c] : s.sparse) visit(m.exponents(), c);
  }
}

Poly PowerSequence::current() const {
  Poly out(impl_->n);
  for_each_term([&](std::span<const std::uint32_t> exps, const Integer& c) {
    Rational q(c, impl_->denom);
    q.canonicalize();
    out.add_term(Monomial(std::vector<std::uint32_t>(exps.begin(), exps.end())), q);
  });
  return out;
}

}  // namespace pfopt
