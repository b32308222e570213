#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pfopt/driver.hpp"
#include "pfopt/error.hpp"
#include "pfopt/kernels/kernels.hpp"

namespace pfopt {

namespace {

constexpr std::size_t kStarts = 16;
constexpr int kSweeps = 200;
constexpr std::size_t kChunk = 1 << 14;

double eval_point(const kernels::PolyProgram& prog, const std::vector<double>& x, std::vector<double>& powers) {
  const std::size_t stride = prog.max_degree + 1;
  for (std::size_t i = 0; i < prog.n; ++i) {
    double* pw = powers.data() + i * stride;
    pw[0] = 1.0;
    for (std::size_t e = 1; e < stride; ++e) pw[e] = pw[e - 1] * x[i];
  }
  double acc = 0.0;
  const std::uint32_t* exps = prog.exponents.data();
  for (std::size_t t = 0; t < prog.coefficients.size(); ++t, exps += prog.n) {
    double term = prog.coefficients[t];
    for (std::size_t i = 0; i < prog.n; ++i) {
      if (exps[i] != 0) term *= powers[i * stride + exps[i]];
    }
    acc += term;
  }
  return acc;
}

struct Candidate {
  double value;
  std::vector<double> x;
};

// Keeps the k best points (smallest `sign * value`), ties by arrival order.
class BestK {
 public:
  BestK(std::size_t k, double sign) : k_(k), sign_(sign) {}

  void offer(double value, const double* coords, std::size_t n, std::size_t stride) {
    const double key = sign_ * value;
    if (std::isnan(key)) return;
    if (best_.size() == k_ && !(key < sign_ * best_.back().value)) return;
    Candidate c{value, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) c.x[i] = coords[i * stride];
    auto pos = std::upper_bound(best_.begin(), best_.end(), key,
                                [&](double k, const Candidate& b) { return k < sign_ * b.value; });
    best_.insert(pos, std::move(c));
    if (best_.size() > k_) best_.pop_back();
  }

  std::vector<Candidate>& items() { return best_; }

 private:
  std::size_t k_;
  double sign_;
  std::vector<Candidate> best_;
};

// Half-width of the search box for unbounded supports.
double unbounded_extent(const MeasureSpec& m) {
  Monomial sq(m.n);
  sq[0] = 2;
  return 4.0 * std::sqrt(to_double(monomial_moment(m, sq)));
}

// Grid points for the measure's support, projected onto it where needed.
void grid_chunk(const MeasureSpec& m, std::size_t per_axis, std::size_t first, std::size_t count,
                std::vector<double>& coords) {
  const std::size_t n = m.n;
  double lo = -1.0, hi = 1.0;
  switch (m.kind) {
    case MeasureKind::kSimplex:
      lo = 0.0;
      break;
    case MeasureKind::kGaussian:
      hi = unbounded_extent(m);
      lo = -hi;
      break;
    case MeasureKind::kExponential:
      lo = 0.0;
      hi = unbounded_extent(m);
      break;
    default:
      break;
  }
  const double step = per_axis > 1 ? (hi - lo) / static_cast<double>(per_axis - 1) : 0.0;
  coords.assign(n * count, 0.0);
  std::vector<double> p(n);
  for (std::size_t j = 0; j < count; ++j) {
    std::size_t idx = first + j;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = lo + step * static_cast<double>(idx % per_axis);
      idx /= per_axis;
    }
    double norm2 = 0, sum = 0;
    for (double v : p) {
      norm2 += v * v;
      sum += v;
    }
    if (m.kind == MeasureKind::kSphere || (m.kind == MeasureKind::kBall && norm2 > 1.0)) {
      const double norm = std::sqrt(norm2);
      if (norm > 0) {
        for (double& v : p) v /= norm;
      } else {
        std::fill(p.begin(), p.end(), 0.0);
        p[0] = 1.0;
      }
    } else if (m.kind == MeasureKind::kSimplex && sum > 1.0) {
      for (double& v : p) v /= sum;
    }
    for (std::size_t i = 0; i < n; ++i) coords[i * count + j] = p[i];
  }
}

// Minimizes g on [a, b] starting from t0: coarse scan then golden section
// around the best sample. Returns the better of t0 and the result.
template <class G>
double line_search(G&& g, double a, double b, double t0, double g0) {
  if (!(b > a)) return t0;
  constexpr int kSamples = 8;
  double best_t = t0, best_g = g0;
  const double h = (b - a) / kSamples;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = a + h * k;
    const double v = g(t);
    if (v < best_g) {
      best_g = v;
      best_t = t;
    }
  }
  double lo = std::max(a, best_t - h), hi = std::min(b, best_t + h);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 60 && hi - lo > 1e-15 * (1.0 + std::fabs(best_t)); ++it) {
    if (gc < gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  const double t = gc < gd ? c : d;
  const double v = std::min(gc, gd);
  return v < best_g ? t : best_t;
}

// Coordinate descent on sign * f, staying on the support.
double refine(const kernels::PolyProgram& prog, const MeasureSpec& m, std::vector<double> x, double sign) {
  const std::size_t n = m.n;
  std::vector<double> powers(n * (prog.max_degree + 1));
  auto value = [&](const std::vector<double>& p) { return sign * eval_point(prog, p, powers); };
  double current = value(x);
  const double extent = is_compact(m) ? 1.0 : unbounded_extent(m);

  for (int sweep = 0; sweep < kSweeps; ++sweep) {
    const double before = current;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.kind == MeasureKind::kSphere) {
        if (n < 2) break;
        // Rotate within the (i, i+1) plane, preserving the norm.
        const std::size_t k = (i + 1) % n;
        const double rho = std::hypot(x[i], x[k]);
        if (rho == 0) continue;
        const double theta0 = std::atan2(x[k], x[i]);
        auto g = [&](double th) {
          auto y = x;
          y[i] = rho * std::cos(th);
          y[k] = rho * std::sin(th);
          return value(y);
        };
        const double th = line_search(g, theta0 - std::numbers::pi, theta0 + std::numbers::pi, theta0, current);
        x[i] = rho * std::cos(th);
        x[k] = rho * std::sin(th);
        current = value(x);
        continue;
      }
      double a = -1.0, b = 1.0;
      switch (m.kind) {
        case MeasureKind::kBall: {
          double rest = 0;
          for (std::size_t j = 0; j < n; ++j) {
            if (j != i) rest += x[j] * x[j];
          }
          b = std::sqrt(std::max(0.0, 1.0 - rest));
          a = -b;
          break;
        }
        case MeasureKind::kSimplex: {
          double rest = 0;
          for (std::size_t j = 0; j < n; ++j) {
            if (j != i) rest += x[j];
          }
          a = 0.0;
          b = std::max(0.0, 1.0 - rest);
          break;
        }
        case MeasureKind::kGaussian:
          a = -extent;
          b = extent;
          break;
        case MeasureKind::kExponential:
          a = 0.0;
          b = extent;
          break;
        default:
          break;
      }
      auto g = [&](double t) {
        auto y = x;
        y[i] = t;
        return value(y);
      };
      x[i] = line_search(g, a, b, std::clamp(x[i], a, b), current);
      current = value(x);
    }
    if (!(current < before - 1e-15 * (1.0 + std::fabs(before)))) break;
  }
  return sign * current;
}

OracleResult enumerate_vertices(const Poly& f, const MeasureSpec& m) {
  const std::size_t n = m.n;
  if (n > 30) throw LimitExceeded("vertex enumeration limited to n <= 30");
  const bool zero_one = m.kind == MeasureKind::kCube01;
  std::vector<Rational> point(n);
  Rational lo, hi;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool bit = (mask >> i) & 1;
      point[i] = zero_one ? Rational(bit ? 1 : 0) : Rational(bit ? 1 : -1);
    }
    const Rational v = poly_eval(f, point);
    if (mask == 0 || v < lo) lo = v;
    if (mask == 0 || v > hi) hi = v;
  }
  return {to_double(lo), to_double(hi), true};
}

}  // namespace

OracleResult oracle_minmax(const Poly& f, const MeasureSpec& measure, std::size_t budget) {
  if (f.n() != measure.n) throw DimensionMismatch("polynomial and measure dimensions differ");
  if (budget == 0) throw ValidationError("oracle budget must be at least 1");
  if (f.is_constant()) {
    const double c = to_double(f.coefficient(Monomial(f.n())));
    return {c, c, true};
  }
  if (is_discrete(measure)) return enumerate_vertices(f, measure);

  const std::size_t n = measure.n;
  const auto per_axis = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(budget), 1.0 / n) + 1e-9)));
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_axis;

  const kernels::PolyProgram prog = kernels::compile(f);
  BestK lows(kStarts, 1.0), highs(kStarts, -1.0);
  std::vector<double> coords, values;
  for (std::size_t first = 0; first < total; first += kChunk) {
    const std::size_t count = std::min(kChunk, total - first);
    grid_chunk(measure, per_axis, first, count, coords);
    values.resize(count);
    kernels::eval_batch(prog, coords, count, values);
    for (std::size_t j = 0; j < count; ++j) {
      lows.offer(values[j], coords.data() + j, n, count);
      highs.offer(values[j], coords.data() + j, n, count);
    }
  }

  OracleResult out;
  out.min_est = lows.items().front().value;
  out.max_est = highs.items().front().value;
  for (auto& c : lows.items()) out.min_est = std::min(out.min_est, refine(prog, measure, c.x, 1.0));
  for (auto& c : highs.items()) out.max_est = std::max(out.max_est, refine(prog, measure, c.x, -1.0));
  out.certified = false;
  return out;
}

}  // namespace pfopt
