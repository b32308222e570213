// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pfopt/driver.hpp"
#include "pfopt/error.hpp"
#include "pfopt/jacobi.hpp"
#include "support/oracles.hpp"

using namespace pfopt;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// One unit in the last printed digit, else 0.5 % relative.
bool matches_published(double computed, const std::string& published) {
  const double ref = std::stod(published);
  const auto dot = published.find('.');
  const int dec = dot == std::string::npos ? 0 : static_cast<int>(published.size() - dot - 1);
  const double unit = std::pow(10.0, -dec);
  if (std::fabs(std::round(computed / unit) * unit - ref) <= unit * (1 + 1e-9)) return true;
  return std::fabs(computed - ref) <= 0.005 * std::fabs(ref);
}

struct PublishedRow {
  const char* name;
  const char* r5;
  const char* r6;
};

void table_column(int id, const std::string& label, Method method, const std::vector<PublishedRow>& rows,
                  double limit_seconds) {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    ProblemSpec p = *find_library_problem(row.name);
    p.r_values = {5, 6};
    p.methods = {method};
    RunOptions opts;
    opts.oracle_budget = 10'000;
    const BoundsReport rep = run_bounds(p, opts);
    for (const auto& br : rep.rows) {
      const auto& b = method == Method::kTheta ? br.theta : br.jacobi;
      const std::string pub = br.requested_r == 5 ? row.r5 : row.r6;
      const double v = b ? b->lower : NAN;
      const bool m = b && matches_published(v, pub);
      ok &= m;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s r=%zu %.6g vs %s%s; ", row.name, br.requested_r, v, pub.c_str(),
                    m ? "" : " (MISMATCH)");
      detail += buf;
    }
  }
  const double secs = elapsed(t0);
  ok &= secs < limit_seconds;
  if (method == Method::kJacobi) {
    // Informational: the camel cross term as sometimes printed.
    ProblemSpec alt = *find_library_problem("three_hump_camel_245");
    alt.methods = {Method::kJacobi};
    const auto rep = run_bounds(alt, RunOptions{10'000});
    char note[160];
    std::snprintf(note, sizeof note, "[camel uses 25x1x2; a 245x1x2 cross term would give %.4g / %.4g] ",
                  rep.rows[0].jacobi->lower, rep.rows[1].jacobi->lower);
    detail += note;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs (limit %.0fs)", secs, limit_seconds);
  report(id, label, ok, detail + buf);
}

// --- 3 -------------------------------------------------------------------

void legendre_extremes() {
  const MomentSequence seq = pushforward_moments(Poly::variable(1, 0), {MeasureKind::kBox, 1}, 2 * 20 + 1);
  double worst = 0;
  for (std::size_t r = 0; r <= 20; ++r) {
    const auto [lo, hi] = oracle::legendre_extreme_roots(static_cast<unsigned>(r + 1));
    const TauBounds t = tau_bounds_jacobi(seq, r);
    worst = std::max({worst, std::fabs(t.lower - static_cast<double>(lo)), std::fabs(t.upper - static_cast<double>(hi))});
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |error| over r=0..20 = %.3g (tol 1e-10)", worst);
  report(3, "f=x on the box equals extreme Legendre zeros", worst <= 1e-10, buf);
}

// --- 4 -------------------------------------------------------------------

struct PropertyStats {
  std::size_t problems = 0;
  std::size_t rows = 0;
  std::size_t pencil_compared = 0;
  std::size_t pencil_skipped = 0;
  std::size_t sandwich_checked = 0;
  double worst_pencil = 0;
  double worst_shift = 0;
  double worst_scale = 0;
  std::vector<std::string> problems_failed;
  std::vector<std::string> skips;
};

double rel_gap(double a, double b, double scale) { return std::fabs(a - b) / std::max(scale, 1e-300); }

void check_problem(const ProblemSpec& base, std::mt19937_64& rng, PropertyStats& st) {
  constexpr double kMonoSlack = 1e-9;
  ProblemSpec p = base;
  p.r_values = {1, 2, 3, 4, 5, 6, 7, 8};
  p.methods = {Method::kJacobi, Method::kPencil};
  RunOptions opts;
  opts.oracle_budget = 200'000;
  const BoundsReport rep = run_bounds(p, opts);
  ++st.problems;
  bool ok = true;
  std::string why;
  auto fail = [&](const std::string& w) {
    ok = false;
    if (why.empty()) why = w;
  };

  const TauBounds* prev = nullptr;
  for (const auto& row : rep.rows) {
    ++st.rows;
    if (!row.jacobi) {
      fail("missing jacobi bound");
      continue;
    }
    const TauBounds& j = *row.jacobi;
    if (prev) {
      if (j.lower > prev->lower + kMonoSlack * std::max(1.0, std::fabs(prev->lower))) fail("lower increased");
      if (j.upper < prev->upper - kMonoSlack * std::max(1.0, std::fabs(prev->upper))) fail("upper decreased");
    }
    prev = &*row.jacobi;
    if (is_compact(p.measure)) {
      ++st.sandwich_checked;
      if (j.lower < rep.oracle.min_est - kMonoSlack * std::max(1.0, std::fabs(rep.oracle.min_est)))
        fail("lower below oracle min");
      if (j.upper > rep.oracle.max_est + kMonoSlack * std::max(1.0, std::fabs(rep.oracle.max_est)))
        fail("upper above oracle max");
    }
    if (row.pencil) {
      ++st.pencil_compared;
      const double scale = std::max(std::fabs(j.lower), std::fabs(j.upper));
      const double g = std::max(rel_gap(row.pencil->lower, j.lower, scale), rel_gap(row.pencil->upper, j.upper, scale));
      st.worst_pencil = std::max(st.worst_pencil, g);
      if (g > 1e-8) fail("pencil/jacobi disagree");
    } else {
      ++st.pencil_skipped;
      st.skips.push_back(p.name + " (" + describe(p.measure) + ") r=" + std::to_string(row.r) + ": " +
                         (row.notes.empty() ? std::string("?") : row.notes.back()));
      if (row.r == 1) fail("pencil failed at r=1");
    }
  }

  // Shift identity and moment scaling on the Jacobi path.
  const std::size_t r_top = rep.rows.back().r;
  std::uniform_int_distribution<int> num(-40, 40);
  const Rational c = oracle::rational(num(rng), 8);
  const Poly shifted = p.f + Poly::constant(p.f.n(), c);
  const auto seq = pushforward_moments(p.f, p.measure, static_cast<unsigned>(2 * r_top + 1));
  const auto seq_shift = pushforward_moments(shifted, p.measure, static_cast<unsigned>(2 * r_top + 1));
  MomentSequence seq_scaled = seq;
  const Rational lambda(37, 5);
  for (auto& v : seq_scaled.values) v *= lambda;
  for (std::size_t r = 1; r <= r_top; ++r) {
    const TauBounds a = tau_bounds_jacobi(seq, r);
    const TauBounds s = tau_bounds_jacobi(seq_shift, r);
    const TauBounds z = tau_bounds_jacobi(seq_scaled, r);
    // The pencil path must be invariant too, wherever it accepts the order.
    try {
      const TauBounds pa = tau_bounds_pencil(seq, r), pz = tau_bounds_pencil(seq_scaled, r);
      const double pe = std::max(std::fabs(pz.lower - pa.lower) / std::max(1.0, std::fabs(pa.lower)),
                                 std::fabs(pz.upper - pa.upper) / std::max(1.0, std::fabs(pa.upper)));
      st.worst_scale = std::max(st.worst_scale, pe);
      if (pe > 1e-12) fail("pencil scaling invariance");
    } catch (const NotPositiveDefinite&) {
    }
    const double cd = to_double(c);
    const double shift_err = std::max(std::fabs(s.lower - (a.lower + cd)) / std::max(1.0, std::fabs(a.lower + cd)),
                                      std::fabs(s.upper - (a.upper + cd)) / std::max(1.0, std::fabs(a.upper + cd)));
    const double scale_err = std::max(std::fabs(z.lower - a.lower) / std::max(1.0, std::fabs(a.lower)),
                                      std::fabs(z.upper - a.upper) / std::max(1.0, std::fabs(a.upper)));
    st.worst_shift = std::max(st.worst_shift, shift_err);
    st.worst_scale = std::max(st.worst_scale, scale_err);
    if (shift_err > 1e-9) fail("shift identity");
    if (scale_err > 1e-12) fail("scaling invariance");
  }
  if (!ok) st.problems_failed.push_back(p.name + " on " + describe(p.measure) + ": " + why);
}

void property_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240521);
  PropertyStats st;
  for (const auto& p : library_problems()) check_problem(p, rng, st);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_int_distribution<unsigned> deg(1, 4);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = dim(rng);
    ProblemSpec p;
    p.name = "random" + std::to_string(i);
    p.f = oracle::random_poly(rng, n, deg(rng));
    p.measure = oracle::random_spec(rng, n);
    if (p.f.is_constant()) p.f = p.f + Poly::variable(n, 0);
    check_problem(p, rng, st);
  }
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%zu problems, %zu rows, %zu sandwich checks, pencil compared %zu / skipped %zu, "
                "worst pencil gap %.2g, shift %.2g, scaling %.2g, %.1fs",
                st.problems, st.rows, st.sandwich_checked, st.pencil_compared, st.pencil_skipped, st.worst_pencil,
                st.worst_shift, st.worst_scale, elapsed(t0));
  std::string detail = buf;
  for (const auto& f : st.problems_failed) detail += "\n    " + f;
  for (const auto& s : st.skips) detail += "\n    pencil skipped: " + s;
  report(4, "property suite (monotone, sandwich, pencil=jacobi, shift, scaling)", st.problems_failed.empty(),
         detail);
}

// --- 5 -------------------------------------------------------------------

void ldl_hankel_ratio() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> atom(-30, 30), w(1, 9), rr(1, 6);
  bool ok = true;
  std::size_t checked = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t r = static_cast<std::size_t>(rr(rng));
    // r + 3 distinct atoms keep every Hankel block up to order r+2 definite.
    std::vector<Rational> atoms, weights;
    while (atoms.size() < r + 3) {
      const Rational a = oracle::rational(atom(rng), 7);
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) {
        atoms.push_back(a);
        weights.push_back(oracle::rational(w(rng), 3));
      }
    }
    MomentSequence seq{oracle::atomic_moments(atoms, weights, 2 * r + 1), "atomic"};
    const MonicRecurrence rec = monic_recurrence_from_moments(seq, r);
    ok &= rec.beta[0] == seq[0];
    std::vector<Rational> d(r + 2);
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = oracle::hankel_det(seq.values, j);
    for (std::size_t j = 1; j <= r; ++j) {
      ++checked;
      const Rational expected = d[j - 1] * d[j + 1] / (d[j] * d[j]);
      ok &= rec.beta.at(j) == expected;
    }
  }
  report(5, "recurrence beta equals Hankel determinant ratio exactly", ok,
         std::to_string(checked) + " coefficients over 20 sequences");
}

// --- 6 -------------------------------------------------------------------

void hypercube_exactness() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  bool ok = true;
  double worst = 0;
  std::string detail;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = dim(rng);
    Poly f = oracle::random_multilinear(rng, n);
    if (f.is_constant()) f = f + Poly::variable(n, 0);
    const auto values = oracle::values_on_vertices(f, n, true);
    const MeasureSpec spec{MeasureKind::kCube01, n};
    // Ask for more than enough; the recurrence stops at the rank.
    const std::size_t r_req = values.size() + 1;
    const auto seq = pushforward_moments(f, spec, static_cast<unsigned>(2 * r_req + 1));
    const MonicRecurrence rec = monic_recurrence_from_moments(seq, r_req);
    const TauBounds b = tau_bounds_jacobi(seq, rec.max_valid_r);
    const double lo = to_double(values.front()), hi = to_double(values.back());
    const double err = std::max(std::fabs(b.lower - lo), std::fabs(b.upper - hi));
    worst = std::max(worst, err);
    const bool this_ok = err <= 1e-9 && rec.max_valid_r <= values.size() - 1;
    if (!this_ok) detail += " [n=" + std::to_string(n) + " " + to_string(f) + "]";
    ok &= this_ok;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "20 polynomials, worst |error| %.3g", worst);
  report(6, "multilinear on {0,1}^n attains enumerated min/max at max valid r", ok, buf + detail);
}

// --- 7 -------------------------------------------------------------------

// Coefficients (ascending powers) of the monic p_0..p_m from the recurrence.
std::vector<std::vector<Rational>> monic_polys(const MonicRecurrence& rec, std::size_t m) {
  std::vector<std::vector<Rational>> p(m + 1);
  p[0] = {Rational(1)};
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> next(j + 2, Rational(0));
    for (std::size_t k = 0; k <= j; ++k) {
      next[k + 1] += p[j][k];
      next[k] -= rec.alpha[j] * p[j][k];
    }
    if (j > 0) {
      for (std::size_t k = 0; k < p[j - 1].size(); ++k) next[k] -= rec.beta[j] * p[j - 1][k];
    }
    p[j + 1] = std::move(next);
  }
  return p;
}

void orthonormality() {
  constexpr std::size_t kMax = 6;
  double worst = 0, worst_eval = 0;
  for (const char* name : {"motzkin", "matyas", "booth"}) {
    const ProblemSpec p = *find_library_problem(name);
    const auto seq = pushforward_moments(p.f, p.measure, 2 * kMax + 1);
    const MonicRecurrence rec = monic_recurrence_from_moments(seq, kMax);
    const auto polys = monic_polys(rec, kMax);
    std::vector<Rational> norm2(kMax + 1);
    Rational acc(1);
    for (std::size_t j = 0; j <= kMax; ++j) norm2[j] = acc *= rec.beta[j];
    for (std::size_t i = 0; i <= kMax; ++i) {
      for (std::size_t j = 0; j <= kMax; ++j) {
        Rational ip(0);
        for (std::size_t a = 0; a < polys[i].size(); ++a) {
          for (std::size_t b = 0; b < polys[j].size(); ++b) ip += polys[i][a] * polys[j][b] * seq[a + b];
        }
        const double val = to_double(ip) / std::sqrt(to_double(norm2[i]) * to_double(norm2[j]));
        worst = std::max(worst, std::fabs(val - (i == j ? 1.0 : 0.0)));
      }
      // The library's evaluator must agree with the explicit polynomial.
      for (double x : {-0.5, 0.3, 2.0}) {
        Rational px(0), xp(1);
        const Rational xr = from_double(x);
        for (const auto& c : polys[i]) {
          px += c * xp;
          xp *= xr;
        }
        const double ref = to_double(px) / std::sqrt(to_double(norm2[i]));
        worst_eval = std::max(worst_eval, std::fabs(orthonormal_eval(rec, i, x) - ref) / std::max(1.0, std::fabs(ref)));
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |<T_i,T_j> - delta_ij| = %.3g, evaluator rel. error %.3g", worst, worst_eval);
  report(7, "orthonormality of T_0..T_6 (motzkin, matyas, booth)", worst <= 1e-9 && worst_eval <= 1e-9, buf);
}

// --- 8 -------------------------------------------------------------------

void gaussian_valley() {
  ProblemSpec p = *find_library_problem("gaussian_valley");
  p.r_values = {3, 4, 5, 6, 7, 8};
  p.methods = {Method::kJacobi};
  const BoundsReport rep = run_bounds(p);
  bool ok = true;
  std::string detail;
  double prev = INFINITY;
  for (const auto& row : rep.rows) {
    const double v = row.jacobi ? row.jacobi->lower : NAN;
    ok &= row.jacobi && v > 0 && v <= prev;
    prev = v;
    char buf[48];
    std::snprintf(buf, sizeof buf, "r=%zu %.6g; ", row.r, v);
    detail += buf;
  }
  ok &= rep.rows.back().jacobi->lower < rep.rows.front().jacobi->lower;
  report(8, "gaussian valley lower bounds positive, non-increasing, improving", ok, detail);
}

}  // namespace

int main() {
  try {
    table_column(1, "table tau column r=5,6", Method::kJacobi,
                 {{"motzkin", "0.873", "0.808"},
                  {"matyas", "2.06", "1.68"},
                  {"booth", "56.64", "45.49"},
                  {"three_hump_camel", "15.07", "12.68"}},
                 10.0);
    table_column(2, "table theta column r=5,6", Method::kTheta,
                 {{"motzkin", "0.801", "0.801"},
                  {"matyas", "3.69", "2.99"},
                  {"booth", "69.81", "63.54"},
                  {"three_hump_camel", "9.58", "4.439"}},
                 60.0);
    legendre_extremes();
    property_suite();
    ldl_hankel_ratio();
    hypercube_exactness();
    orthonormality();
    gaussian_valley();
  } catch (const std::exception& e) {
    std::printf("FAIL unexpected exception: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
