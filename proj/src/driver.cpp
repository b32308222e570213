#include "pfopt/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "pfopt/error.hpp"
#include "pfopt/jacobi.hpp"
#include "pfopt/mvbounds.hpp"

namespace pfopt {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kJacobi:
      return "jacobi";
    case Method::kPencil:
      return "pencil";
    case Method::kTheta:
      return "theta";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kJacobi, Method::kPencil, Method::kTheta}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

bool ProblemSpec::uses(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

void ProblemSpec::validate() const {
  if (f.n() != measure.n) throw DimensionMismatch("problem '" + name + "': polynomial and measure dimensions differ");
  if (measure.n == 0) throw ValidationError("problem '" + name + "': dimension must be positive");
  if (r_values.empty()) throw ValidationError("problem '" + name + "': no relaxation orders requested");
  if (!std::is_sorted(r_values.begin(), r_values.end()) ||
      std::adjacent_find(r_values.begin(), r_values.end()) != r_values.end()) {
    throw ValidationError("problem '" + name + "': r values must be strictly ascending");
  }
  if (methods.empty()) throw ValidationError("problem '" + name + "': no method selected");
}

// ---------------------------------------------------------------------------
// Library

namespace {

Poly two_var(std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, Rational>> terms) {
  Poly p(2);
  for (const auto& [a, b, c] : terms) p.add_term(Monomial{a, b}, c);
  return p;
}

Poly square(const Poly& p) { return p * p; }

}  // namespace

Poly motzkin() {
  return two_var({{4, 2, Rational(64)}, {2, 4, Rational(64)}, {2, 2, Rational(-48)}, {0, 0, Rational(1)}});
}

Poly matyas() { return two_var({{2, 0, Rational(26)}, {0, 2, Rational(26)}, {1, 1, Rational(-48)}}); }

Poly booth() {
  return square(two_var({{1, 0, Rational(10)}, {0, 1, Rational(20)}, {0, 0, Rational(-7)}})) +
         square(two_var({{1, 0, Rational(20)}, {0, 1, Rational(10)}, {0, 0, Rational(-5)}}));
}

Poly three_hump_camel() {
  // 2x^2 - 1.05x^4 + x^6/6 + xy + y^2 with both variables scaled by 5.
  return two_var({{6, 0, Rational(15625, 6)},
                  {4, 0, Rational(-105 * 625, 100)},
                  {2, 0, Rational(50)},
                  {1, 1, Rational(25)},
                  {0, 2, Rational(25)}});
}

Poly three_hump_camel_printed() {
  Poly p = three_hump_camel();
  p.add_term(Monomial{1, 1}, Rational(220));
  return p;
}

std::vector<ProblemSpec> library_problems() {
  const MeasureSpec box2{MeasureKind::kBox, 2};
  const std::vector<Method> table_methods{Method::kJacobi, Method::kTheta};
  std::vector<ProblemSpec> out;
  out.push_back({"motzkin", motzkin(), box2, {5, 6}, table_methods});
  out.push_back({"matyas", matyas(), box2, {5, 6}, table_methods});
  out.push_back({"booth", booth(), box2, {5, 6}, table_methods});
  out.push_back({"three_hump_camel", three_hump_camel(), box2, {5, 6}, table_methods});
  out.push_back({"three_hump_camel_245", three_hump_camel_printed(), box2, {5, 6}, table_methods});
  out.push_back({"legendre", Poly::variable(1, 0), MeasureSpec{MeasureKind::kBox, 1}, {1, 2, 3}, {Method::kJacobi}});
  {
    Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
    Poly valley = square(x1 * x2 - Poly::constant(2, Rational(1))) + x2 * x2;
    out.push_back({"gaussian_valley", valley, MeasureSpec{MeasureKind::kGaussian, 2}, {3, 4, 5, 6, 7, 8},
                   {Method::kJacobi}});
  }
  out.push_back({"cube_sum", Poly::variable(2, 0) + Poly::variable(2, 1), MeasureSpec{MeasureKind::kCube01, 2},
                 {1, 2, 3}, {Method::kJacobi}});
  return out;
}

std::optional<ProblemSpec> find_library_problem(std::string_view name) {
  for (auto& p : library_problems()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// run_bounds

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_r(std::size_t r) { return std::to_string(r); }

void check_sandwich(BoundsReport& report, const BoundsRow& row, Method m, const TauBounds& b, double slack) {
  if (!report.oracle_is_reference) return;
  const double lo_slack = slack * std::max(1.0, std::fabs(report.oracle.min_est));
  const double hi_slack = slack * std::max(1.0, std::fabs(report.oracle.max_est));
  if (b.lower < report.oracle.min_est - lo_slack) {
    report.violations.push_back("r=" + fmt_r(row.r) + " " + std::string(method_name(m)) +
                                ": lower bound below oracle minimum");
  }
  if (b.upper > report.oracle.max_est + hi_slack) {
    report.violations.push_back("r=" + fmt_r(row.r) + " " + std::string(method_name(m)) +
                                ": upper bound above oracle maximum");
  }
}

void check_monotone(BoundsReport& report, Method m, double slack) {
  const BoundsRow* prev = nullptr;
  std::optional<TauBounds> prev_b;
  for (const auto& row : report.rows) {
    std::optional<TauBounds> b = m == Method::kJacobi ? row.jacobi : m == Method::kPencil ? row.pencil : row.theta;
    if (!b) continue;
    if (prev && prev_b && row.r > prev->r) {
      if (b->lower > prev_b->lower + slack * std::max(1.0, std::fabs(prev_b->lower))) {
        report.violations.push_back("r=" + fmt_r(row.r) + " " + std::string(method_name(m)) +
                                    ": lower bound increased");
      }
      if (b->upper < prev_b->upper - slack * std::max(1.0, std::fabs(prev_b->upper))) {
        report.violations.push_back("r=" + fmt_r(row.r) + " " + std::string(method_name(m)) +
                                    ": upper bound decreased");
      }
    }
    prev = &row;
    prev_b = b;
  }
}

}  // namespace

BoundsReport run_bounds(const ProblemSpec& problem, const RunOptions& options) {
  problem.validate();
  BoundsReport report;
  report.name = problem.name;
  report.f_text = to_string(problem.f);
  report.measure = problem.measure;
  report.methods = problem.methods;
  report.oracle = oracle_minmax(problem.f, problem.measure, options.oracle_budget);
  report.oracle_is_reference = is_compact(problem.measure);
  if (!report.oracle_is_reference) {
    report.notes.push_back("unbounded support: oracle values are sampled estimates, sandwich not checked");
  }

  const std::size_t max_r = problem.r_values.back();
  const bool univariate = problem.uses(Method::kJacobi) || problem.uses(Method::kPencil);

  std::optional<MomentSequence> seq;
  std::optional<MonicRecurrence> rec;
  if (univariate) {
    seq = pushforward_moments(problem.f, problem.measure, static_cast<unsigned>(2 * max_r + 1));
    rec = monic_recurrence_from_moments(*seq, max_r);
    report.max_valid_r = rec->max_valid_r;
  }

  // Theta matrices at the largest order; smaller orders are leading blocks.
  std::optional<SymMatrix<Rational>> theta_loc, theta_mom;
  std::optional<std::size_t> theta_r_built;

  for (std::size_t r : problem.r_values) {
    BoundsRow row;
    row.requested_r = r;
    row.r = r;
    const bool first = r == problem.r_values.front();

    if (univariate && r > rec->max_valid_r) {
      row.r = rec->max_valid_r;
      row.notes.push_back("r=" + fmt_r(r) + " clamped to " + fmt_r(row.r) +
                          ": pushforward measure is atomic (Hankel rank " + fmt_r(row.r + 1) + ")");
    }

    if (problem.uses(Method::kJacobi)) {
      const auto start = Clock::now();
      const EigenRange e = tridiag_extreme_eigs(jacobi_truncation(*rec, row.r));
      row.jacobi = TauBounds{e.lambda_min, e.lambda_max};
      row.seconds[Method::kJacobi] = seconds_since(start);
    }
    if (problem.uses(Method::kPencil)) {
      const auto start = Clock::now();
      try {
        row.pencil = tau_bounds_pencil(*seq, row.r, options.pencil);
      } catch (const NumericalError& e) {
        row.notes.push_back(std::string("pencil: ") + e.what());
        if (first) report.failed_at_min_r = true;
      }
      row.seconds[Method::kPencil] = seconds_since(start);
    }
    if (problem.uses(Method::kTheta)) {
      const auto start = Clock::now();
      try {
        if (!theta_r_built) {
          theta_r_built = max_r;
          theta_loc = mv_localizing_matrix(problem.f, problem.measure, max_r);
          theta_mom = mv_moment_matrix(problem.measure, max_r);
        }
        const std::size_t size = MonomialBasis::count(problem.measure.n, r);
        const PencilResult res =
            pencil_extremes(theta_loc->leading(size), theta_mom->leading(size), options.pencil);
        row.theta = TauBounds{res.lambda_min, res.lambda_max};
      } catch (const NumericalError& e) {
        row.notes.push_back(std::string("theta: ") + e.what());
        if (first) report.failed_at_min_r = true;
      }
      row.seconds[Method::kTheta] = seconds_since(start);
    }

    if (row.jacobi) check_sandwich(report, row, Method::kJacobi, *row.jacobi, options.check_slack);
    if (row.pencil) check_sandwich(report, row, Method::kPencil, *row.pencil, options.check_slack);
    if (row.theta) check_sandwich(report, row, Method::kTheta, *row.theta, options.check_slack);

    // Finite support: the clamped order must be exact.
    if (row.r < row.requested_r && report.oracle.certified && row.tau()) {
      const TauBounds t = *row.tau();
      const double tol = options.check_slack * std::max(1.0, std::fabs(report.oracle.min_est));
      const double tol_hi = options.check_slack * std::max(1.0, std::fabs(report.oracle.max_est));
      if (std::fabs(t.lower - report.oracle.min_est) > tol || std::fabs(t.upper - report.oracle.max_est) > tol_hi) {
        report.violations.push_back("r=" + fmt_r(row.r) + ": clamped order does not attain enumerated optimum");
      }
    }
    report.rows.push_back(std::move(row));
  }

  for (Method m : problem.methods) check_monotone(report, m, options.check_slack);
  return report;
}

}  // namespace pfopt
