#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pfopt/measures.hpp"
#include "pfopt/pencil.hpp"
#include "pfopt/poly.hpp"

namespace pfopt {

enum class Method { kJacobi, kPencil, kTheta };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct ProblemSpec {
  std::string name;
  Poly f{1};
  MeasureSpec measure;
  std::vector<std::size_t> r_values;  // ascending, no duplicates
  std::vector<Method> methods{Method::kJacobi};

  bool uses(Method m) const;
  /// Throws ValidationError if the invariants do not hold.
  void validate() const;
};

struct OracleResult {
  double min_est = 0;
  double max_est = 0;
  /// True only for exhaustive enumeration of a finite support.
  bool certified = false;
};

/// Reference values for min/max of f on the support of the measure.
/// Finite supports are enumerated. Compact continuous sets get a grid of
/// about `budget` points and coordinate-wise refinement from the best 16.
/// Unbounded supports are searched on a box scaled from the coordinate
/// second moments; the values are then estimates only.
OracleResult oracle_minmax(const Poly& f, const MeasureSpec& measure, std::size_t budget = 1'000'000);

struct BoundsRow {
  std::size_t requested_r = 0;
  /// Order actually used; smaller than requested_r when clamped.
  std::size_t r = 0;
  std::optional<TauBounds> jacobi;
  std::optional<TauBounds> pencil;
  std::optional<TauBounds> theta;
  std::map<Method, double> seconds;
  std::vector<std::string> notes;

  /// Jacobi path if present, else the pencil path.
  std::optional<TauBounds> tau() const { return jacobi ? jacobi : pencil; }
};

struct BoundsReport {
  std::string name;
  std::string f_text;
  MeasureSpec measure;
  std::vector<Method> methods;
  OracleResult oracle;
  /// Whether the oracle values are valid bounds to check the sandwich
  /// against (false on unbounded supports).
  bool oracle_is_reference = true;
  std::optional<std::size_t> max_valid_r;
  std::vector<BoundsRow> rows;
  std::vector<std::string> notes;
  std::vector<std::string> violations;
  /// A method failed numerically at the smallest requested order.
  bool failed_at_min_r = false;
};

struct RunOptions {
  std::size_t oracle_budget = 1'000'000;
  /// Slack for the sandwich and monotonicity checks.
  double check_slack = 1e-9;
  PencilOptions pencil{};
};

/// Computes the pushforward moments once (to index 2 max r + 1) and fills
/// one row per requested r and method.
BoundsReport run_bounds(const ProblemSpec& problem, const RunOptions& options = {});

/// Built-in problems. The four two-variable benchmarks live on the box
/// [-1,1]^2 with normalized Lebesgue measure.
std::vector<ProblemSpec> library_problems();
std::optional<ProblemSpec> find_library_problem(std::string_view name);
Poly motzkin();
Poly matyas();
Poly booth();
/// Three-hump camel 2x^2 - 1.05x^4 + x^6/6 + xy + y^2 with x, y scaled
/// by 5, i.e. 50x1^2 - 656.25x1^4 + (5^6/6)x1^6 + 25x1x2 + 25x2^2.
Poly three_hump_camel();
/// Same with a cross term of 245x1x2, as the benchmark is sometimes
/// printed; it is negative on the box and does not reproduce the table.
Poly three_hump_camel_printed();

struct Table1Cell {
  std::string problem;
  Method method = Method::kJacobi;  // kJacobi for tau, kTheta for theta
  std::size_t r = 0;
  double computed = 0;
  std::string published;
  /// "last-digit", "relative", or "mismatch".
  std::string rule;
  bool match = false;
};

struct Table1Result {
  std::vector<BoundsReport> reports;
  std::vector<Table1Cell> cells;
  bool all_match() const;
};

/// Match policy: within one unit of the last printed digit of the
/// published value, else within 0.5 % relative.
Table1Cell compare_published(std::string problem, Method method, std::size_t r, double computed,
                             std::string published);

Table1Result reproduce_table1(const RunOptions& options = {});

// Report output. Timings are written only on request so that default
// output is byte-for-byte reproducible.
void write_report_csv(std::ostream& os, const std::vector<BoundsReport>& reports, bool timings = false);
void write_report_json(std::ostream& os, const std::vector<BoundsReport>& reports, bool timings = false);
void write_table1_text(std::ostream& os, const Table1Result& result);
void write_table1_csv(std::ostream& os, const Table1Result& result);
void write_table1_json(std::ostream& os, const Table1Result& result);

}  // namespace pfopt
