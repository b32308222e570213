#include <cmath>
#include <string>

#include "pfopt/driver.hpp"

namespace pfopt {

namespace {

struct Published {
  const char* problem;
  const char* theta5;
  const char* tau5;
  const char* theta6;
  const char* tau6;
};

constexpr Published kPublished[] = {
    {"motzkin", "0.801", "0.873", "0.801", "0.808"},
    {"matyas", "3.69", "2.06", "2.99", "1.68"},
    {"booth", "69.81", "56.64", "63.54", "45.49"},
    {"three_hump_camel", "9.58", "15.07", "4.439", "12.68"},
};

int decimals_of(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

}  // namespace

bool Table1Result::all_match() const {
  for (const auto& c : cells) {
    if (!c.match) return false;
  }
  return !cells.empty();
}

Table1Cell compare_published(std::string problem, Method method, std::size_t r, double computed,
                             std::string published) {
  Table1Cell cell{std::move(problem), method, r, computed, std::move(published), "mismatch", false};
  const double ref = std::stod(cell.published);
  const int dec = decimals_of(cell.published);
  const double unit = std::pow(10.0, -dec);
  // Round to the printed precision, then allow one unit either way.
  const double rounded = std::round(computed / unit) * unit;
  if (std::fabs(rounded - ref) <= unit * (1 + 1e-9)) {
    cell.rule = "last-digit";
    cell.match = true;
  } else if (std::fabs(computed - ref) <= 0.005 * std::fabs(ref)) {
    cell.rule = "relative";
    cell.match = true;
  }
  return cell;
}

Table1Result reproduce_table1(const RunOptions& options) {
  Table1Result result;
  for (const Published& row : kPublished) {
    const auto problem = find_library_problem(row.problem);
    BoundsReport report = run_bounds(*problem, options);
    for (const BoundsRow& br : report.rows) {
      const bool five = br.requested_r == 5;
      if (br.jacobi) {
        result.cells.push_back(
            compare_published(row.problem, Method::kJacobi, br.requested_r, br.jacobi->lower, five ? row.tau5 : row.tau6));
      }
      if (br.theta) {
        result.cells.push_back(compare_published(row.problem, Method::kTheta, br.requested_r, br.theta->lower,
                                                 five ? row.theta5 : row.theta6));
      }
    }
    result.reports.push_back(std::move(report));
  }
  return result;
}

}  // namespace pfopt
