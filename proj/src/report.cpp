#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"
#include <algorithm>
#include <string>

#include "pfopt/driver.hpp"

namespace pfopt {

namespace {

using nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{:.15g}", v); }

// Quotes a CSV field when it needs it.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

const std::optional<TauBounds>& bounds_for(const BoundsRow& row, Method m) {
  switch (m) {
    case Method::kPencil:
      return row.pencil;
    case Method::kTheta:
      return row.theta;
    default:
      return row.jacobi;
  }
}

ordered_json optional_number(const std::optional<TauBounds>& b, bool lower) {
  if (!b) return nullptr;
  return lower ? b->lower : b->upper;
}

}  // namespace

void write_report_csv(std::ostream& os, const std::vector<BoundsReport>& reports, bool timings) {
  os << "problem,measure,n,r_requested,r,method,lower,upper,oracle_min,oracle_max,oracle_certified,notes";
  if (timings) os << ",seconds";
  os << '\n';
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      for (Method m : rep.methods) {
        const auto& b = bounds_for(row, m);
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{}", csv_field(rep.name), kind_name(rep.measure.kind),
                   rep.measure.n, row.requested_r, row.r, method_name(m), b ? num(b->lower) : "",
                   b ? num(b->upper) : "", num(rep.oracle.min_est), num(rep.oracle.max_est),
                   rep.oracle.certified ? 1 : 0, csv_field(join(row.notes, "; ")));
        if (timings) {
          auto it = row.seconds.find(m);
          os << ',' << (it == row.seconds.end() ? "" : fmt::format("{:.6f}", it->second));
        }
        os << '\n';
      }
    }
  }
}

void write_report_json(std::ostream& os, const std::vector<BoundsReport>& reports, bool timings) {
  ordered_json out = ordered_json::array();
  for (const auto& rep : reports) {
    ordered_json j;
    j["name"] = rep.name;
    j["f"] = rep.f_text;
    j["measure"] = {{"kind", kind_name(rep.measure.kind)}, {"n", rep.measure.n}};
    ordered_json methods = ordered_json::array();
    for (Method m : rep.methods) methods.push_back(method_name(m));
    j["methods"] = methods;
    j["oracle"] = {{"min", rep.oracle.min_est},
                   {"max", rep.oracle.max_est},
                   {"certified", rep.oracle.certified},
                   {"reference", rep.oracle_is_reference}};
    j["max_valid_r"] = rep.max_valid_r ? ordered_json(*rep.max_valid_r) : ordered_json(nullptr);
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.rows) {
      ordered_json jr;
      jr["r_requested"] = row.requested_r;
      jr["r"] = row.r;
      for (Method m : rep.methods) {
        const auto& b = bounds_for(row, m);
        ordered_json jm = {{"lower", optional_number(b, true)}, {"upper", optional_number(b, false)}};
        if (timings) {
          auto it = row.seconds.find(m);
          jm["seconds"] = it == row.seconds.end() ? ordered_json(nullptr) : ordered_json(it->second);
        }
        jr[std::string(method_name(m))] = jm;
      }
      jr["notes"] = row.notes;
      rows.push_back(jr);
    }
    j["rows"] = rows;
    j["notes"] = rep.notes;
    j["violations"] = rep.violations;
    out.push_back(j);
  }
  os << out.dump(2) << '\n';
}

void write_table1_text(std::ostream& os, const Table1Result& result) {
  os << "Benchmarks on [-1,1]^2 with normalized Lebesgue measure (assumed reference measure).\n"
        "three_hump_camel = 50x1^2 - 656.25x1^4 + (15625/6)x1^6 + 25x1x2 + 25x2^2; with the cross\n"
        "term printed as 245x1x2 instead, see the library problem three_hump_camel_245.\n"
        "theta = multivariate moment bound, tau = Jacobi bound; entries are computed [published].\n\n";
  fmt::print(os, "{:<18}", "problem");
  for (const char* h : {"theta_5", "tau_5", "theta_6", "tau_6"}) fmt::print(os, " {:>22}", h);
  os << '\n';
  std::vector<std::string> order;
  for (const auto& c : result.cells) {
    if (std::find(order.begin(), order.end(), c.problem) == order.end()) order.push_back(c.problem);
  }
  std::size_t mismatches = 0;
  for (const auto& name : order) {
    fmt::print(os, "{:<18}", name);
    for (auto [m, r] : {std::pair{Method::kTheta, 5}, {Method::kJacobi, 5}, {Method::kTheta, 6}, {Method::kJacobi, 6}}) {
      auto it = std::find_if(result.cells.begin(), result.cells.end(), [&](const Table1Cell& c) {
        return c.problem == name && c.method == m && c.r == static_cast<std::size_t>(r);
      });
      if (it == result.cells.end()) {
        fmt::print(os, " {:>22}", "-");
        continue;
      }
      mismatches += !it->match;
      fmt::print(os, " {:>22}", fmt::format("{:.6g} [{}]{}", it->computed, it->published, it->match ? "" : "!"));
    }
    os << '\n';
  }
  fmt::print(os, "\n{} of {} entries match (last printed digit, else 0.5% relative){}\n",
             result.cells.size() - mismatches, result.cells.size(), mismatches ? "; ! marks a mismatch" : "");
}

void write_table1_csv(std::ostream& os, const Table1Result& result) {
  os << "problem,bound,r,computed,published,rule,match\n";
  for (const auto& c : result.cells) {
    fmt::print(os, "{},{},{},{},{},{},{}\n", c.problem, c.method == Method::kTheta ? "theta" : "tau", c.r,
               num(c.computed), c.published, c.rule, c.match ? 1 : 0);
  }
}

void write_table1_json(std::ostream& os, const Table1Result& result) {
  ordered_json out = ordered_json::array();
  for (const auto& c : result.cells) {
    out.push_back({{"problem", c.problem},
                   {"bound", c.method == Method::kTheta ? "theta" : "tau"},
                   {"r", c.r},
                   {"computed", c.computed},
                   {"published", c.published},
                   {"rule", c.rule},
                   {"match", c.match}});
  }
  os << out.dump(2) << '\n';
}

}  // namespace pfopt
