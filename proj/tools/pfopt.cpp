// pfopt: bounds on polynomial extrema from pushforward moments.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure at the
// smallest requested order.

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pfopt/driver.hpp"
#include "pfopt/error.hpp"
#include "pfopt/io.hpp"
#include "pfopt/jacobi.hpp"
#include "pfopt/kernels/kernels.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::size_t parse_size(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      s.size() > 6) {
    throw pfopt::ValidationError("bad order '" + s + "'");
  }
  return std::stoul(s);
}

// "a..b" or a comma separated list.
std::vector<std::size_t> parse_r_values(const std::string& text) {
  std::vector<std::size_t> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t a = parse_size(text.substr(0, dots)), b = parse_size(text.substr(dots + 2));
    if (a > b) throw pfopt::ValidationError("empty r range '" + text + "'");
    for (std::size_t r = a; r <= b; ++r) out.push_back(r);
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_size(item));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw pfopt::ValidationError("no r values given");
  return out;
}

std::vector<pfopt::Method> parse_methods(const std::string& text) {
  std::vector<pfopt::Method> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto m = pfopt::parse_method(item);
    if (!m) throw pfopt::ValidationError("unknown method '" + item + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  return out;
}

// A path to a JSON file, or the name of a built-in problem.
pfopt::ProblemSpec load_problem(const std::string& ref) {
  if (!std::filesystem::exists(ref)) {
    if (auto lib = pfopt::find_library_problem(ref)) return *lib;
  }
  return pfopt::read_problem_file(ref);
}

// Runs `body` with output going to `path` (or stdout when empty).
template <class F>
void with_output(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw pfopt::ValidationError("cannot write '" + path + "'");
  body(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on polynomial extrema from moments of the pushforward measure"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Force a kernel variant (scalar, avx2, neon)");

  std::string problem_ref, r_text, method_text = "jacobi", out_format = "csv", out_file;
  std::size_t budget = 1'000'000;
  bool timings = false;
  auto* bounds = app.add_subcommand("bounds", "Bounds on min/max of f for each order r");
  bounds->add_option("--problem", problem_ref, "Problem JSON file or built-in name")->required();
  bounds->add_option("--r", r_text, "Orders: a..b or a comma list")->required();
  bounds->add_option("--method", method_text, "Comma list of jacobi, pencil, theta");
  bounds->add_option("--oracle-budget", budget, "Grid points for the reference min/max")->check(CLI::PositiveNumber);
  bounds->add_option("--out", out_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--out-file", out_file, "Write output here instead of stdout");
  bounds->add_flag("--timings", timings, "Include per-method wall time");

  std::size_t max_k = 0;
  auto* moments = app.add_subcommand("moments", "Exact pushforward moments as num/den pairs");
  moments->add_option("--problem", problem_ref, "Problem JSON file or built-in name")->required();
  moments->add_option("--max-k", max_k, "Largest moment index")->required();
  moments->add_option("--out-file", out_file, "Write output here instead of stdout");

  std::size_t rec_r = 0;
  auto* recurrence = app.add_subcommand("recurrence", "Three-term recurrence coefficients as exact CSV");
  recurrence->add_option("--problem", problem_ref, "Problem JSON file or built-in name")->required();
  recurrence->add_option("--r", rec_r, "Order")->required();
  recurrence->add_option("--out-file", out_file, "Write output here instead of stdout");

  std::string table_format = "text";
  auto* table1 = app.add_subcommand("table1", "Reproduce the benchmark table and compare with published values");
  table1->add_option("--out", table_format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  table1->add_option("--out-file", out_file, "Write output here instead of stdout");
  table1->add_option("--oracle-budget", budget, "Grid points for the reference min/max")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (!isa.empty()) {
      bool found = false;
      for (auto candidate : {pfopt::kernels::Isa::kScalar, pfopt::kernels::Isa::kAvx2, pfopt::kernels::Isa::kNeon}) {
        if (pfopt::kernels::isa_name(candidate) == isa) {
          pfopt::kernels::set_active_isa(candidate);
          found = true;
        }
      }
      if (!found) throw pfopt::ValidationError("unknown ISA '" + isa + "'");
    }

    if (*bounds) {
      pfopt::ProblemSpec problem = load_problem(problem_ref);
      problem.r_values = parse_r_values(r_text);
      problem.methods = parse_methods(method_text);
      pfopt::RunOptions options;
      options.oracle_budget = budget;
      const pfopt::BoundsReport report = pfopt::run_bounds(problem, options);
      with_output(out_file, [&](std::ostream& os) {
        if (out_format == "json") {
          pfopt::write_report_json(os, {report}, timings);
        } else {
          pfopt::write_report_csv(os, {report}, timings);
        }
      });
      for (const auto& v : report.violations) std::cerr << "warning: " << v << '\n';
      if (report.failed_at_min_r) {
        std::cerr << "error: numerical failure at r=" << problem.r_values.front() << '\n';
        return kExitNumerical;
      }
    } else if (*moments) {
      const pfopt::ProblemSpec problem = load_problem(problem_ref);
      const auto seq = pfopt::pushforward_moments(problem.f, problem.measure, static_cast<unsigned>(max_k));
      with_output(out_file, [&](std::ostream& os) {
        os << "k,num,den\n";
        for (std::size_t k = 0; k < seq.size(); ++k) {
          os << k << ',' << pfopt::to_string(seq[k].get_num()) << ',' << pfopt::to_string(seq[k].get_den()) << '\n';
        }
      });
    } else if (*recurrence) {
      const pfopt::ProblemSpec problem = load_problem(problem_ref);
      const auto seq = pfopt::pushforward_moments(problem.f, problem.measure, static_cast<unsigned>(2 * rec_r + 1));
      const auto rec = pfopt::monic_recurrence_from_moments(seq, rec_r);
      with_output(out_file, [&](std::ostream& os) { pfopt::write_recurrence_csv(os, rec); });
    } else if (*table1) {
      pfopt::RunOptions options;
      options.oracle_budget = budget;
      const auto result = pfopt::reproduce_table1(options);
      with_output(out_file, [&](std::ostream& os) {
        if (table_format == "csv") {
          pfopt::write_table1_csv(os, result);
        } else if (table_format == "json") {
          pfopt::write_table1_json(os, result);
        } else {
          pfopt::write_table1_text(os, result);
        }
      });
    }
  } catch (const pfopt::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const pfopt::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
