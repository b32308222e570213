#pragma once

#include <istream>
#include <string>

#include "json.hpp"
#include "pfopt/driver.hpp"

namespace pfopt {

/// {"n": N, "terms": [[num, den, [e1..en]], ...]}. num/den are integers or
/// decimal integer strings (for values beyond 64 bits).
Poly parse_poly_json(const nlohmann::json& j);

/// {"kind": "box", "n": N}.
MeasureSpec parse_measure_json(const nlohmann::json& j);

/// {"name", "f", "measure"}; r values and methods are left at defaults.
/// Throws ValidationError on any schema problem.
ProblemSpec parse_problem_json(const nlohmann::json& j);
ProblemSpec read_problem(std::istream& in);
ProblemSpec read_problem_file(const std::string& path);

nlohmann::json poly_to_json(const Poly& p);

}  // namespace pfopt
