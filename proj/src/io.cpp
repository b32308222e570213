#include "pfopt/io.hpp"

#include <fstream>

#include "pfopt/error.hpp"

namespace pfopt {

namespace {

using nlohmann::json;

Integer integer_field(const json& v, const char* what) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Integer(std::to_string(v.get<std::uint64_t>()))
                                   : Integer(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw ValidationError(std::string(what) + " must be an integer or an integer string");
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw ValidationError(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t dimension(const json& v) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 || v.get<std::uint64_t>() > 64) {
    throw ValidationError("'n' must be an integer in 1..64");
  }
  return v.get<std::size_t>();
}

}  // namespace

Poly parse_poly_json(const json& j) {
  const std::size_t n = dimension(require(j, "n"));
  const json& terms = require(j, "terms");
  if (!terms.is_array()) throw ValidationError("'terms' must be an array");
  Poly p(n);
  for (const json& t : terms) {
    if (!t.is_array() || t.size() != 3) throw ValidationError("each term must be [num, den, [exponents]]");
    const Integer num = integer_field(t[0], "term numerator");
    const Integer den = integer_field(t[1], "term denominator");
    if (den <= 0) throw ValidationError("term denominator must be positive");
    const json& e = t[2];
    if (!e.is_array() || e.size() != n) {
      throw DimensionMismatch("term exponent vector must have " + std::to_string(n) + " entries");
    }
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i].is_number_unsigned() || e[i].get<std::uint64_t>() > 1'000'000) {
        throw ValidationError("exponents must be non-negative integers");
      }
      m[i] = e[i].get<std::uint32_t>();
    }
    Rational c(num, den);
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

MeasureSpec parse_measure_json(const json& j) {
  const json& kind = require(j, "kind");
  if (!kind.is_string()) throw ValidationError("measure 'kind' must be a string");
  const auto k = parse_kind(kind.get<std::string>());
  if (!k) throw ValidationError("unknown measure kind '" + kind.get<std::string>() + "'");
  return {*k, dimension(require(j, "n"))};
}

ProblemSpec parse_problem_json(const json& j) {
  ProblemSpec p;
  const json& name = require(j, "name");
  if (!name.is_string()) throw ValidationError("'name' must be a string");
  p.name = name.get<std::string>();
  p.f = parse_poly_json(require(j, "f"));
  p.measure = parse_measure_json(require(j, "measure"));
  if (p.f.n() != p.measure.n) throw DimensionMismatch("polynomial and measure dimensions differ");
  return p;
}

ProblemSpec read_problem(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem_json(j);
}

ProblemSpec read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file '" + path + "'");
  return read_problem(in);
}

json poly_to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({to_string(c.get_num()), to_string(c.get_den()), m.exponents()});
  }
  return {{"n", p.n()}, {"terms", terms}};
}

}  // namespace pfopt
