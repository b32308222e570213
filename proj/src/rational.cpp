#include "pfopt/rational.hpp"

#include "pfopt/error.hpp"

namespace pfopt {

Integer parse_integer(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  const std::size_t digits_from = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (s.size() == digits_from) throw ValidationError("empty integer literal");
  for (std::size_t i = digits_from; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ValidationError("malformed integer literal '" + text + "'");
  }
  return Integer(s, 10);
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (sgn(den) == 0) throw ValidationError("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace pfopt
