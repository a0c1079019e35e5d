#include "mhm/rational.hpp"

#include <cctype>

namespace mhm {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!valid_integer_text(num))
    throw InputError("malformed rational \"" + std::string(text) + "\"");
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_integer(num));
  } else {
    const auto den = text.substr(slash + 1);
    if (!valid_integer_text(den) || den[0] == '-' || den[0] == '+')
      throw InputError("malformed rational \"" + std::string(text) + "\"");
    Integer d = parse_integer(den);
    if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    q = Rational(parse_integer(num), d);
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw PreconditionError("rational " + format_rational(q) + " is not a machine integer");
  return q.get_num().get_si();
}

}  // namespace mhm
