#include "mhm/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace mhm {

Polynomial Polynomial::monomial(int nvars, const Exponent& e, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::constant(int nvars, const Rational& c) { return monomial(nvars, Exponent(nvars, 0), c); }

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) throw PreconditionError("Polynomial: exponent length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return -1;
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    const int d = std::accumulate(e.begin(), e.end(), 0);
    if (deg == -1) deg = d;
    else if (d != deg) return -2;
  }
  return deg;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    out.add_term(f, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw PreconditionError("Polynomial: variable count mismatch");
  Polynomial out(nvars_);
  Exponent e(nvars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = a[i] + b[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::operator*(const Rational& s) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * s);
  return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (a < 0) {
      os << (first ? "-" : " - ");
      a = -a;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    const bool constant_term = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    bool need_star = false;
    if (a != 1 || constant_term) {
      os << a.get_str();
      need_star = true;
    }
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << names.at(i);
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

std::vector<Exponent> monomials_of_degree(int nvars, int deg) {
  std::vector<Exponent> out;
  if (deg < 0) return out;
  if (nvars == 0) {
    if (deg == 0) out.emplace_back();
    return out;
  }
  Exponent e(nvars, 0);
  // Recursive fill, first variable takes the largest share first.
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, deg);
  return out;
}

std::vector<std::string> default_variable_names(int nvars) {
  static const char* letters[] = {"x", "y", "z", "w", "u", "v"};
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) names.push_back(i < 6 ? letters[i] : "x" + std::to_string(i + 1));
  return names;
}

namespace {

struct Parser {
  std::string_view s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& what) {
    throw InputError("polynomial \"" + std::string(s) + "\": " + what + " at position " + std::to_string(pos));
  }
  std::string digits() {
    const size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(start, pos - start));
  }
  // Returns the 0-based variable index.
  int variable() {
    static const std::string letters = "xyzwuv";
    const char ch = s[pos];
    const auto li = letters.find(ch);
    if (li == std::string::npos) fail("unknown variable");
    ++pos;
    if (ch == 'x' && pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      const int k = std::stoi(digits());
      if (k < 1) fail("variable index must be positive");
      return k - 1;
    }
    return static_cast<int>(li);
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int nvars) {
  struct Term {
    Rational coeff;
    std::vector<std::pair<int, int>> powers;
  };
  Parser p{text};
  std::vector<Term> terms;
  int max_var = -1;
  if (p.at_end()) p.fail("empty input");
  while (!p.at_end()) {
    Term t{1, {}};
    p.skip();
    if (p.s[p.pos] == '+' || p.s[p.pos] == '-') {
      if (p.s[p.pos] == '-') t.coeff = -1;
      ++p.pos;
    } else if (!terms.empty()) {
      p.fail("expected '+' or '-'");
    }
    bool have_factor = false;
    while (true) {
      p.skip();
      if (p.pos >= p.s.size()) break;
      const char ch = p.s[p.pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string num = p.digits();
        Rational c(Integer(num, 10));
        if (p.pos < p.s.size() && p.s[p.pos] == '/') {
          ++p.pos;
          std::string den = p.digits();
          if (den.empty() || Integer(den, 10) == 0) p.fail("bad denominator");
          c /= Rational(Integer(den, 10));
        }
        t.coeff *= c;
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        const int v = p.variable();
        int e = 1;
        p.skip();
        if (p.pos < p.s.size() && p.s[p.pos] == '^') {
          ++p.pos;
          p.skip();
          const std::string ds = p.digits();
          if (ds.empty()) p.fail("expected exponent");
          e = std::stoi(ds);
        }
        t.powers.emplace_back(v, e);
        max_var = std::max(max_var, v);
      } else {
        p.fail("unexpected character");
      }
      have_factor = true;
      p.skip();
      if (p.pos < p.s.size() && p.s[p.pos] == '*') {
        ++p.pos;
        continue;
      }
      break;
    }
    if (!have_factor) p.fail("empty term");
    terms.push_back(std::move(t));
  }
  const int n = std::max(nvars, max_var + 1);
  Polynomial out(n);
  for (const auto& t : terms) {
    Exponent e(n, 0);
    for (auto [v, k] : t.powers) e[v] += k;
    out.add_term(e, t.coeff);
  }
  return out;
}

}  // namespace mhm
