#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mhm/rational.hpp"

namespace mhm {

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial with rational coefficients in a fixed
/// number of variables. Zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial monomial(int nvars, const Exponent& e, const Rational& c = 1);
  static Polynomial constant(int nvars, const Rational& c);

  int nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  /// Total degree of every term if homogeneous, -1 for the zero polynomial,
  /// -2 when not homogeneous.
  int homogeneous_degree() const;
  Polynomial derivative(int var) const;
  Polynomial pow(unsigned k) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// lexicographically decreasing order (x^deg first).
std::vector<Exponent> monomials_of_degree(int nvars, int deg);

/// Default variable names: x, y, z, w, u, v, then x7, x8, ...
std::vector<std::string> default_variable_names(int nvars);

/// Parses e.g. "x^3+y^3+z^3", "2*x*y - 3/2*z^2", "x1^2 + x2^2". Variables are
/// single letters from default_variable_names() or x<k> (1-based). The number
/// of variables is the largest variable index used, or `nvars` if larger.
Polynomial parse_polynomial(std::string_view text, int nvars = 0);

}  // namespace mhm
