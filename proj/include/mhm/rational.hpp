#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mhm {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed input data (files, polynomial strings, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation's documented precondition does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when a computation needs module data outside the stored window.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Parses "num/den" or "num". The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Always "num/den" with a positive denominator, e.g. "3/1", "-1/2".
std::string format_rational(const Rational& q);

bool is_integer(const Rational& q);
long to_long(const Rational& q);  // requires is_integer

}  // namespace mhm
