#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhm/rational.hpp"

namespace mhm {

/// Dense matrix of exact rationals, row-major. Entries are kept canonical
/// (lowest terms, positive denominator) by every mutating operation.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(size_t rows, size_t cols);

  static RationalMatrix identity(size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);
  static RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  RationalMatrix select_rows(std::span<const size_t> idx) const;
  RationalMatrix select_cols(std::span<const size_t> idx) const;
  std::vector<Rational> column(size_t j) const;
  void set_column(size_t j, std::span<const Rational> v);

  bool is_zero() const;
  bool column_is_zero(size_t j) const;

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator+(const RationalMatrix& rhs) const;
  RationalMatrix operator-(const RationalMatrix& rhs) const;
  RationalMatrix operator*(const Rational& s) const;
  bool operator==(const RationalMatrix& rhs) const;

  std::string to_string() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  RationalMatrix reduced;      // same shape as the input; zero rows at the bottom
  std::vector<size_t> pivots;  // pivots[k] = pivot column of row k
};

/// Fraction-free (Bareiss) forward elimination on the integer-scaled matrix,
/// followed by exact back substitution into reduced form.
Echelon row_reduce(const RationalMatrix& a);

size_t rank(const RationalMatrix& a);

/// Columns span ker(a), one per free column of the reduced form.
RationalMatrix kernel_basis(const RationalMatrix& a);

/// Solves a * x = b for a of full column rank. Throws PreconditionError when
/// the system is inconsistent or a is rank deficient.
RationalMatrix solve(const RationalMatrix& a, const RationalMatrix& b);

/// Inverse of a square nonsingular matrix.
RationalMatrix inverse(const RationalMatrix& a);

/// Smallest k >= 0 with a^k = 0, or nullopt-like -1 when a is not nilpotent.
int nilpotency_order(const RationalMatrix& a);

}  // namespace mhm

namespace mhm {

/// Some solution x of a * x = b (free variables set to zero), or nullopt
/// when the system is inconsistent. No rank assumption.
std::optional<std::vector<Rational>> solve_particular(const RationalMatrix& a, std::span<const Rational> b);

}  // namespace mhm
