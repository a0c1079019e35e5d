#include "mhm/matrix.hpp"

#include <numeric>
#include <sstream>
#include <utility>

namespace mhm {

RationalMatrix::RationalMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(size_t n) {
  RationalMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  RationalMatrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw PreconditionError("ragged matrix rows");
    for (size_t j = 0; j < m.cols_; ++j) {
      m(i, j) = rows[i][j];
      m(i, j).canonicalize();
    }
  }
  return m;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_) throw PreconditionError("hstack: row count mismatch");
  RationalMatrix m(a.rows_, a.cols_ + b.cols_);
  for (size_t i = 0; i < a.rows_; ++i) {
    for (size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

RationalMatrix RationalMatrix::vstack(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.cols_) throw PreconditionError("vstack: column count mismatch");
  RationalMatrix m(a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<long>(a.data_.size()));
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::select_rows(std::span<const size_t> idx) const {
  RationalMatrix m(idx.size(), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

RationalMatrix RationalMatrix::select_cols(std::span<const size_t> idx) const {
  RationalMatrix m(rows_, idx.size());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

std::vector<Rational> RationalMatrix::column(size_t j) const {
  std::vector<Rational> v(rows_);
  for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void RationalMatrix::set_column(size_t j, std::span<const Rational> v) {
  for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool RationalMatrix::column_is_zero(size_t j) const {
  for (size_t i = 0; i < rows_; ++i)
    if ((*this)(i, j) != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw PreconditionError("matrix product: shape mismatch");
  RationalMatrix m(rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j)
        if (rhs(k, j) != 0) m(i, j) += a * rhs(k, j);
    }
  return m;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw PreconditionError("matrix sum: shape mismatch");
  RationalMatrix m = *this;
  for (size_t k = 0; k < data_.size(); ++k) m.data_[k] += rhs.data_[k];
  return m;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw PreconditionError("matrix difference: shape mismatch");
  RationalMatrix m = *this;
  for (size_t k = 0; k < data_.size(); ++k) m.data_[k] -= rhs.data_[k];
  return m;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
  RationalMatrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < rows_; ++i) {
    os << '[';
    for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

Echelon row_reduce(const RationalMatrix& a) {
  const size_t m = a.rows(), n = a.cols();
  // Scale each row to integers.
  std::vector<std::vector<Integer>> z(m, std::vector<Integer>(n));
  for (size_t i = 0; i < m; ++i) {
    Integer l = 1;
    for (size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (size_t j = 0; j < n; ++j) z[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }

  // Fraction-free forward elimination on primitive rows: a row is only
  // touched when it has an entry in the pivot column, and is then divided by
  // the gcd of its entries. Each row stays a nonzero multiple of the
  // corresponding row of plain elimination, so the pivots are unchanged.
  std::vector<size_t> pivots;
  size_t prow = 0;
  Integer g;
  for (size_t col = 0; col < n && prow < m; ++col) {
    size_t sel = prow;
    while (sel < m && z[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(z[sel], z[prow]);
    const Integer& p = z[prow][col];
    for (size_t i = prow + 1; i < m; ++i) {
      if (z[i][col] == 0) continue;
      const Integer f = z[i][col];
      g = 0;
      for (size_t k = col + 1; k < n; ++k) {
        Integer& v = z[i][k];
        v *= p;
        if (z[prow][k] != 0) v -= f * z[prow][k];
        if (v != 0 && g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      }
      z[i][col] = 0;
      if (g > 1)
        for (size_t k = col + 1; k < n; ++k)
          if (z[i][k] != 0) mpz_divexact(z[i][k].get_mpz_t(), z[i][k].get_mpz_t(), g.get_mpz_t());
    }
    pivots.push_back(col);
    ++prow;
  }

  // Back substitution over the rationals.
  RationalMatrix r(m, n);
  for (size_t i = 0; i < prow; ++i)
    for (size_t j = pivots[i]; j < n; ++j) r(i, j) = Rational(z[i][j]);
  for (size_t k = prow; k-- > 0;) {
    const size_t pc = pivots[k];
    const Rational inv = 1 / r(k, pc);
    for (size_t j = pc; j < n; ++j) r(k, j) *= inv;
    for (size_t i = 0; i < k; ++i) {
      const Rational f = r(i, pc);
      if (f == 0) continue;
      for (size_t j = pc; j < n; ++j) r(i, j) -= f * r(k, j);
    }
  }
  return {std::move(r), std::move(pivots)};
}

size_t rank(const RationalMatrix& a) { return row_reduce(a).pivots.size(); }

RationalMatrix kernel_basis(const RationalMatrix& a) {
  const auto e = row_reduce(a);
  const size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<size_t> free;
  for (size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  RationalMatrix k(n, free.size());
  for (size_t c = 0; c < free.size(); ++c) {
    k(free[c], c) = 1;
    for (size_t row = 0; row < e.pivots.size(); ++row) k(e.pivots[row], c) = -e.reduced(row, free[c]);
  }
  return k;
}

RationalMatrix solve(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw PreconditionError("solve: row count mismatch");
  const size_t n = a.cols();
  const auto e = row_reduce(RationalMatrix::hstack(a, b));
  for (size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] >= n) throw PreconditionError("solve: inconsistent system");
  }
  if (e.pivots.size() != n) throw PreconditionError("solve: coefficient matrix is rank deficient");
  RationalMatrix x(n, b.cols());
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < b.cols(); ++j) x(e.pivots[k], j) = e.reduced(k, n + j);
  return x;
}

RationalMatrix inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("inverse: matrix is not square");
  return solve(a, RationalMatrix::identity(a.rows()));
}

int nilpotency_order(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("nilpotency_order: matrix is not square");
  const size_t n = a.rows();
  if (n == 0) return 0;
  RationalMatrix p = RationalMatrix::identity(n);
  for (size_t k = 0; k <= n; ++k) {
    if (p.is_zero()) return static_cast<int>(k);
    p = p * a;
  }
  return -1;
}

}  // namespace mhm

namespace mhm {

std::optional<std::vector<Rational>> solve_particular(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw PreconditionError("solve_particular: size mismatch");
  RationalMatrix col(a.rows(), 1);
  col.set_column(0, b);
  const auto e = row_reduce(RationalMatrix::hstack(a, col));
  const size_t n = a.cols();
  std::vector<Rational> x(n);
  for (size_t k = 0; k < e.pivots.size(); ++k) {
    if (e.pivots[k] == n) return std::nullopt;
    x[e.pivots[k]] = e.reduced(k, n);
  }
  return x;
}

}  // namespace mhm
