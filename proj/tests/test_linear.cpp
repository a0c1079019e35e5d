#include <random>

#include "doctest.h"
#include "mhm/matrix.hpp"
#include "mhm/subspace.hpp"

using namespace mhm;

namespace {

RationalMatrix M(const std::vector<std::vector<Rational>>& rows) { return RationalMatrix::from_rows(rows); }

// Textbook rational Gauss-Jordan elimination, used as an oracle for the
// fraction-free implementation.
RationalMatrix naive_rref(RationalMatrix a, std::vector<size_t>& pivots) {
  pivots.clear();
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(piv, j));
    const Rational inv = 1 / a(row, col);
    for (size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return a;
}

RationalMatrix random_matrix(std::mt19937& rng, size_t rows, size_t cols, int spread, int rank_cap = -1) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  std::uniform_int_distribution<int> den(1, 3);
  auto fill = [&](size_t r, size_t c) {
    RationalMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) {
        m(i, j) = Rational(dist(rng), den(rng));
        m(i, j).canonicalize();
      }
    return m;
  };
  if (rank_cap < 0) return fill(rows, cols);
  return fill(rows, static_cast<size_t>(rank_cap)) * fill(static_cast<size_t>(rank_cap), cols);
}

Subspace random_subspace(std::mt19937& rng, size_t amb) {
  std::uniform_int_distribution<int> k(0, static_cast<int>(amb));
  const int n = k(rng);
  return Subspace::span(amb, random_matrix(rng, amb, static_cast<size_t>(n), 2, std::min(n, 2 + n / 2)));
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-3")) == "-3/1");
  CHECK(format_rational(parse_rational("-2/4")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("2/-4"), InputError);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("rank_kernel_image on documented examples") {
  auto id = rank_kernel_image(RationalMatrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.kernel.dim() == 0);
  CHECK(id.image.dim() == 2);

  auto z = rank_kernel_image(RationalMatrix(2, 2));
  CHECK(z.rank == 0);
  CHECK(z.kernel.dim() == 2);
  CHECK(z.image.dim() == 0);

  auto a = rank_kernel_image(M({{1, 2}, {2, 4}}));
  CHECK(a.rank == 1);
  CHECK(a.kernel == Subspace::span(M({{2}, {-1}})));
  CHECK(a.image == Subspace::span(M({{1}, {2}})));
}

TEST_CASE("fraction-free elimination agrees with naive Gauss-Jordan") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> sz(1, 7);
    const size_t r = static_cast<size_t>(sz(rng)), c = static_cast<size_t>(sz(rng));
    std::uniform_int_distribution<int> rk(0, static_cast<int>(std::min(r, c)));
    // Low-rank inputs force column skipping inside the elimination.
    const auto a = random_matrix(rng, r, c, 4, trial % 2 ? rk(rng) : -1);
    std::vector<size_t> piv;
    const auto ref = naive_rref(a, piv);
    const auto ech = row_reduce(a);
    CHECK(ech.reduced == ref);
    CHECK(ech.pivots == piv);
    CHECK(rank(a) == piv.size());
  }
}

TEST_CASE("rank, kernel and image properties on random matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> sz(1, 6);
    const size_t r = static_cast<size_t>(sz(rng)), c = static_cast<size_t>(sz(rng));
    const auto a = random_matrix(rng, r, c, 3, trial % 3 ? 2 : -1);
    const auto rki = rank_kernel_image(a);
    CHECK(rki.rank == rank(a.transpose()));
    CHECK(rki.rank + rki.kernel.dim() == c);
    CHECK(rki.rank <= std::min(r, c));
    CHECK((a * rki.kernel.basis()).is_zero());
    for (size_t j = 0; j < c; ++j) CHECK(rki.image.contains(a.column(j)));
    CHECK(rki.image.dim() == rki.rank);
  }
}

TEST_CASE("subspace_ops on documented examples") {
  const auto u = Subspace::span(M({{1, 0}, {0, 1}}));
  const auto v = Subspace::span(M({{1}, {1}}));
  auto same = subspace_ops(u, u);
  CHECK(same.sum == u);
  CHECK(same.intersection == u);
  CHECK(same.contained);

  const std::vector<size_t> c12{0, 1}, c34{2, 3};
  auto comp = subspace_ops(Subspace::coordinate(4, c12), Subspace::coordinate(4, c34));
  CHECK(comp.intersection.dim() == 0);
  CHECK(comp.sum.dim() == 4);

  auto uv = subspace_ops(u, v);
  CHECK(uv.intersection.dim() == 1);
  CHECK(subspace_ops(v, u).contained);
  CHECK_FALSE(uv.contained);

  CHECK_THROWS_AS(subspace_ops(Subspace(2), Subspace(3)), PreconditionError);
}

TEST_CASE("Grassmann identity on random subspaces") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t amb = 1 + trial % 6;
    const auto u = random_subspace(rng, amb), v = random_subspace(rng, amb);
    const auto ops = subspace_ops(u, v);
    CHECK(ops.sum.dim() + ops.intersection.dim() == u.dim() + v.dim());
    CHECK(ops.contained == (ops.sum == v));
    CHECK(ops.contained == v.contains(u));
    CHECK(u.contains(ops.intersection));
    CHECK(v.contains(ops.intersection));
    CHECK(ops.sum.contains(u));
    CHECK(ops.sum.contains(v));
  }
}

TEST_CASE("induced_quotient_map on documented examples") {
  const auto e1 = Subspace::span(M({{1}, {0}}));
  auto idq = induced_quotient_map(RationalMatrix::identity(2), e1, e1);
  CHECK(idq == RationalMatrix::identity(1));

  const auto a = M({{1, 2}, {3, 4}});
  auto zq = induced_quotient_map(a, Subspace(2), Subspace::full(2));
  CHECK(zq.rows() == 0);
  CHECK(zq.cols() == 2);

  auto nq = induced_quotient_map(M({{0, 1}, {0, 0}}), e1, e1);
  CHECK(nq == RationalMatrix(1, 1));

  const auto e2 = Subspace::span(M({{0}, {1}}));
  CHECK_THROWS_AS(induced_quotient_map(M({{0, 0}, {1, 0}}), e1, e1), PreconditionError);
  CHECK_NOTHROW(induced_quotient_map(M({{0, 0}, {1, 0}}), e1, e2));
}

TEST_CASE("induced quotient maps are functorial") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t n = 2 + trial % 3;
    // Upper block-triangular maps preserve the coordinate subspace span{e_1..e_k}.
    const size_t k = 1 + static_cast<size_t>(trial) % (n - 1);
    auto tri = [&] {
      auto m = random_matrix(rng, n, n, 3);
      for (size_t i = k; i < n; ++i)
        for (size_t j = 0; j < k; ++j) m(i, j) = 0;
      return m;
    };
    std::vector<size_t> coords(k);
    for (size_t i = 0; i < k; ++i) coords[i] = i;
    const auto u = Subspace::coordinate(n, coords);
    const auto a = tri(), b = tri();
    CHECK(induced_quotient_map(b * a, u, u) == induced_quotient_map(b, u, u) * induced_quotient_map(a, u, u));
  }
}

TEST_CASE("solve, inverse and nilpotency order") {
  const auto a = M({{2, 1}, {1, 1}});
  CHECK(a * inverse(a) == RationalMatrix::identity(2));
  CHECK(solve(a, M({{3}, {2}})) == M({{1}, {1}}));
  CHECK_THROWS_AS(inverse(M({{1, 2}, {2, 4}})), PreconditionError);
  CHECK_THROWS_AS(solve(M({{1}, {0}}), M({{0}, {1}})), PreconditionError);
  CHECK(nilpotency_order(RationalMatrix(2, 2)) == 1);
  CHECK(nilpotency_order(RationalMatrix(0, 0)) == 0);
  CHECK(nilpotency_order(M({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})) == 3);
  CHECK(nilpotency_order(RationalMatrix::identity(2)) == -1);
}

TEST_CASE("flags and adapted bases") {
  const std::vector<int> lv{0, 1, 1, 2};
  const auto f = Flag::from_levels(4, lv);
  CHECK(f.at(-1).dim() == 0);
  CHECK(f.at(0).dim() == 1);
  CHECK(f.at(1).dim() == 3);
  CHECK(f.at(5).dim() == 4);
  CHECK(f.shifted(1).at(0).dim() == 3);
  const std::vector<int> lw{1, 0, 1, 0};
  const auto g = Flag::from_levels(4, lw);
  const auto ab = adapted_basis(f, g);
  CHECK(rank(ab.basis) == 4);
  for (int p = -1; p <= 3; ++p)
    for (int q = -1; q <= 2; ++q) {
      size_t count = 0;
      for (size_t c = 0; c < 4; ++c) count += (ab.level_a[c] <= p && ab.level_b[c] <= q) ? 1 : 0;
      CHECK(count == intersect(f.at(p), g.at(q)).dim());
    }
}
