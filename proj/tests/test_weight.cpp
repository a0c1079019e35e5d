#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "mhm/weight.hpp"

using namespace mhm;

namespace {

RationalMatrix M(const std::vector<std::vector<Rational>>& rows) { return RationalMatrix::from_rows(rows); }

RationalMatrix jordan(const std::vector<size_t>& blocks) {
  size_t n = 0;
  for (auto b : blocks) n += b;
  RationalMatrix j(n, n);
  size_t off = 0;
  for (auto b : blocks) {
    for (size_t i = 0; i + 1 < b; ++i) j(off + i, off + i + 1) = 1;
    off += b;
  }
  return j;
}

std::map<int, size_t> gr_dims(const Flag& f) {
  std::map<int, size_t> out;
  for (int k = f.lo(); k <= f.hi(); ++k) out[k] = f.gr_dim(k);
  return out;
}

RationalMatrix random_invertible(std::mt19937& rng, size_t n) {
  std::uniform_int_distribution<int> dist(-2, 2);
  while (true) {
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    if (rank(m) == n) return m;
  }
}

// Flag spanned by basis columns with level <= p.
Flag flag_from(const RationalMatrix& basis, const std::vector<int>& levels) {
  const int lo = *std::min_element(levels.begin(), levels.end());
  const int hi = *std::max_element(levels.begin(), levels.end());
  std::vector<Subspace> steps;
  for (int p = lo; p <= hi; ++p) {
    std::vector<size_t> cols;
    for (size_t c = 0; c < levels.size(); ++c)
      if (levels[c] <= p) cols.push_back(c);
    steps.push_back(Subspace::span(basis.rows(), basis.select_cols(cols)));
  }
  return Flag(basis.rows(), lo, std::move(steps));
}

// Every flag obtained by moving one adapted basis vector by one level.
std::vector<Flag> perturbations(const Flag& f) {
  const auto ab = adapted_basis(f, Flag::trivial(f.ambient(), 0));
  std::vector<Flag> out;
  for (size_t c = 0; c < ab.level_a.size(); ++c)
    for (int delta : {-1, 1}) {
      auto lv = ab.level_a;
      lv[c] += delta;
      out.push_back(flag_from(ab.basis, lv));
    }
  return out;
}

}  // namespace

TEST_CASE("monodromy filtration examples") {
  const auto z = monodromy_filtration(RationalMatrix(3, 3), 0);
  CHECK(z.at(-1).dim() == 0);
  CHECK(z.at(0).dim() == 3);

  const auto n2 = jordan({2});
  const auto w2 = monodromy_filtration(n2, 0);
  const auto ker = rank_kernel_image(n2).kernel;
  CHECK(w2.at(-2).dim() == 0);
  CHECK(w2.at(-1) == ker);
  CHECK(w2.at(0) == ker);
  CHECK(w2.at(1).dim() == 2);
  CHECK(satisfies_monodromy_conditions(n2, w2, 0));

  const auto n31 = jordan({3, 1});
  const auto w31 = monodromy_filtration(n31, 0);
  CHECK(gr_dims(w31) == std::map<int, size_t>{{-2, 1}, {-1, 0}, {0, 2}, {1, 0}, {2, 1}});
  CHECK(satisfies_monodromy_conditions(n31, w31, 0));

  CHECK_THROWS_AS(monodromy_filtration(RationalMatrix::identity(2), 0), PreconditionError);
}

TEST_CASE("monodromy filtrations of random nilpotents are characterized by their two properties") {
  std::mt19937 rng(17);
  const std::vector<std::vector<size_t>> shapes{{1}, {2}, {3}, {2, 1}, {3, 1}, {2, 2}, {4}, {3, 2}, {1, 1, 2}};
  for (int trial = 0; trial < 40; ++trial) {
    const auto& sh = shapes[static_cast<size_t>(trial) % shapes.size()];
    const auto j = jordan(sh);
    const auto p = random_invertible(rng, j.rows());
    const auto n = p * j * inverse(p);
    const int center = trial % 5 - 2;
    const auto w = monodromy_filtration(n, center);
    CHECK(satisfies_monodromy_conditions(n, w, center));
    for (const auto& other : perturbations(w))
      if (!(other == w)) CHECK_FALSE(satisfies_monodromy_conditions(n, other, center));
  }
}

TEST_CASE("relative monodromy filtration examples") {
  const auto w = Flag::from_levels(3, std::vector<int>{0, 1, 3});
  const auto r0 = relative_monodromy_filtration(RationalMatrix(3, 3), w);
  REQUIRE(r0.exists());
  CHECK(*r0.flag == w);

  const auto n = jordan({3});
  const auto rt = relative_monodromy_filtration(n, Flag::trivial(3, 4));
  REQUIRE(rt.exists());
  CHECK(*rt.flag == monodromy_filtration(n, 4));

  // N e2 = e1 with e1 in weight 0 and e2 in weight 2.
  const auto n2 = M({{0, 1}, {0, 0}});
  const auto w02 = Flag::from_levels(2, std::vector<int>{0, 2});
  const auto r02 = relative_monodromy_filtration(n2, w02);
  REQUIRE(r02.exists());
  CHECK(satisfies_relative_conditions(n2, w02, *r02.flag));
  CHECK(*r02.flag == w02);

  // Same N with e1 in weight 1: the weight-2 line cannot reach weight <= 0.
  const auto w12 = Flag::from_levels(2, std::vector<int>{1, 2});
  const auto r12 = relative_monodromy_filtration(n2, w12);
  CHECK_FALSE(r12.exists());
  REQUIRE(r12.certificate);
  CHECK(r12.certificate->k == 2);
  CHECK(r12.certificate->length == 1);

  CHECK_THROWS_AS(relative_monodromy_filtration(M({{0, 0}, {1, 0}}), w02), PreconditionError);
}

TEST_CASE("relative monodromy filtrations found by random search are unique") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dist(-1, 1);
  std::uniform_int_distribution<int> lvl(0, 3);
  int found = 0, missing = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const size_t dim = 2 + static_cast<size_t>(trial) % 3;
    // Strictly upper triangular N preserves every coordinate flag with nondecreasing levels.
    RationalMatrix n(dim, dim);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = i + 1; j < dim; ++j) n(i, j) = dist(rng);
    std::vector<int> levels(dim);
    for (auto& l : levels) l = lvl(rng);
    std::sort(levels.begin(), levels.end());
    const auto w = Flag::from_levels(dim, levels);
    const auto rel = relative_monodromy_filtration(n, w);
    if (!rel.exists()) {
      ++missing;
      continue;
    }
    ++found;
    CHECK(satisfies_relative_conditions(n, w, *rel.flag));
    for (const auto& other : perturbations(*rel.flag))
      if (!(other == *rel.flag)) CHECK_FALSE(satisfies_relative_conditions(n, w, other));
  }
  CHECK(found > 10);
  CHECK(missing > 0);
}
