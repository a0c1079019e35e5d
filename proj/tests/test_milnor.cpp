#include "doctest.h"
#include "mhm/compare.hpp"
#include "mhm/milnor.hpp"
#include "mhm/restriction.hpp"

using namespace mhm;

namespace {

// Hilbert function of C[x]/J_f for an isolated singularity of degree d in r
// variables: coefficients of ((1 - t^{d-1}) / (1 - t))^r, counted here as
// exponent vectors with every entry in [0, d-2].
std::vector<size_t> box_count(int r, int d) {
  std::vector<size_t> out(static_cast<size_t>(r * (d - 2) + 1), 0);
  std::vector<int> e(static_cast<size_t>(r), 0);
  while (true) {
    int s = 0;
    for (int x : e) s += x;
    ++out[static_cast<size_t>(s)];
    size_t i = 0;
    while (i < e.size() && e[i] == d - 2) e[i++] = 0;
    if (i == e.size()) break;
    ++e[i];
  }
  return out;
}

std::string fermat(int r, int d) {
  const char* names[] = {"x", "y", "z", "w"};
  std::string s;
  for (int i = 0; i < r; ++i) s += std::string(i ? "+" : "") + names[i] + "^" + std::to_string(d);
  return s;
}

std::map<int, size_t> griffiths_oracle(int r, int d) {
  const auto h = box_count(r, d);
  std::map<int, size_t> out;
  for (int p = 0; p < r; ++p) {
    const int k = (p + 1) * d - r;
    out[p] = k >= 0 && k < static_cast<int>(h.size()) ? h[static_cast<size_t>(k)] : 0;
  }
  return out;
}

}  // namespace

TEST_CASE("Milnor algebra of the Fermat cubic surface") {
  const auto m = milnor_dims(parse_polynomial("x^3+y^3+z^3"));
  CHECK(m.dims == std::vector<size_t>{1, 3, 3, 1});
  CHECK(griffiths_dims(m) == std::map<int, size_t>{{0, 1}, {1, 1}, {2, 0}});
  std::vector<size_t> totals;
  for (const auto& e : complement_cohomology(m)) totals.push_back(e.total());
  CHECK(totals == std::vector<size_t>{1, 1, 2, 2});
}

TEST_CASE("Griffiths table of x^5+y^5") {
  const auto g = griffiths_dims(milnor_dims(parse_polynomial("x^5+y^5")));
  CHECK(g.at(0) == 4);
  CHECK(g.at(1) == 0);
}

TEST_CASE("non-isolated singularity is rejected") {
  CHECK_THROWS_AS(milnor_dims(parse_polynomial("x^2*y")), InputError);
  CHECK_THROWS_AS(milnor_dims(parse_polynomial("x^3+y^2")), InputError);
}

TEST_CASE("Fermat family: Hilbert function, total and symmetry") {
  for (int r = 1; r <= 4; ++r)
    for (int d = 2; d <= 5; ++d) {
      CAPTURE(r);
      CAPTURE(d);
      const auto m = milnor_dims(parse_polynomial(fermat(r, d)));
      CHECK(m.dims == box_count(r, d));
      size_t mu = 1;
      for (int i = 0; i < r; ++i) mu *= static_cast<size_t>(d - 1);
      CHECK(m.total() == mu);
      for (size_t k = 0; k < m.dims.size(); ++k) CHECK(m.dims[k] == m.dims[m.dims.size() - 1 - k]);
      if (r >= 2) {
        CHECK(griffiths_dims(m) == griffiths_oracle(r, d));
        CHECK(expected_restriction_dims(m).top == griffiths_dims(m));
      }
    }
}

TEST_CASE("non-Fermat isolated singularity has the same Hilbert function") {
  const auto m = milnor_dims(parse_polynomial("x^3+y^3+z^3+x*y*z"));
  CHECK(m.dims == box_count(3, 3));
  CHECK(has_isolated_singularity(parse_polynomial("x^2*y+y^3")));
  CHECK_FALSE(has_isolated_singularity(parse_polynomial("x^2*y")));
}

TEST_CASE("Griffiths total equals dim H^{r-1}(U)") {
  for (const char* f : {"x^3+y^3", "x^5+y^5", "x^3+y^3+z^3", "x^2+y^2+z^2", "x^4+y^4+z^4"}) {
    CAPTURE(f);
    const auto m = milnor_dims(parse_polynomial(f));
    size_t g = 0;
    for (const auto& [p, dim] : griffiths_dims(m)) g += dim;
    // Sum of the Hilbert function over degrees k with k + r divisible by d.
    const auto h = box_count(m.r, m.d);
    size_t oracle = 0;
    for (size_t k = 0; k < h.size(); ++k)
      if ((static_cast<int>(k) + m.r) % m.d == 0) oracle += h[k];
    CHECK(g == oracle);
  }
}

TEST_CASE("compare_with_koszul: star side matches the complement table") {
  WindowPolicy p;
  for (const char* f : {"x^3+y^3", "x^2+y^2+z^2"}) {
    CAPTURE(f);
    const auto c = compare_with_koszul(parse_polynomial(f), p);
    REQUIRE(c.star_hi.computed);
    CHECK(c.star_stable);
    CHECK(c.shriek_stable);
    std::vector<size_t> totals;
    for (const auto& e : c.complement) totals.push_back(e.total());
    CHECK(c.star_hi.h == totals);
    for (size_t x : c.shriek_hi.h) CHECK(x == 0);
    CHECK(c.generators.one_nonzero);
    if (totals[1] == 1) CHECK(c.generators.dff_spans_h1);
    CHECK(c.render() == compare_with_koszul(parse_polynomial(f), p).render());
  }
}

TEST_CASE("x^2+y^2: one-dimensional Milnor algebra, Griffiths entry at p = 0") {
  const auto m = milnor_dims(parse_polynomial("x^2+y^2"));
  CHECK(m.dims == std::vector<size_t>{1});
  CHECK(griffiths_dims(m) == std::map<int, size_t>{{0, 1}, {1, 0}});
}

TEST_CASE("restriction on the truncated localization model is boundary-incomplete, not an error") {
  WindowPolicy p;
  const auto m = build_isolated_sing_localization(parse_polynomial("x^3+y^3"), p);
  const auto star = restriction(m, KoszulMode::star, 0);
  CHECK(star.boundary_incomplete);
  CHECK_FALSE(star.computed);
  const auto shriek = restriction(m, KoszulMode::shriek, 0);
  CHECK(shriek.computed);
  for (const auto& d : shriek.degrees) CHECK(d.dim == 0);
}
