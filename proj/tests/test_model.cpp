#include "doctest.h"
#include "mhm/builders.hpp"
#include "mhm/module.hpp"

using namespace mhm;

namespace {

WindowPolicy window(int lo, int hi, int box = 2, int cap = 2) {
  WindowPolicy p;
  p.alpha_lo = lo;
  p.alpha_hi = hi;
  p.box = box;
  p.cap = cap;
  return p;
}

size_t find_vector(const Piece& p, const Exponent& md) {
  for (size_t c = 0; c < p.dim; ++c)
    if (p.multidegree[c] == md) return c;
  FAIL("vector not found");
  return 0;
}

bool has_violation(const ValidationReport& rep, const std::string& inv, const std::string& where) {
  for (const auto& v : rep.violations)
    if (v.invariant == inv && v.location.find(where) != std::string::npos) return true;
  return false;
}

// Per-degree dimensions of every F level, which is what survives a change of basis.
std::map<std::pair<Rational, int>, size_t> shape(const MonodromicalModule& m) { return m.f_dimension_table(); }

}  // namespace

TEST_CASE("delta module in one variable") {
  const auto m = build_delta(1, window(-3, 2));
  CHECK(m.dim(0) == 1);
  CHECK(m.dim(-1) == 1);
  CHECK(m.dim(1) == 0);
  CHECK(m.op(OpKind::t, 1, -1) == RationalMatrix::from_rows({{-1}}));
  CHECK(m.op(OpKind::t, 1, 0).rows() == 0);
  const auto eb = m.euler_nilpotent(0);
  CHECK(eb.columns.size() == 1);
  CHECK(eb.n.is_zero());
}

TEST_CASE("delta modules validate with nilpotency order 1 inside the window") {
  for (int r = 1; r <= 3; ++r) {
    const auto m = build_delta(r, window(-4, 1));
    const auto rep = validate(m);
    INFO(rep.summary());
    CHECK(rep.ok());
    for (int a = -3; a <= 0; ++a) CHECK(rep.nilpotency_order.at(a) == 1);
  }
}

TEST_CASE("torus module filtrations and degrees") {
  const auto m1 = build_torus(1, window(-4, 4, 3));
  const auto& p0 = m1.piece(0);
  REQUIRE(p0.dim == 1);
  CHECK(p0.multidegree[0] == Exponent{-1});
  for (int a = -2; a <= 4; ++a) {
    const auto& p = m1.piece(a);
    CHECK(p.f_level[0] == (a - 1 >= -1 ? 0 : -(a - 1) - 1));
  }
  const auto m2 = build_torus(2, window(-2, 4));
  const auto& q0 = m2.piece(0);
  CHECK(q0.f_level[find_vector(q0, {-1, -1})] == 0);
  CHECK(q0.f_level[find_vector(q0, {-2, 0})] == 1);
}

TEST_CASE("torus modules validate for r <= 3") {
  for (int r = 1; r <= 3; ++r) {
    const auto m = build_torus(r, window(-2 * r, 3 * r, 2));
    const auto rep = validate(m);
    INFO(rep.summary());
    CHECK(rep.ok());
    for (const auto& [a, k] : rep.nilpotency_order) CHECK(k <= static_cast<int>(m.dim(a)));
  }
}

TEST_CASE("a corrupted operator entry is located") {
  auto m = build_torus(2, window(-2, 6));
  auto t = m.op(OpKind::t, 1, 2);
  const auto& p = m.piece(2);
  const size_t c = find_vector(p, {0, 0});
  const size_t row = find_vector(m.piece(3), {1, 0});
  t(row, c) = 2;
  m.set_op(OpKind::t, 1, 2, t);
  const auto rep = validate(m);
  CHECK_FALSE(rep.ok());
  CHECK(has_violation(rep, "commutator", "alpha=2/1"));
}

TEST_CASE("F and W compatibility violations are reported") {
  auto m = build_delta(1, window(-3, 0));
  m.pieces.at(-1).f_level[0] = 5;  // ∂ from degree 0 now jumps by 5 levels
  const auto rep = validate(m);
  CHECK(has_violation(rep, "F-compatibility", "alpha=0/1"));
  auto w = build_torus(1, window(-2, 3));
  w.pieces.at(1).w_level[0] = 7;
  CHECK(has_violation(validate(w), "W-compatibility", ""));
}

TEST_CASE("monomial families act by monomials") {
  for (const auto& m : {build_torus(2, window(-2, 5)), build_delta(3, window(-3, 0))}) {
    for (const auto& [key, op] : m.ops)
      for (size_t c = 0; c < op.cols(); ++c) {
        int nz = 0;
        for (size_t i = 0; i < op.rows(); ++i) nz += op(i, c) != 0;
        CHECK(nz <= 1);
      }
  }
}

TEST_CASE("external products of delta and torus factors") {
  const auto d1 = build_delta(1, window(-3, 0));
  const auto d2 = build_delta(2, window(-3, 0));
  const auto dd = external_product(d1, d1);
  CHECK(validate(dd).ok());
  CHECK(shape(dd) == shape(d2));
  CHECK(dd.pure_weight == d2.pure_weight);

  const auto t1 = build_torus(1, window(-10, 10, 2));
  const auto t2 = build_torus(2, window(-10, 10, 2));
  const auto tt = external_product(t1, t1);
  CHECK(validate(tt).ok());
  CHECK(shape(tt) == shape(t2));
  for (const auto& [a, p] : t2.pieces) {
    std::vector<int> w1 = p.w_level, w2 = tt.piece(a).w_level;
    std::sort(w1.begin(), w1.end());
    std::sort(w2.begin(), w2.end());
    CHECK(w1 == w2);
  }
}

TEST_CASE("the unit module is neutral and products are associative in shape") {
  const auto t = build_torus(1, window(-3, 3, 2));
  const auto tu = external_product(t, build_unit());
  CHECK(tu.r == 1);
  CHECK(shape(tu) == shape(t));
  CHECK(tu.ops == t.ops);
  const auto d = build_delta(1, window(-3, 0));
  CHECK(shape(external_product(external_product(d, t), d)) == shape(external_product(d, external_product(t, d))));
}

TEST_CASE("localization model preconditions") {
  CHECK_THROWS_AS(build_isolated_sing_localization(parse_polynomial("x"), window(-2, 2)), InputError);
  CHECK_THROWS_AS(build_isolated_sing_localization(parse_polynomial("x^2*y"), window(-2, 2)), InputError);
  CHECK_THROWS_AS(build_isolated_sing_localization(parse_polynomial("x^3+y^2"), window(-2, 2)), InputError);
  auto p = window(-2, 2);
  p.cap = 0;
  CHECK_THROWS_AS(build_isolated_sing_localization(parse_polynomial("x^2+y^2"), p), InputError);
}

TEST_CASE("localization of a Fermat cubic") {
  const auto f = parse_polynomial("x^3+y^3+z^3");
  const auto m = build_isolated_sing_localization(f, window(-3, 4));
  const auto gens = localization_generators(f, 2, 0);
  // 1/f first, then nine of the ten x^b/f^2 with |b| = 3.
  REQUIRE(gens.size() == 10);
  CHECK(gens[0].pole == 1);
  CHECK(gens[0].numerator == Exponent{0, 0, 0});
  CHECK(m.piece(0).f_level[0] == 0);
  for (size_t c = 1; c < 10; ++c) CHECK(m.piece(0).f_level[c] == 1);
  const auto one_over_f = localization_coords(f, 2, 0, f);
  CHECK(one_over_f[0] == 1);
  for (size_t c = 1; c < 10; ++c) CHECK(one_over_f[c] == 0);
  const auto rep = validate(m);
  INFO(rep.summary());
  CHECK(rep.ok());
}

TEST_CASE("localization of a quadric in four variables validates") {
  const auto m = build_isolated_sing_localization(parse_polynomial("x^2+y^2+z^2+w^2"), window(-2, 3));
  const auto rep = validate(m);
  INFO(rep.summary());
  CHECK(rep.ok());
}

TEST_CASE("user-supplied filtration levels") {
  const auto f = parse_polynomial("x^2+y^2");
  auto p = window(0, 1);
  p.cap = 1;
  std::map<Rational, std::vector<int>> levels;
  const auto base = build_isolated_sing_localization(f, p);
  for (const auto& [a, pc] : base.pieces) levels[a] = std::vector<int>(pc.dim, 3);
  const auto m = build_isolated_sing_localization(f, p, FiltrationMode::user_supplied, levels);
  CHECK(m.piece(0).f_level == std::vector<int>(m.dim(0), 3));
  levels.erase(levels.begin());
  CHECK_THROWS_AS(build_isolated_sing_localization(f, p, FiltrationMode::user_supplied, levels), InputError);
}
