#include <random>

#include "doctest.h"
#include "mhm/builders.hpp"
#include "mhm/module_io.hpp"

using namespace mhm;

namespace {

void check_same(const MonodromicalModule& a, const MonodromicalModule& b) {
  CHECK(a.r == b.r);
  CHECK(a.name == b.name);
  CHECK(a.has_w == b.has_w);
  CHECK(a.multigraded == b.multigraded);
  CHECK(a.integral_degrees == b.integral_degrees);
  CHECK(a.pure_weight == b.pure_weight);
  CHECK(a.support_lo == b.support_lo);
  CHECK(a.support_hi == b.support_hi);
  REQUIRE(a.pieces.size() == b.pieces.size());
  for (const auto& [deg, p] : a.pieces) {
    REQUIRE(b.stored(deg));
    const Piece& q = b.piece(deg);
    CHECK(p.dim == q.dim);
    CHECK(p.f_level == q.f_level);
    CHECK(p.w_level == q.w_level);
    CHECK(p.multidegree == q.multidegree);
    for (int k = 0; k < 2; ++k) {
      CHECK(p.out_truncated[k] == q.out_truncated[k]);
      CHECK(p.in_truncated[k] == q.in_truncated[k]);
    }
  }
  CHECK(a.ops == b.ops);
}

WindowPolicy window(int lo, int hi) {
  WindowPolicy p;
  p.alpha_lo = lo;
  p.alpha_hi = hi;
  return p;
}

}  // namespace

TEST_CASE("module files round-trip bit-exactly") {
  std::vector<MonodromicalModule> mods = {
      build_delta(2, window(-3, 0)),
      build_torus(2, window(-2, 2)),
      external_product(build_torus(1, window(-2, 2)), build_delta(1, window(-3, 0))),
      build_isolated_sing_localization(parse_polynomial("x^3+y^3"), window(-1, 2)),
      build_unit(3, 1),
  };
  for (const auto& m : mods) {
    CAPTURE(m.name);
    const std::string text = serialize_module(m);
    const MonodromicalModule back = parse_module(text);
    check_same(m, back);
    CHECK(serialize_module(back) == text);
    CHECK(validate(back).ok() == validate(m).ok());
  }
}

TEST_CASE("module file without truncation gets the window boundary marked") {
  const std::string text = R"({"format": "mhm-module/1", "r": 1,
    "pieces": [{"degree": "0", "dim": 1, "f_jumps": [{"level": 0, "columns": [0]}]},
               {"degree": "1", "dim": 1, "f_jumps": [{"level": 0, "columns": [0]}]}],
    "operators": [{"op": "t", "i": 1, "source": "0/1", "rows": 1, "cols": 1, "entries": [[0, 0, "1"]]},
                  {"op": "d", "i": 1, "source": "1", "rows": 1, "cols": 1, "entries": [[0, 0, "1/1"]]}]})";
  const auto m = parse_module(text);
  CHECK(m.out_truncated(OpKind::t, 1, 1, 0));
  CHECK_FALSE(m.out_truncated(OpKind::t, 1, 0, 0));
  CHECK(m.in_truncated(OpKind::t, 1, 0, 0));
  CHECK(m.op(OpKind::d, 1, 1)(0, 0) == 1);
}

TEST_CASE("malformed module files name the location") {
  auto message = [](const std::string& text) {
    try {
      parse_module(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string head = R"({"format": "mhm-module/1", "r": 1, "pieces": [)";
  const std::string piece0 = R"({"degree": "0", "dim": 2, "f_jumps": [{"level": 0, "columns": [0, 1]}]})";
  CHECK(message("{") .find("module file") != std::string::npos);
  CHECK(message(R"({"format": "other"})").find("module/format") != std::string::npos);
  CHECK(message(head + R"({"degree": "x", "dim": 1, "f_jumps": []}], "operators": []})")
            .find("module/pieces/0/degree") != std::string::npos);
  CHECK(message(head + R"({"degree": "0", "dim": 2, "f_jumps": [{"level": 0, "columns": [0]}]}], "operators": []})")
            .find("column 1 has no level") != std::string::npos);
  CHECK(message(head + piece0 + R"(], "operators": [{"op": "t", "i": 2, "source": "0", "rows": 2, "cols": 2, "entries": []}]})")
            .find("module/operators/0/i") != std::string::npos);
  CHECK(message(head + piece0 + R"(], "operators": [{"op": "t", "i": 1, "source": "0", "rows": 2, "cols": 2, "entries": [[5, 0, "1"]]}]})")
            .find("module/operators/0/entries/0") != std::string::npos);
}

TEST_CASE("V-filtration files round-trip") {
  for (const auto& m : {build_delta(2, window(-3, 0)), build_torus(2, window(-2, 2))}) {
    const auto v = canonical_v(m);
    const std::string text = serialize_vfiltration(v);
    const auto back = parse_vfiltration(text);
    CHECK(back.direction == v.direction);
    CHECK(back.jumps == v.jumps);
    CHECK(back.dims == v.dims);
    REQUIRE(back.steps.size() == v.steps.size());
    for (const auto& [beta, steps] : v.steps) {
      REQUIRE(back.steps.at(beta).size() == steps.size());
      for (size_t k = 0; k < steps.size(); ++k) CHECK(back.steps.at(beta)[k] == steps[k]);
    }
    CHECK(serialize_vfiltration(back) == text);
  }
  const auto vr = vr_monomial(build_torus(2, window(-2, 2)), 2);
  const auto back = parse_vfiltration(serialize_vfiltration(vr));
  CHECK(back.direction == std::optional<int>(2));
  CHECK(v_axioms_check(build_torus(2, window(-2, 2)), back).ok());
}

TEST_CASE("V-filtration file with increasing steps is rejected") {
  const std::string text = R"({"format": "mhm-vfiltration/1", "direction": null, "jumps": ["0", "1"],
    "degrees": [{"degree": "0", "dim": 1, "steps": [{"rows": 0, "entries": []}, {"rows": 1, "entries": [[0, 0, "1"]]}]}]})";
  CHECK_THROWS_WITH_AS(parse_vfiltration(text), doctest::Contains("vfiltration/degrees/0/steps/1"), InputError);
}

TEST_CASE("random rational operator entries survive the round trip") {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  MonodromicalModule m = build_torus(2, window(-2, 2));
  for (auto& [key, mat] : m.ops)
    for (size_t i = 0; i < mat.rows(); ++i)
      for (size_t j = 0; j < mat.cols(); ++j) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        mat(i, j) = q;
      }
  const auto back = parse_module(serialize_module(m));
  CHECK(back.ops == m.ops);
}
