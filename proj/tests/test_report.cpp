#include "doctest.h"
#include "json.hpp"
#include "mhm/generators.hpp"
#include "mhm/suite.hpp"
#include "mhm/weight.hpp"

using namespace mhm;

TEST_CASE("suite reports are byte-identical for a fixed seed and parse as JSON") {
  WindowPolicy p;
  p.alpha_lo = -2;
  p.alpha_hi = 4;
  const auto m = build_family("torus", 2, "", p);
  SuiteOptions opts;
  opts.seed = 7;
  const auto a = run_suite(m, opts), b = run_suite(m, opts);
  CHECK(a.ok);
  CHECK(a.to_tsv() == b.to_tsv());
  CHECK(a.to_json() == b.to_json());
  const auto doc = nlohmann::json::parse(a.to_json());
  CHECK(doc["status"] == "pass");
  CHECK(doc["tables"]["checks"].size() == a.tables.front().rows.size());
  CHECK_THROWS_AS(a.render("xml"), InputError);
}

TEST_CASE("restriction records cover every (mode, j, p)") {
  WindowPolicy p;
  p.alpha_lo = -3;
  p.alpha_hi = 2;
  const auto m = build_delta(2, p);
  Report rep;
  add_restriction_records(rep, restriction(m, KoszulMode::shriek, 0));
  add_restriction_records(rep, restriction(m, KoszulMode::star, 0));
  const auto& t = rep.tables.front();
  CHECK(t.name == "restriction");
  size_t nonzero = 0;
  for (const auto& row : t.rows)
    if (row[3] != "0") ++nonzero;
  CHECK(nonzero == 2);  // H^0 in each mode
  CHECK(rep.tables.size() == 2);
  CHECK(rep.tables.back().rows.size() == 2);
}

TEST_CASE("unknown families and bad parameters are input errors") {
  WindowPolicy p;
  CHECK_THROWS_AS(build_family("sphere", 2, "", p), InputError);
  CHECK_THROWS_AS(build_family("torus", 0, "", p), InputError);
  CHECK_THROWS_AS(build_family("product", 1, "", p), InputError);
  CHECK_THROWS_AS(build_family("localization", 2, "", p), InputError);
}

TEST_CASE("planted nilpotents have the Jordan type they were built from") {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto pn = random_nilpotent(rng, 8);
    size_t n = 0;
    for (auto b : pn.blocks) n += b;
    REQUIRE(pn.n.rows() == n);
    // rank N^k = Σ max(b - k, 0)
    RationalMatrix pow = RationalMatrix::identity(n);
    for (size_t k = 1; k <= n; ++k) {
      pow = pow * pn.n;
      size_t want = 0;
      for (auto b : pn.blocks) want += b > k ? b - k : 0;
      CHECK(rank(pow) == want);
    }
    size_t total = 0;
    for (const auto& [k, d] : jordan_weight_dims(pn.blocks, 1)) total += d;
    CHECK(total == n);
  }
}
