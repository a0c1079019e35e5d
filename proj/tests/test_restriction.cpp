#include <random>

#include "doctest.h"
#include "mhm/builders.hpp"
#include "mhm/restriction.hpp"

using namespace mhm;

namespace {

WindowPolicy window(int lo, int hi, int box = 2) {
  WindowPolicy p;
  p.alpha_lo = lo;
  p.alpha_hi = hi;
  p.box = box;
  return p;
}

size_t binom(int n, int k) {
  size_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<size_t>(n - k + i) / static_cast<size_t>(i);
  return b;
}

int single_key(const std::map<int, size_t>& m) {
  REQUIRE(m.size() == 1);
  return m.begin()->first;
}

}  // namespace

TEST_CASE("delta restriction is the point module in both modes") {
  for (int r = 1; r <= 3; ++r) {
    const auto m = build_delta(r, window(-r - 2, 1));
    for (auto mode : {KoszulMode::shriek, KoszulMode::star}) {
      const auto res = restriction(m, mode, 0);
      INFO("r=" << r << " mode=" << mode_name(mode));
      CHECK(res.strict);
      CHECK_FALSE(res.boundary_incomplete);
      CHECK(res.at(0).dim == 1);
      for (const auto& d : res.degrees)
        if (d.j != 0) CHECK(d.dim == 0);
      CHECK(res.at(0).gr_f.size() == 1);
      CHECK(res.at(0).gr_w.size() == 1);
      CHECK(res.gr_two_ways_agree());
    }
  }
}

TEST_CASE("torus restriction: shriek acyclic, star with Tate-type steps") {
  for (int r = 2; r <= 3; ++r) {
    const auto m = build_torus(r, window(-r - 1, 2 * r + 2, 2));
    const auto sh = restriction(m, KoszulMode::shriek, 0);
    CHECK(sh.strict);
    CHECK_FALSE(sh.boundary_incomplete);
    for (const auto& d : sh.degrees) CHECK(d.dim == 0);

    const auto st = restriction(m, KoszulMode::star, 0);
    CHECK(st.strict);
    CHECK_FALSE(st.boundary_incomplete);
    CHECK(st.gr_two_ways_agree());
    for (int j = 0; j <= r; ++j) {
      const auto& d = st.at(j - r);
      CHECK(d.dim == binom(r, j));
      if (j > 0) {
        const auto& prev = st.at(j - r - 1);
        CHECK(single_key(d.gr_f) == single_key(prev.gr_f) - 1);
        CHECK(single_key(d.gr_w) == single_key(prev.gr_w) + 2);
      }
    }
  }
}

TEST_CASE("strictness and two-way graded dimensions on products") {
  const auto t1 = build_torus(1, window(-4, 5, 2));
  const auto d1 = build_delta(1, window(-4, 1));
  const auto d2 = build_delta(2, window(-4, 1));
  for (const auto& m : {external_product(t1, d1), external_product(d1, t1), external_product(t1, t1),
                        external_product(d2, t1)}) {
    for (auto mode : {KoszulMode::shriek, KoszulMode::star}) {
      const auto res = restriction(m, mode, 0);
      INFO(m.name << " " << mode_name(mode));
      CHECK(res.strict);
      CHECK(res.gr_two_ways_agree());
      CHECK_FALSE(res.boundary_incomplete);
    }
  }
}

TEST_CASE("Euler characteristic of every slice") {
  const auto m = external_product(build_torus(1, window(-4, 5, 2)), build_torus(1, window(-4, 5, 2)));
  for (int a = -1; a <= 1; ++a)
    for (auto mode : {KoszulMode::shriek, KoszulMode::star})
      for (const auto& s : koszul_slices(build_koszul(m, mode, a))) {
        long chi_terms = 0, chi_h = 0;
        for (int j = s.complex.lo; j <= s.complex.hi(); ++j) chi_terms += (j % 2 ? -1 : 1) * static_cast<long>(s.complex.dim(j));
        for (const auto& h : cohomology(s.complex)) chi_h += (h.j % 2 ? -1 : 1) * static_cast<long>(h.dim);
        CHECK(chi_terms == chi_h);
      }
}

TEST_CASE("shriek restriction only sees degrees alpha..alpha+r") {
  const auto m = build_torus(2, window(-3, 6, 2));
  auto changed = m;
  for (auto& [a, p] : changed.pieces)
    if (a < 0 || a > 2)
      for (auto& l : p.f_level) l += 3;
  const auto x = restriction(m, KoszulMode::shriek, 0), y = restriction(changed, KoszulMode::shriek, 0);
  for (int j = 0; j <= 2; ++j) {
    CHECK(x.at(j).dim == y.at(j).dim);
    CHECK(x.at(j).gr_f == y.at(j).gr_f);
  }
}

TEST_CASE("weights without a module W are centered at zero and shifted by j") {
  auto m = build_delta(2, window(-4, 1));
  m.has_w = false;
  for (auto& [a, p] : m.pieces) p.w_level.clear();
  const auto res = restriction(m, KoszulMode::shriek, 0);
  CHECK(res.at(0).gr_w == std::map<int, size_t>{{0, 1}});
  const auto t = build_torus(1, window(-3, 4, 2));
  auto tn = t;
  tn.has_w = false;
  for (auto& [a, p] : tn.pieces) p.w_level.clear();
  const auto st = restriction(tn, KoszulMode::star, 0);
  CHECK(st.at(-1).gr_w == std::map<int, size_t>{{-1, 1}});
  CHECK(st.at(0).gr_w == std::map<int, size_t>{{0, 1}});
}

TEST_CASE("purity of point modules") {
  const auto d = build_delta(2, window(-4, 1));
  auto rep = purity_check(d);
  CHECK(rep.applicable);
  CHECK(rep.ok());
  const auto dd = external_product(build_delta(1, window(-4, 1)), build_delta(1, window(-4, 1)));
  CHECK(purity_check(dd).ok());
  const auto t = purity_check(build_torus(2, window(-3, 5)));
  CHECK_FALSE(t.applicable);
  CHECK_FALSE(t.notice.empty());

  auto bad = d;
  bad.pieces.at(0).w_level[0] = 3;
  CHECK_FALSE(purity_check(bad).ok());
}

TEST_CASE("mapping cone strictness: direct sum and planted failures") {
  // A = [Q -> 0], B = [0 -> Q] with r = 1 and phi = 0.
  FilteredComplex a = plain_complex(0, {RationalMatrix(0, 1)});
  FilteredComplex b = plain_complex(0, {RationalMatrix(1, 0)});
  const auto v = mapping_cone_strictness(a, b, {RationalMatrix(0, 1), RationalMatrix(1, 0)}, 1);
  CHECK(v.computed.all());
  CHECK(v.cone_strict);
  CHECK(v.ok());

  // phi: Q -> Q in degree 0 that drops the filtration level: H^0 map is not strict.
  FilteredComplex a2 = plain_complex(0, {RationalMatrix(0, 1)});
  FilteredComplex b2 = plain_complex(0, {RationalMatrix(0, 1)});
  a2.F[0] = Flag::trivial(1, 1);
  b2.F[0] = Flag::trivial(1, 0);
  ConeHypotheses claim;
  claim.source_strict = claim.target_strict = claim.h0_strict = claim.hr_strict = claim.one_sided_vanishing = true;
  const auto w = mapping_cone_strictness(a2, b2, {RationalMatrix::identity(1), RationalMatrix(0, 0)}, 1, claim);
  CHECK_FALSE(w.computed.h0_strict);
  CHECK_FALSE(w.inconsistencies.empty());
  CHECK(w.ok());  // no strictness claim without the hypotheses

  CHECK_THROWS_AS(mapping_cone_strictness(plain_complex(0, {RationalMatrix(1, 1), RationalMatrix(1, 1)}), b, {}, 1),
                  PreconditionError);
}

TEST_CASE("random cones satisfying the hypotheses are strict") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> coef(-2, 2), lvl(0, 2), sz(1, 3);
  int qualifying = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    // A^0 = Q^{a+k} -> A^1 = Q^a surjective; B^0 -> B^1 arbitrary; phi^0 = [X | Y] with d_B Y = 0.
    const size_t na = static_cast<size_t>(sz(rng)), nk = static_cast<size_t>(sz(rng) - 1);
    const size_t b0 = static_cast<size_t>(sz(rng)), b1 = static_cast<size_t>(sz(rng));
    RationalMatrix da(na, na + nk);
    for (size_t i = 0; i < na; ++i) da(i, i) = 1;
    RationalMatrix db(b1, b0);
    for (size_t i = 0; i < b1; ++i)
      for (size_t j = 0; j < b0; ++j) db(i, j) = coef(rng);
    const RationalMatrix kb = kernel_basis(db);
    RationalMatrix phi0(b0, na + nk);
    for (size_t i = 0; i < b0; ++i)
      for (size_t j = 0; j < na; ++j) phi0(i, j) = coef(rng);
    for (size_t j = 0; j < nk && kb.cols(); ++j) {
      const int pick = coef(rng);
      for (size_t i = 0; i < b0; ++i) phi0(i, na + j) = kb(i, static_cast<size_t>(std::abs(pick)) % kb.cols()) * pick;
    }
    const RationalMatrix phi1 = db * phi0.select_cols([&] {
      std::vector<size_t> c(na);
      for (size_t i = 0; i < na; ++i) c[i] = i;
      return c;
    }());
    auto levels = [&](size_t n) {
      std::vector<int> l(n);
      for (auto& x : l) x = lvl(rng);
      return l;
    };
    FilteredComplex a = plain_complex(0, {da});
    FilteredComplex b = plain_complex(0, {db});
    const auto la = levels(na + nk);
    a.F = {Flag::from_levels(na + nk, la), Flag::from_levels(na, std::vector<int>(la.begin(), la.begin() + static_cast<long>(na)))};
    b.F = {Flag::from_levels(b0, levels(b0)), Flag::from_levels(b1, levels(b1))};
    if (!a.is_filtered() || !b.is_filtered()) continue;
    bool phi_filtered = true;
    for (int j = 0; j <= 1; ++j) {
      const auto& ph = j ? phi1 : phi0;
      for (int p = -1; p <= 3; ++p)
        if (!b.flag(j).at(p).contains(a.flag(j).at(p).image_under(ph))) phi_filtered = false;
    }
    if (!phi_filtered) continue;
    const auto v = mapping_cone_strictness(a, b, {phi0, phi1}, 1);
    if (!v.computed.all()) continue;
    ++qualifying;
    CHECK(v.cone_strict);
  }
  CHECK(qualifying >= 20);
}
