#pragma once

#include <map>
#include <string>
#include <vector>

#include "mhm/builders.hpp"
#include "mhm/koszul.hpp"
#include "mhm/milnor.hpp"

namespace mhm {

/// Cohomology of the part of K(M')_0 on the localization model that the
/// pole-order cap computes exactly: for the star complex the subcomplex of
/// pole order <= cap - r + j in degree j (∂ raises the pole order by one),
/// for the shriek complex everything up to the cap (t keeps the pole order).
struct CappedKoszul {
  KoszulMode mode = KoszulMode::shriek;
  int cap = 0;
  bool computed = false;
  std::string window_note;
  std::vector<size_t> h;                      // j = 0..r
  std::map<int, std::map<int, size_t>> gr_f;  // j -> p -> dim Gr^F_p H^j (pole-order F)
};
CappedKoszul capped_koszul(const Polynomial& f, KoszulMode mode, int cap, const WindowPolicy& policy);

struct GeneratorCheck {
  bool one_is_cycle = false;
  bool one_nonzero = false;      // class of 1 in H^0 K^*
  bool dff_is_cycle = false;
  bool dff_nonzero = false;      // class of df/f in H^1 K^*
  bool dff_spans_h1 = false;
};
/// Membership of the classes of 1 and df/f in the star complex at cap.
GeneratorCheck generator_check(const Polynomial& f, int cap, const WindowPolicy& policy);

struct KoszulComparison {
  std::string f;
  int r = 0;
  int d = 0;
  MilnorAlgebra milnor;
  std::map<int, size_t> griffiths;
  std::vector<ComplementEntry> complement;
  ExpectedTables expected;
  CappedKoszul shriek_lo, shriek_hi, star_lo, star_hi;  // caps m and m + 1
  bool shriek_stable = false;
  bool star_stable = false;
  GeneratorCheck generators;
  std::vector<std::string> lines;  // agreement / disagreement, never failures

  /// Deterministic text rendering.
  std::string render() const;
};

/// Side-by-side report of the capped Koszul cohomology of C[x][1/f] at
/// degree 0 (pole-order filtration) against the complement cohomology table
/// and the expected Hodge tables. Requires r >= 2 and an isolated singularity.
KoszulComparison compare_with_koszul(const Polynomial& f, const WindowPolicy& policy);

}  // namespace mhm
