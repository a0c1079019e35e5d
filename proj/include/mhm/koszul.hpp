#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhm/complex.hpp"
#include "mhm/module.hpp"

namespace mhm {

enum class KoszulMode { shriek, star };
inline const char* mode_name(KoszulMode m) { return m == KoszulMode::shriek ? "shriek" : "star"; }

/// K^{!,j}_α = ⊕_{|I| = r-j} M'_{α+j}, F_p = copies of F_{p+r}; the
/// differential contracts I through t_i with sign (-1)^{#{i' in I : i' < i}}.
/// Throws WindowError when a needed degree is outside the stored window.
FilteredComplex build_koszul_shriek(const MonodromicalModule& m, const Rational& alpha);

/// K^{*,j}_α = ⊕_{|J| = j} M'_{α+r-j}, F_p = copies of F_{p+j}; the
/// differential wedges e_i through ∂_i with sign (-1)^{#{i' in J : i' < i}}.
FilteredComplex build_koszul_star(const MonodromicalModule& m, const Rational& alpha);

/// With `require_d_squared_zero` false the d∘d = 0 check is skipped; callers
/// that keep only a subcomplex avoiding truncated elements check it there.
FilteredComplex build_koszul(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha,
                             bool require_d_squared_zero = true);

/// A direct summand of a Koszul complex: one multidegree slice, or the whole
/// complex for modules without multigrading.
struct KoszulSlice {
  Exponent key;
  FilteredComplex complex;
  std::vector<std::vector<size_t>> coords;  // term coordinates in the full complex
  bool incomplete = false;
};
std::vector<KoszulSlice> koszul_slices(const FilteredComplex& c);

struct AcyclicityViolation {
  KoszulMode mode;
  Rational alpha;
  int p = 0;
  int j = 0;
  size_t dim = 0;
  Exponent slice;
};

struct AcyclicityReport {
  std::vector<AcyclicityViolation> violations;
  std::vector<std::string> boundary_incomplete;  // window or truncation limited checks
  std::vector<Rational> skipped;                 // α = 0 is excluded
  size_t complete_slices = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks H^j Gr^F_p K^{!}_α = 0 for α > 0 and H^j Gr^F_p K^{*}_α = 0 for
/// α < 0 over the given degrees. Only complete slices are judged; window and
/// truncation limits are reported as boundary-incomplete.
AcyclicityReport check_acyclicity_eq7(const MonodromicalModule& m, const std::vector<Rational>& alphas,
                               std::optional<std::pair<int, int>> p_range = std::nullopt);

}  // namespace mhm
