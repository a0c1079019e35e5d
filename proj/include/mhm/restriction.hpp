#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhm/complex.hpp"
#include "mhm/koszul.hpp"
#include "mhm/module.hpp"
#include "mhm/weight.hpp"

namespace mhm {

/// Cohomology of a degree-α Koszul complex in one reported degree. Star
/// results are reported after the shift [r], i.e. at j - r.
struct RestrictionDegree {
  int j = 0;
  size_t dim = 0;
  std::map<int, size_t> gr_f;          // dim Gr^F_p H^j (cohomology first, then graded)
  std::map<int, size_t> gr_f_of_gr;    // dim H^j(Gr^F_p) (graded first), nonzero entries
  std::map<int, size_t> gr_w;          // dim Gr^W_k H^j with k already shifted by j
};

struct RestrictionResult {
  KoszulMode mode = KoszulMode::shriek;
  Rational alpha = 0;
  int r = 0;
  std::vector<RestrictionDegree> degrees;
  bool strict = true;
  std::optional<StrictnessWitness> witness;
  bool weights_computed = false;
  std::optional<RelativeNonexistence> weight_failure;
  bool boundary_incomplete = false;
  bool computed = true;  // false when d∘d fails across truncated operators
  size_t complete_slices = 0;
  size_t incomplete_slices = 0;
  std::vector<std::string> notes;

  const RestrictionDegree& at(int j) const;
  /// Gr^F dims agree both ways in every degree.
  bool gr_two_ways_agree() const;
};

/// Restriction data: cohomology of the Koszul
/// complex at α with induced F and, when the module carries W, the weight
/// filtration induced by the relative monodromy filtration of N = θ - α + r
/// on each piece. Multigraded modules are processed slice by slice; slices
/// cut by truncation are excluded when acyclic and flag the result
/// boundary-incomplete otherwise.
RestrictionResult restriction(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha = 0);

/// Term W flags for a Koszul complex from the relative monodromy filtration
/// of each piece; returns false (with the first certificate) on nonexistence.
struct KoszulWeights {
  std::vector<Flag> flags;
  std::optional<RelativeNonexistence> failure;
  std::vector<std::string> notes;
};
KoszulWeights koszul_weight_flags(const MonodromicalModule& m, KoszulMode mode, const Rational& alpha,
                                  const FilteredComplex& c);

struct PurityReport {
  bool applicable = false;
  std::string notice;
  std::vector<std::string> violations;
  bool ok() const { return !applicable || violations.empty(); }
};
/// N = 0 on every piece, and Gr^W H^j concentrated in weight w + j for both
/// modes at α = 0. Skipped with a notice when the module declares no pure weight.
PurityReport purity_check(const MonodromicalModule& m);

struct ConeHypotheses {
  bool source_strict = false;
  bool target_strict = false;
  bool h0_strict = false;   // H^0(A) -> H^0(B) strict
  bool hr_strict = false;   // H^r(A) -> H^r(B) strict
  bool one_sided_vanishing = false;
  bool all() const { return source_strict && target_strict && h0_strict && hr_strict && one_sided_vanishing; }
};

struct ConeVerdict {
  ConeHypotheses computed;
  std::vector<std::string> inconsistencies;  // user claims contradicted by the data
  bool cone_strict = false;
  std::optional<StrictnessWitness> witness;
  /// A strictness claim is made only when the hypotheses hold.
  bool ok() const { return !computed.all() || cone_strict; }
};

/// Is H^j(phi): H^j(A) -> H^j(B) strict for the induced filtrations?
bool induced_map_strict(const FilteredComplex& a, const FilteredComplex& b, const RationalMatrix& phi_j, int j);

/// Builds the cone of phi: A -> B (terms in [0, r]) and tests its
/// strictness, together with the hypotheses under which strictness is
/// guaranteed. Claimed hypotheses that disagree with the data are reported.
ConeVerdict mapping_cone_strictness(const FilteredComplex& a, const FilteredComplex& b,
                                    const std::vector<RationalMatrix>& phi, int r,
                                    std::optional<ConeHypotheses> claimed = std::nullopt);

}  // namespace mhm
