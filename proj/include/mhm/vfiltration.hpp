#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhm/complex.hpp"
#include "mhm/koszul.hpp"
#include "mhm/module.hpp"
#include "mhm/subspace.hpp"

namespace mhm {

/// A finite, decreasing, left-continuous filtration V indexed by Q, stored
/// degreewise: steps[β][k] = V^{jumps[k]} ∩ M'_β. For α between jumps,
/// V^α equals the step at the smallest jump >= α; above the last jump it is
/// zero. `direction` is empty for the filtration along the origin Z and
/// holds the 1-based coordinate i0 for the filtration along {t_{i0} = 0}.
struct VFiltrationData {
  std::optional<int> direction;
  std::vector<Rational> jumps;  // strictly increasing
  std::map<Rational, size_t> dims;  // ambient dimension per degree
  std::map<Rational, std::vector<Subspace>> steps;

  /// V^α ∩ M'_β; throws InputError for a degree without steps.
  Subspace at(const Rational& beta, const Rational& alpha) const;
  /// V^{>α} ∩ M'_β, the step at the first jump strictly above α.
  Subspace above(const Rational& beta, const Rational& alpha) const;
  /// Gr_V^α M'_β with its greedy lift basis.
  Subquotient gr(const Rational& beta, const Rational& alpha) const;
  /// Σ_β dim Gr_V^α M'_β.
  size_t gr_dim(const Rational& alpha) const;
};

struct VAxiomViolation {
  std::string axiom;  // "i", "ii", "iii" or "iv"
  std::string location;
};

struct VAxiomReport {
  std::vector<VAxiomViolation> violations;
  std::vector<std::string> exempted;  // checks skipped at the window boundary
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Finite-window checks of the V-filtration axioms:
/// (i) finitely many jumps, exact, decreasing and exhaustive steps;
/// (ii) generators of V^i D shift V by i (t raises by one, ∂ lowers by one,
///      the degree-zero operators preserve V; along a coordinate the other
///      coordinates and their derivations have V-degree zero);
/// (iii) V^1 D · V^α = V^{α+1} for α above `surjectivity_threshold`
///      (default r - 1 along the origin, 0 along a coordinate), with
///      preimages cut off by the window exempted;
/// (iv) θ - α + r (along a coordinate: t_{i0}∂_{i0} - α + 1) is nilpotent
///      on Gr_V^α.
VAxiomReport v_axioms_check(const MonodromicalModule& m, const VFiltrationData& v,
                            std::optional<Rational> surjectivity_threshold = std::nullopt);

/// V^α = ⊕_{β >= α} M'_β, with jumps at the degrees of nonzero pieces.
VFiltrationData canonical_v(const MonodromicalModule& m);

/// V along {t_{i0} = 0} on a multigraded module: a basis vector of
/// multidegree a has V-level a_{i0} + 1. Throws PreconditionError when the
/// module carries no multigrading or i0 is out of range.
VFiltrationData vr_monomial(const MonodromicalModule& m, int i0);

/// One row of the dimension table dim F_p M'_β = dim F_p Gr_V^β M, with
/// β = α - i for the representative α in (r-1, r].
struct SpecializationRow {
  Rational beta;
  Rational alpha;
  long i = 0;
  int p = 0;
  size_t dim_output = 0;  // from the output module
  size_t dim_gr = 0;      // dim (F_p ∩ V^β + V^{>β}) / V^{>β}, computed directly
};

struct SpecializationResult {
  MonodromicalModule output;
  std::vector<SpecializationRow> table;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Graded model of the specialization: piece(α) := Gr_V^α M with F (and W)
/// induced, operators induced by t_i and ∂_i. Throws PreconditionError when
/// V is not along the origin or fails v_axioms_check. Validation failures of
/// the output and table mismatches are reported in `failures`.
SpecializationResult rees_specialize(const MonodromicalModule& m, const VFiltrationData& v);

struct VrMismatch {
  std::string check;  // "cone", "iso", "acyclic"
  Rational k;
  Rational alpha;
  int j = 0;
  int p = 0;
  std::string detail;
};

/// Identification of Gr_{V_r}^k K(M')_α with the shifted cone of t_{i0}
/// (shriek) or ∂_{i0} (star) on the Koszul complexes in the remaining
/// variables of Gr_{V_r}-pieces.
struct ConeIdentification {
  bool computed = false;
  std::string window_note;  // set when a Koszul term leaves the window
  FilteredComplex gr;       // Gr^k of the full Koszul complex
  FilteredComplex cone;     // C^j = A^j ⊕ B^{j-1}
  std::vector<RationalMatrix> psi;  // per term: gr coordinates -> cone coordinates
  bool isomorphic = false;
};
ConeIdentification cone_identification(const MonodromicalModule& m, const VFiltrationData& v, const Rational& k,
                                       const Rational& alpha, KoszulMode mode, std::vector<VrMismatch>& out);

/// One tested map t_{i0}: Gr^β M'_γ -> Gr^{β+1} M'_{γ+1} or
/// ∂_{i0}: Gr^{β+1} M'_γ -> Gr^β M'_{γ-1}.
struct VrIsoEntry {
  OpKind kind;
  Rational beta;
  Rational gamma;  // source degree
  bool claimed = false;
  bool holds = false;
  bool boundary = false;
};

struct GrVrReport {
  KoszulMode mode = KoszulMode::shriek;
  Rational k;
  Rational alpha;
  std::vector<VrMismatch> mismatches;
  bool cone_computed = false;
  bool cone_isomorphic = false;
  std::vector<VrIsoEntry> isomorphisms;
  bool acyclicity_judged = false;
  size_t complete_slices = 0;
  size_t incomplete_nonzero = 0;
  bool gr0_supported_on_z = false;
  std::vector<std::string> notes;
  bool ok() const { return mismatches.empty(); }
};

/// (a) cone identification at (k, α); (b) the filtered isomorphisms of t_{i0}
/// for β > 0 and of ∂_{i0} (with F shifted by one) for β < 0; (c) for k != 0
/// and α = 0, F-filtered acyclicity of Gr^k K(M')_0 on complete slices;
/// plus whether t_i (i != i0) act nilpotently on Gr^0 within the window.
/// Throws PreconditionError unless V is along a coordinate and validated.
GrVrReport gr_vr_decompose(const MonodromicalModule& m, const VFiltrationData& v, const Rational& k,
                           const Rational& alpha, KoszulMode mode);

}  // namespace mhm
