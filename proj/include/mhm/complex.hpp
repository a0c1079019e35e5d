#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mhm/matrix.hpp"
#include "mhm/polynomial.hpp"
#include "mhm/subspace.hpp"

namespace mhm {

/// Bookkeeping for one basis element of a Koszul term: the exterior index
/// set (bitmask over 1..r), the module basis vector, and the multidegree
/// slice key. `incomplete` marks elements whose differential or whose
/// preimages were cut off by the stored window.
struct TermLabel {
  std::uint32_t subset = 0;
  size_t vector = 0;
  Exponent slice;
  bool incomplete = false;
};

/// A bounded complex of finite-dimensional F-filtered (optionally
/// W-filtered) spaces, terms in cohomological degrees lo .. lo + size - 1.
struct FilteredComplex {
  int lo = 0;
  std::vector<size_t> dims;
  std::vector<Flag> F;
  std::vector<Flag> W;                      // empty when no weight flag
  std::vector<RationalMatrix> d;            // d[k]: term lo+k -> term lo+k+1
  std::vector<std::vector<TermLabel>> labels;  // optional, per term

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  bool has_w() const { return !W.empty(); }
  bool in_range(int j) const { return j >= lo && j <= hi(); }
  size_t dim(int j) const { return in_range(j) ? dims[static_cast<size_t>(j - lo)] : 0; }
  /// Differential from degree j; a zero map of the right shape outside the range.
  RationalMatrix diff(int j) const;
  Flag flag(int j) const;
  Flag wflag(int j) const;
  /// Smallest and largest jump index over all terms' F flags.
  std::pair<int, int> f_range() const;

  /// Throws PreconditionError on inconsistent shapes.
  void check_shapes() const;
  bool d_squared_zero() const;
  /// d(F_p C^j) ⊆ F_p C^{j+1} for all j, p (and likewise for W when present).
  bool is_filtered() const;

  /// Subcomplex on coordinate subsets (one index list per term); requires d
  /// to map each subset into the next.
  FilteredComplex restrict_to(const std::vector<std::vector<size_t>>& coords) const;
};

/// Cohomology in one degree with the filtrations induced on it.
struct CohomologyDegree {
  int j = 0;
  size_t dim = 0;
  Subspace cycles;
  Subspace boundaries;
  std::map<int, size_t> gr_f;  // p -> dim Gr^F_p H^j (levels with nonzero graded pieces)
  std::map<int, size_t> gr_w;  // k -> dim Gr^W_k H^j
};
std::vector<CohomologyDegree> cohomology(const FilteredComplex& c);

/// p -> dim of F_p(Z)/F_{p-1}(Z) where F_p(Z) = (Z ∩ F_p + B)/B.
std::map<int, size_t> induced_gr_dims(const Subspace& cycles, const Subspace& boundaries, const Flag& flag);

struct GrCohomology {
  int p = 0;
  std::map<int, size_t> dims;             // j -> dim H^j(Gr^F_p C)
  std::map<int, RationalMatrix> bases;    // j -> lifts of a basis, in Gr_p C^j coordinates
};
/// Cohomology of Gr^F_p C; throws PreconditionError for p outside f_range().
GrCohomology gr_cohomology(const FilteredComplex& c, int p);

struct StrictnessWitness {
  int j = 0;  // source degree of the differential
  int p = 0;
  std::vector<Rational> vector;  // in im d ∩ F_p C^{j+1} but not in d(F_p C^j)
};
struct StrictnessResult {
  bool strict = true;
  std::optional<StrictnessWitness> witness;
};
StrictnessResult is_strict(const FilteredComplex& c);

/// Cone of a chain map phi: A -> B (phi indexed by A's degrees from A.lo):
/// C^n = A^{n+1} ⊕ B^n, d = [[-d_A, 0], [phi, d_B]], flags are direct sums.
/// Throws PreconditionError unless phi commutes with the differentials.
FilteredComplex mapping_cone(const FilteredComplex& a, const FilteredComplex& b, const std::vector<RationalMatrix>& phi);

/// Complex with trivial flags; handy for tests and synthetic inputs.
FilteredComplex plain_complex(int lo, const std::vector<RationalMatrix>& d, int level = 0);

}  // namespace mhm
