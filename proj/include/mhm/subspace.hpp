#pragma once

#include <span>
#include <vector>

#include "mhm/matrix.hpp"

namespace mhm {

/// A linear subspace of Q^n. The basis is held in canonical form: the rows of
/// `echelon()` are the reduced row echelon form of any spanning set, so two
/// subspaces are equal exactly when their canonical forms are.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(size_t ambient);  // zero subspace

  /// Span of the columns of `vectors` (ambient = vectors.rows()).
  static Subspace span(const RationalMatrix& vectors);
  static Subspace span(size_t ambient, const RationalMatrix& vectors);
  static Subspace full(size_t ambient);
  /// Span of the standard basis vectors e_c for c in `coords`.
  static Subspace coordinate(size_t ambient, std::span<const size_t> coords);

  size_t ambient() const { return ambient_; }
  size_t dim() const { return pivots_.size(); }
  bool is_zero() const { return pivots_.empty(); }
  bool is_full() const { return dim() == ambient_; }

  /// Basis vectors as columns (ambient x dim).
  RationalMatrix basis() const;
  const RationalMatrix& echelon() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  /// Coordinates not used as pivots; e_c for these span the chosen complement.
  std::vector<size_t> complement_coords() const;

  bool contains(std::span<const Rational> v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;

  /// Quotient coordinates of v in Q^n / this (length ambient - dim).
  std::vector<Rational> quotient_coords(std::span<const Rational> v) const;
  /// Matrix of v -> quotient_coords(v).
  RationalMatrix quotient_projection() const;
  /// Columns e_c for c in complement_coords(): a section of the projection.
  RationalMatrix complement_lift() const;

  /// Image under a linear map `a` (a.cols() == ambient).
  Subspace image_under(const RationalMatrix& a) const;
  /// Preimage under `a` of a subspace of its target.
  static Subspace preimage(const RationalMatrix& a, const Subspace& target);

  /// this ∩ span{e_c : c in coords}, re-expressed in those coordinates.
  Subspace restrict_to(std::span<const size_t> coords) const;
  /// Embeds into Q^n along `positions` (positions.size() == ambient).
  Subspace embed(size_t ambient, std::span<const size_t> positions) const;

 private:
  size_t ambient_ = 0;
  RationalMatrix rows_;  // dim x ambient, reduced echelon
  std::vector<size_t> pivots_;
};

Subspace operator+(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);

struct SubspaceRelations {
  Subspace sum;
  Subspace intersection;
  bool contained = false;  // u ⊆ v
};
/// Sum, intersection and containment; throws PreconditionError on ambient mismatch.
SubspaceRelations subspace_ops(const Subspace& u, const Subspace& v);

/// Rank, kernel and image of a linear map.
struct RankKernelImage {
  size_t rank = 0;
  Subspace kernel;
  Subspace image;
};
RankKernelImage rank_kernel_image(const RationalMatrix& a);

/// Matrix of the map source/u_src -> target/u_tgt induced by `a`, in the
/// complement coordinates of each quotient. Throws PreconditionError unless
/// a(u_src) ⊆ u_tgt.
RationalMatrix induced_quotient_map(const RationalMatrix& a, const Subspace& u_src, const Subspace& u_tgt);

/// A subquotient big/small with a chosen basis of lifts taken greedily from
/// the canonical basis of `big`.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(Subspace big, Subspace small);

  size_t dim() const { return lifts_.cols(); }
  size_t ambient() const { return big_.ambient(); }
  const Subspace& big() const { return big_; }
  const Subspace& small() const { return small_; }
  /// ambient x dim; representatives of a basis of big/small.
  const RationalMatrix& lifts() const { return lifts_; }
  /// Coordinates of the columns of `w` (all in big) in the lift basis.
  RationalMatrix coords(const RationalMatrix& w) const;
  /// Images of the subspace `u` ⊆ big in subquotient coordinates: (u + small)/small.
  Subspace image_of(const Subspace& u) const;

 private:
  Subspace big_, small_;
  RationalMatrix lifts_;
  RationalMatrix frame_;  // [lifts | small basis]
};

/// Map between subquotients induced by `a`; checks a(big_s) ⊆ big_t and a(small_s) ⊆ small_t.
RationalMatrix subquotient_map(const RationalMatrix& a, const Subquotient& src, const Subquotient& tgt);

/// An increasing exhaustive filtration of Q^n: at(p) = 0 for p < lo(),
/// at(p) = steps[p - lo], and everything for p >= hi().
class Flag {
 public:
  Flag() = default;
  Flag(size_t ambient, int lo, std::vector<Subspace> steps);

  /// Coordinate flag: e_c ∈ at(p) iff levels[c] <= p.
  static Flag from_levels(size_t ambient, std::span<const int> levels);
  /// Single jump at `level`: 0 below, everything at and above.
  static Flag trivial(size_t ambient, int level);

  size_t ambient() const { return ambient_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(steps_.size()) - 1; }
  Subspace at(int p) const;
  size_t gr_dim(int p) const { return at(p).dim() - at(p - 1).dim(); }

  /// Direct sum of flags placed at the given coordinate positions of Q^n.
  static Flag direct_sum(size_t ambient, const std::vector<std::pair<Flag, std::vector<size_t>>>& parts);
  /// F'_p = F_{p + shift}.
  Flag shifted(int shift) const;
  /// Induced flag on big/small in subquotient coordinates.
  Flag induced(const Subquotient& sq) const;
  /// Restriction to a coordinate subset (valid when the flag splits along it).
  Flag restrict_to(std::span<const size_t> coords) const;

  bool operator==(const Flag& other) const;

 private:
  size_t ambient_ = 0;
  int lo_ = 0;
  std::vector<Subspace> steps_;
};

/// A basis of Q^n adapted to both flags: every a.at(p) ∩ b.at(k) is spanned by
/// the basis vectors it contains. Returns the basis (columns) and, per column,
/// its jump levels in `a` and in `b`.
struct AdaptedBasis {
  RationalMatrix basis;
  std::vector<int> level_a;
  std::vector<int> level_b;
};
AdaptedBasis adapted_basis(const Flag& a, const Flag& b);

}  // namespace mhm
