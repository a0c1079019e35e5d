#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhm/matrix.hpp"
#include "mhm/polynomial.hpp"

namespace mhm {

/// t_i raises the degree by one, d_i (the vector field ∂_i) lowers it by one.
enum class OpKind { t = 0, d = 1 };

inline const char* op_name(OpKind k) { return k == OpKind::t ? "t" : "d"; }

/// One stored graded piece M'_α of a monodromical module.
struct Piece {
  Rational degree;
  size_t dim = 0;
  std::vector<int> f_level;             // e_v ∈ F_p iff f_level[v] <= p
  std::vector<int> w_level;             // empty iff the module has no W
  std::vector<Exponent> multidegree;    // empty iff the module is not multigraded
  // [kind][i - 1][v]: the image of e_v under the operator leaves the window.
  std::array<std::vector<std::vector<bool>>, 2> out_truncated;
  // [kind][i - 1][v]: e_v may have operator preimages outside the window.
  std::array<std::vector<std::vector<bool>>, 2> in_truncated;
};

struct OpKey {
  OpKind kind;
  int i;  // 1-based
  Rational source;
  auto operator<=>(const OpKey& o) const {
    if (kind != o.kind) return kind <=> o.kind;
    if (i != o.i) return i <=> o.i;
    if (source < o.source) return std::strong_ordering::less;
    if (o.source < source) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const OpKey& o) const { return kind == o.kind && i == o.i && source == o.source; }
};

/// A finite window of a Q-graded, F-filtered (optionally W-filtered) module
/// over the Weyl algebra in r variables, stored piece by piece with the
/// operator blocks t_i: M'_α -> M'_{α+1} and ∂_i: M'_α -> M'_{α-1}.
///
/// Degrees that are not stored are outside the window unless the module
/// declares them zero (support bounds, or non-integral degrees when
/// `integral_degrees` is set).
class MonodromicalModule {
 public:
  int r = 0;
  std::string name;
  std::map<Rational, Piece> pieces;
  std::map<OpKey, RationalMatrix> ops;  // absent block between stored degrees means zero
  bool has_w = false;
  bool multigraded = false;
  bool integral_degrees = false;
  std::optional<int> pure_weight;
  std::optional<Rational> support_lo;
  std::optional<Rational> support_hi;

  bool stored(const Rational& a) const { return pieces.count(a) > 0; }
  bool known_zero(const Rational& a) const;
  bool in_window(const Rational& a) const { return stored(a) || known_zero(a); }
  size_t dim(const Rational& a) const;  // throws WindowError outside the window
  const Piece& piece(const Rational& a) const;

  static Rational target(OpKind k, const Rational& a) { return k == OpKind::t ? Rational(a + 1) : Rational(a - 1); }
  static Rational source_into(OpKind k, const Rational& a) { return k == OpKind::t ? Rational(a - 1) : Rational(a + 1); }

  bool op_available(OpKind k, int i, const Rational& a) const;
  /// Operator block with source degree a; throws WindowError when unavailable.
  RationalMatrix op(OpKind k, int i, const Rational& a) const;
  void set_op(OpKind k, int i, const Rational& a, RationalMatrix m);

  bool out_truncated(OpKind k, int i, const Rational& a, size_t v) const;
  bool in_truncated(OpKind k, int i, const Rational& a, size_t v) const;

  /// Sizes the truncation tables and marks every vector whose operator image
  /// or preimage lies in a degree outside the window.
  void mark_window_boundary();

  /// Shape checks on all fields; throws InputError naming the offending item.
  void check_structure() const;

  /// θ - α + r on the piece α, restricted to the largest coordinate subset on
  /// which it is computable inside the window and maps into itself.
  struct EulerBlock {
    std::vector<size_t> columns;
    RationalMatrix n;  // columns.size() square
  };
  EulerBlock euler_nilpotent(const Rational& a) const;

  /// Coordinate blocks of a piece: equal multidegree classes, or the whole piece.
  std::vector<std::vector<size_t>> blocks(const Rational& a) const;

  /// Per-piece dimensions of F_p, keyed by (degree, p), for p in the level range.
  std::map<std::pair<Rational, int>, size_t> f_dimension_table() const;
};

struct Violation {
  std::string invariant;
  std::string location;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::map<Rational, int> nilpotency_order;
  std::vector<std::string> exempted;  // boundary pieces excluded from some check
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks the commutation relations, the nilpotency of θ - α + r per piece,
/// F and W compatibility of the operators, and multigrading bookkeeping.
/// Composites leaving the window are exempted and listed.
ValidationReport validate(const MonodromicalModule& m);

}  // namespace mhm
