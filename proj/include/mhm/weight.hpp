#pragma once

#include <optional>
#include <vector>

#include "mhm/matrix.hpp"
#include "mhm/subspace.hpp"

namespace mhm {

/// The monodromy filtration of a nilpotent N centered at `center`:
/// W_{center+k} = Σ_{j >= max(0,-k)} ker N^{k+j+1} ∩ im N^j.
/// Throws PreconditionError if N is not nilpotent.
Flag monodromy_filtration(const RationalMatrix& n, int center);

/// N W_k ⊆ W_{k-2} and N^k: Gr_{center+k} -> Gr_{center-k} bijective for k >= 1.
bool satisfies_monodromy_conditions(const RationalMatrix& n, const Flag& w, int center);

/// Why a relative monodromy filtration does not exist: no lift of the chain
/// top `top` (in W_k) of length `length` in Gr^W_k can be corrected so that
/// N^length lands in L_{k - length - 1}.
struct RelativeNonexistence {
  int k = 0;
  int length = 0;
  std::vector<Rational> top;
};

struct RelativeMonodromy {
  std::optional<Flag> flag;
  std::optional<RelativeNonexistence> certificate;
  bool exists() const { return flag.has_value(); }
};

/// Relative monodromy filtration of (N, W), built level by level on W_k by
/// lifting Jordan chains of Gr^W_k. Throws PreconditionError if N does not
/// preserve W or is not nilpotent.
RelativeMonodromy relative_monodromy_filtration(const RationalMatrix& n, const Flag& w);

/// N L_i ⊆ L_{i-2}, and L induces on each Gr^W_k the monodromy filtration of
/// the induced nilpotent centered at k.
bool satisfies_relative_conditions(const RationalMatrix& n, const Flag& w, const Flag& l);

}  // namespace mhm
