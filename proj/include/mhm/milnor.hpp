#pragma once

#include <map>
#include <string>
#include <vector>

#include "mhm/polynomial.hpp"

namespace mhm {

/// Graded pieces of the Milnor algebra C[x]/J_f of a homogeneous polynomial
/// with an isolated singularity, with monomial bases of a complement of J_f.
struct MilnorAlgebra {
  int r = 0;
  int d = 0;
  Polynomial f;
  std::vector<size_t> dims;                  // dims[k] for k = 0..r(d-2)
  std::vector<std::vector<Exponent>> bases;  // monomials spanning a complement of (J_f)_k
  size_t total() const;
  size_t dim_at(int k) const;  // 0 outside 0..r(d-2)
};

/// dim (C[x]/J_f)_k by degreewise linear algebra. Throws InputError for a
/// non-homogeneous f, d < 2, or a singularity that is not isolated.
MilnorAlgebra milnor_dims(const Polynomial& f);

/// True when the Jacobian quotient vanishes in degree r(d-2)+1.
bool has_isolated_singularity(const Polynomial& f);

/// p -> dim Gr_F^{r-1-p} H^{r-1}(U) = dim (C[x]/J_f)_{(p+1)d - r}, for p = 0..r-1.
std::map<int, size_t> griffiths_dims(const MilnorAlgebra& m);

struct ComplementEntry {
  int j = 0;
  std::vector<std::pair<std::string, size_t>> summands;  // labeled, never collapsed
  size_t total() const;
};
/// Cohomology of the complement of the origin as assembled from H^{r-1}(U),
/// j = 0..r. Requires r >= 2.
std::vector<ComplementEntry> complement_cohomology(const MilnorAlgebra& m);

struct ExpectedTables {
  std::map<int, size_t> top;          // j = r: p -> dim f^{-p-1} Ω_{f,(p+1)d}
  std::map<int, size_t> interior;     // j = r-1: p -> dim of the span of ι_θ of representatives
  std::map<int, std::vector<Exponent>> representatives;  // monomial m with ω = m dx
};
/// Both tables are expectations to probe, not established values.
ExpectedTables expected_restriction_dims(const MilnorAlgebra& m);

}  // namespace mhm
