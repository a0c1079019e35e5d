#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mhm/module.hpp"
#include "mhm/polynomial.hpp"

namespace mhm {

/// How much of an infinite module to store.
struct WindowPolicy {
  Rational alpha_lo = -4;
  Rational alpha_hi = 4;
  int cap = 2;  // pole-order cap for localization models
  int box = 2;  // multidegree box bound for monomial families
  int f_offset = 0;
  int w_offset = 0;
};

/// The module generated by δ at the origin: basis ∂^a δ in degree -|a|,
/// F level |a| + f_offset, pure of weight w_offset.
MonodromicalModule build_delta(int r, const WindowPolicy& policy);

/// The one-dimensional module on a point (r = 0), the unit for external products.
MonodromicalModule build_unit(int f_level = 0, int weight = 0);

/// Laurent monomials x^a with a in the box [-B, B]^r, in degree |a| + r.
/// F level Σ max(-a_i - 1, 0) + f_offset, W level #{a_i < 0} + w_offset.
/// Degrees without box monomials are declared zero in the model; vectors on
/// the box faces carry truncation marks.
MonodromicalModule build_torus(int r, const WindowPolicy& policy);

/// Piecewise external product; a degree is stored when every decomposition
/// of it is inside the windows of the factors.
MonodromicalModule external_product(const MonodromicalModule& m1, const MonodromicalModule& m2);

enum class FiltrationMode { pole_order, user_supplied };

/// C[x][1/f] truncated at pole order <= policy.cap. The basis of each piece
/// is greedily chosen from x^b f^{-k}, k = 0..cap, so that the pole-order
/// filtration P_p = {pole order <= p + 1} is a coordinate flag. In
/// user_supplied mode `user_levels` gives the F level of every basis vector.
MonodromicalModule build_isolated_sing_localization(const Polynomial& f, const WindowPolicy& policy,
                                                    FiltrationMode mode = FiltrationMode::pole_order,
                                                    const std::map<Rational, std::vector<int>>& user_levels = {});

/// For each piece of a localization model: the basis vector's pole order and
/// numerator monomial (generator x^b f^{-k}).
struct LocalizationGenerator {
  int pole = 0;
  Exponent numerator;
};
std::vector<LocalizationGenerator> localization_generators(const Polynomial& f, int cap, const Rational& alpha);

/// Coordinates, in the localization basis of degree alpha, of g / f^cap where
/// g is homogeneous of degree alpha - r + cap*d.
std::vector<Rational> localization_coords(const Polynomial& f, int cap, const Rational& alpha, const Polynomial& g);

}  // namespace mhm
