#pragma once

#include <map>
#include <random>
#include <vector>

#include "mhm/matrix.hpp"

namespace mhm {

/// Nilpotent matrix with a known Jordan type, conjugated by a random
/// invertible integer matrix.
struct PlantedNilpotent {
  std::vector<size_t> blocks;  // Jordan block sizes
  RationalMatrix n;
};

/// Jordan matrix with the given block sizes (ones on the superdiagonal).
RationalMatrix jordan_matrix(const std::vector<size_t>& blocks);

/// Random invertible matrix with entries in [-2, 2].
RationalMatrix random_invertible(std::mt19937& rng, size_t n);

/// Random partition of a dimension in [1, max_dim], conjugated at random.
PlantedNilpotent random_nilpotent(std::mt19937& rng, size_t max_dim);

/// dim Gr^W_{center+k} of the monodromy filtration of a nilpotent with the
/// given Jordan type: a block of size s contributes one dimension at each of
/// center - s + 1, center - s + 3, ..., center + s - 1.
std::map<int, size_t> jordan_weight_dims(const std::vector<size_t>& blocks, int center);

}  // namespace mhm
